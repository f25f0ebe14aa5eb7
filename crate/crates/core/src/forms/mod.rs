//! Quadratic and bilinear forms over `F`, Pfister expansions and the
//! isotropy criteria that reduce to `F^2`-linear algebra.
//!
//! A quadratic form is stored in the shape
//! `[a_1, b_1] ⊥ ... ⊥ [a_r, b_r] ⊥ <c_1, ..., c_s>` where `[a, b]` is
//! `a X^2 + X Y + b Y^2`. Coordinates are ordered `X_1, Y_1, ..., X_r, Y_r,
//! Z_1, ..., Z_s`.

mod isometry;
mod isotropy;
mod search;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2field::{FieldError, RationalFunction};
use crate::linalg;
use crate::semilinear::{DependencyCertificate, SemilinearError};

pub use isometry::{
    check_arf_witness, check_isometry_witness, pullback_matrix, ArfWitness, IsometryWitness,
};
pub use isotropy::{
    aniso_over_sqrt, bil_isotropic_over_exp1, bil_pfister_anisotropic, quasi_pfister_isometric,
    ts_isotropy, ts_isotropy_with, AnisotropyProof, BilinearIsotropy, Decision, SqrtVerdict, TsIsotropy,
};
pub use search::{
    bounded_isotropy_search, bounded_isotropy_search_in, search_with_choices, ChoiceOutcome,
    SearchOutcome, DEFAULT_SEARCH_BUDGET,
};

type Rf = RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormError {
    DimensionMismatch { expected: usize, found: usize },
    /// A bilinear Pfister slot (1-based index) is zero.
    BadSlot { index: usize },
    NotTotallySingular,
    NotDiagonal,
    FoldMismatch { left: usize, right: usize },
    WrongPfisterKind,
    ZeroScalar,
    AIsSquare,
    SNotTwoIndependent(DependencyCertificate),
    Semilinear(SemilinearError),
    Field(FieldError),
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            FormError::BadSlot { index } => write!(f, "slot {index} of a bilinear Pfister form is zero"),
            FormError::NotTotallySingular => write!(f, "form is not totally singular"),
            FormError::NotDiagonal => write!(f, "bilinear form is not given diagonally"),
            FormError::FoldMismatch { left, right } => {
                write!(f, "Pfister folds differ ({left} vs {right})")
            }
            FormError::WrongPfisterKind => write!(f, "wrong kind of Pfister form"),
            FormError::ZeroScalar => write!(f, "scaling by zero"),
            FormError::AIsSquare => write!(f, "element is a square"),
            FormError::SNotTwoIndependent(c) => {
                write!(f, "extension generators are 2-dependent (element {})", c.index)
            }
            FormError::Semilinear(e) => write!(f, "{e}"),
            FormError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FormError {}

impl From<SemilinearError> for FormError {
    fn from(e: SemilinearError) -> Self {
        FormError::Semilinear(e)
    }
}

impl From<FieldError> for FormError {
    fn from(e: FieldError) -> Self {
        FormError::Field(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadraticForm {
    blocks: Vec<(Rf, Rf)>,
    diagonal: Vec<Rf>,
}

impl QuadraticForm {
    pub fn new(blocks: Vec<(Rf, Rf)>, diagonal: Vec<Rf>) -> Self {
        Self { blocks, diagonal }
    }

    pub fn totally_singular(diagonal: Vec<Rf>) -> Self {
        Self { blocks: Vec::new(), diagonal }
    }

    pub fn binary(a: Rf, b: Rf) -> Self {
        Self { blocks: vec![(a, b)], diagonal: Vec::new() }
    }

    pub fn hyperbolic_plane() -> Self {
        Self::binary(Rf::zero(), Rf::zero())
    }

    pub fn blocks(&self) -> &[(Rf, Rf)] {
        &self.blocks
    }

    pub fn diagonal(&self) -> &[Rf] {
        &self.diagonal
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len() + self.diagonal.len()
    }

    pub fn is_totally_singular(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// All coefficients, blocks first.
    pub fn coefficients(&self) -> impl Iterator<Item = &Rf> {
        self.blocks.iter().flat_map(|(a, b)| [a, b]).chain(&self.diagonal)
    }

    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        let mut diagonal = self.diagonal.clone();
        diagonal.extend(other.diagonal.iter().cloned());
        QuadraticForm { blocks, diagonal }
    }

    /// `a q`, with each scaled block renormalized as `a[u, v] ≅ [a u, v / a]`.
    pub fn scale(&self, a: &Rf) -> Result<QuadraticForm, FormError> {
        let inv = a.inv().map_err(|_| FormError::ZeroScalar)?;
        Ok(QuadraticForm {
            blocks: self.blocks.iter().map(|(u, v)| (a.mul_ref(u), v.mul_ref(&inv))).collect(),
            diagonal: self.diagonal.iter().map(|c| a.mul_ref(c)).collect(),
        })
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&Rf) -> Result<Rf, E>) -> Result<QuadraticForm, E> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (a, b) in &self.blocks {
            blocks.push((f(a)?, f(b)?));
        }
        let diagonal = self.diagonal.iter().map(f).collect::<Result<_, _>>()?;
        Ok(QuadraticForm { blocks, diagonal })
    }

    pub fn evaluate(&self, v: &[Rf]) -> Result<Rf, FormError> {
        if v.len() != self.dim() {
            return Err(FormError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let mut acc = Rf::zero();
        for (k, (a, b)) in self.blocks.iter().enumerate() {
            let (x, y) = (&v[2 * k], &v[2 * k + 1]);
            acc = acc
                .add_ref(&a.mul_ref(&x.square()))
                .add_ref(&x.mul_ref(y))
                .add_ref(&b.mul_ref(&y.square()));
        }
        let off = 2 * self.blocks.len();
        for (j, c) in self.diagonal.iter().enumerate() {
            acc = acc.add_ref(&c.mul_ref(&v[off + j].square()));
        }
        Ok(acc)
    }

    /// Upper triangular coefficient matrix `Q` with `q(X) = sum_{i <= j} Q_ij X_i X_j`.
    pub fn coefficient_matrix(&self) -> Vec<Vec<Rf>> {
        let n = self.dim();
        let mut m = vec![vec![Rf::zero(); n]; n];
        for (k, (a, b)) in self.blocks.iter().enumerate() {
            m[2 * k][2 * k] = a.clone();
            m[2 * k][2 * k + 1] = Rf::one();
            m[2 * k + 1][2 * k + 1] = b.clone();
        }
        let off = 2 * self.blocks.len();
        for (j, c) in self.diagonal.iter().enumerate() {
            m[off + j][off + j] = c.clone();
        }
        m
    }
}

/// A nonzero vector `v` with `q(v) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyWitness {
    pub vector: Vec<Rf>,
}

impl IsotropyWitness {
    pub fn verify(&self, q: &QuadraticForm) -> bool {
        self.vector.iter().any(|c| !c.is_zero())
            && q.evaluate(&self.vector).is_ok_and(|v| v.is_zero())
    }
}

/// Symmetric bilinear form, either diagonal `<a_1, ..., a_n>_b` or by Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BilinearForm {
    Diagonal(Vec<Rf>),
    Gram(Vec<Vec<Rf>>),
}

impl BilinearForm {
    /// The metabolic plane `M_a` with Gram matrix `((0, 1), (1, a))`.
    pub fn metabolic(a: Rf) -> Self {
        BilinearForm::Gram(vec![vec![Rf::zero(), Rf::one()], vec![Rf::one(), a]])
    }

    pub fn dim(&self) -> usize {
        match self {
            BilinearForm::Diagonal(d) => d.len(),
            BilinearForm::Gram(g) => g.len(),
        }
    }

    pub fn gram(&self) -> Vec<Vec<Rf>> {
        match self {
            BilinearForm::Gram(g) => g.clone(),
            BilinearForm::Diagonal(d) => {
                let n = d.len();
                let mut g = vec![vec![Rf::zero(); n]; n];
                for (i, a) in d.iter().enumerate() {
                    g[i][i] = a.clone();
                }
                g
            }
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        match self {
            BilinearForm::Diagonal(d) => d.iter().all(|a| !a.is_zero()),
            BilinearForm::Gram(g) => linalg::rank(g, g.len()) == g.len(),
        }
    }

    /// `q_b(x) = b(x, x)`; in characteristic 2 only the diagonal survives.
    pub fn associated_quadratic(&self) -> QuadraticForm {
        match self {
            BilinearForm::Diagonal(d) => QuadraticForm::totally_singular(d.clone()),
            BilinearForm::Gram(g) => {
                QuadraticForm::totally_singular(g.iter().enumerate().map(|(i, r)| r[i].clone()).collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PfisterKind {
    Bilinear,
    Quadratic,
    Quasi,
}

/// `⟪a_1, ..., a_n⟫_b`, `⟪a_1, ..., a_{n-1}; a]]` or the quasi form `⟪a_1, ..., a_n⟫`.
///
/// For the quadratic kind the last slot is the `[1, a]` parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterSpec {
    pub kind: PfisterKind,
    pub slots: Vec<Rf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandedPfister {
    Bilinear(BilinearForm),
    Quadratic(QuadraticForm),
}

impl PfisterSpec {
    pub fn bilinear(slots: Vec<Rf>) -> Self {
        Self { kind: PfisterKind::Bilinear, slots }
    }

    pub fn quadratic(mut slots: Vec<Rf>, last: Rf) -> Self {
        slots.push(last);
        Self { kind: PfisterKind::Quadratic, slots }
    }

    pub fn quasi(slots: Vec<Rf>) -> Self {
        Self { kind: PfisterKind::Quasi, slots }
    }

    pub fn fold(&self) -> usize {
        self.slots.len()
    }

    pub fn expand(&self) -> Result<ExpandedPfister, FormError> {
        match self.kind {
            PfisterKind::Bilinear => bilinear_pfister(&self.slots).map(ExpandedPfister::Bilinear),
            PfisterKind::Quadratic => {
                let (last, rest) = self.slots.split_last().ok_or(FormError::WrongPfisterKind)?;
                quadratic_pfister(rest, last).map(ExpandedPfister::Quadratic)
            }
            PfisterKind::Quasi => Ok(ExpandedPfister::Quadratic(quasi_pfister(&self.slots))),
        }
    }
}

/// Subsets of `{0, ..., n-1}` as masks: by size, then lexicographically.
pub fn graded_lex_subsets(n: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0..1u32 << n).collect();
    out.sort_by_key(|&m| {
        let idx: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), idx)
    });
    out
}

/// Products over the subsets of `slots` in graded-lex order: the diagonal
/// entries of `<1, a_1> ⊗ ... ⊗ <1, a_n>`.
pub fn pfister_products(slots: &[Rf]) -> Vec<Rf> {
    graded_lex_subsets(slots.len())
        .into_iter()
        .map(|m| crate::semilinear::subset_product(slots, m))
        .collect()
}

pub fn bilinear_pfister(slots: &[Rf]) -> Result<BilinearForm, FormError> {
    if let Some(i) = slots.iter().position(Rf::is_zero) {
        return Err(FormError::BadSlot { index: i + 1 });
    }
    Ok(BilinearForm::Diagonal(pfister_products(slots)))
}

/// `⟪a_1, ..., a_{n-1}⟫_b ⊗ [1, c]`.
pub fn quadratic_pfister(slots: &[Rf], c: &Rf) -> Result<QuadraticForm, FormError> {
    let b = bilinear_pfister(slots)?;
    tensor(&b, &QuadraticForm::binary(Rf::one(), c.clone()))
}

pub fn quasi_pfister(slots: &[Rf]) -> QuadraticForm {
    QuadraticForm::totally_singular(pfister_products(slots))
}

/// `<a_1, ..., a_n>_b ⊗ q = a_1 q ⊥ ... ⊥ a_n q`.
pub fn tensor(b: &BilinearForm, q: &QuadraticForm) -> Result<QuadraticForm, FormError> {
    let BilinearForm::Diagonal(d) = b else {
        return Err(FormError::NotDiagonal);
    };
    let mut out = QuadraticForm::default();
    for a in d {
        out = out.orthogonal_sum(&q.scale(a)?);
    }
    Ok(out)
}

pub fn evaluate(q: &QuadraticForm, v: &[Rf]) -> Result<Rf, FormError> {
    q.evaluate(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;

    #[test]
    fn pfister_expansions() {
        let f = VariableSet::new(["x", "y", "b", "c"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = quasi_pfister(&[p("x"), p("y")]);
        assert_eq!(q.diagonal(), &[p("1"), p("x"), p("y"), p("x*y")]);
        let q = quadratic_pfister(&[p("b")], &p("c")).unwrap();
        assert_eq!(q.blocks(), &[(p("1"), p("c")), (p("b"), p("c/b"))]);
        assert!(q.is_nondegenerate());
        assert_eq!(
            bilinear_pfister(&[p("x"), p("y")]).unwrap(),
            BilinearForm::Diagonal(vec![p("1"), p("x"), p("y"), p("x*y")])
        );
        assert_eq!(bilinear_pfister(&[p("x"), p("0")]), Err(FormError::BadSlot { index: 2 }));
        assert_eq!(graded_lex_subsets(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn tensor_and_evaluate() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = QuadraticForm::binary(p("1"), p("y"));
        let one = BilinearForm::Diagonal(vec![p("1")]);
        assert_eq!(tensor(&one, &q).unwrap(), q);
        let t = tensor(&BilinearForm::Diagonal(vec![p("x")]), &q).unwrap();
        assert_eq!(t.blocks(), &[(p("x"), p("y/x"))]);
        assert_eq!(q.evaluate(&[p("1"), p("0")]).unwrap(), p("1"));
        assert_eq!(QuadraticForm::hyperbolic_plane().evaluate(&[p("1"), p("1")]).unwrap(), p("1"));
        assert!(matches!(q.evaluate(&[p("1")]), Err(FormError::DimensionMismatch { .. })));
        assert!(BilinearForm::metabolic(p("x")).is_nondegenerate());
        assert_eq!(
            BilinearForm::metabolic(p("x")).associated_quadratic().diagonal(),
            &[p("0"), p("x")]
        );
    }
}
