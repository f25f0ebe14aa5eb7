//! Quaternion algebras `(b, c]` and Cayley–Dickson octonion algebras
//! `(a, b, c]` over a rational function field of characteristic 2.
//!
//! `F[i]` has `i^2 = i + c` and conjugation `σ(i) = i + 1`. The quaternion
//! algebra is `F[i] ⊕ F[i] j` with
//! `(α + β j)(γ + δ j) = (α γ + b β σ(δ)) + (α δ + β σ(γ)) j`, so
//! `j^2 = b` and `j i = (i + 1) j`. The octonion algebra is `Q ⊕ Q ℓ` with
//! `(x ⊕ y ℓ)(z ⊕ w ℓ) = (x z + a σ(w) y) ⊕ (w x + y σ(z)) ℓ`.
//!
//! Bases are `(1, i, j, ij)` and `(1, i, j, ij, ℓ, iℓ, jℓ, (ij)ℓ)`.
//! Products go through a structure-constant table generated once from the
//! doubling formulas; the formulas stay available as an independent route.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::forms::{
    bounded_isotropy_search, pullback_matrix, AnisotropyProof, Decision, FormError, IsometryWitness,
    PfisterSpec, QuadraticForm, SearchOutcome, ExpandedPfister,
};
use crate::gf2field::{FieldError, RationalFunction};
use crate::laurent::{decide, DecideContext};
use crate::linalg;

type Rf = RationalFunction;

pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "ij", "l", "il", "jl", "(ij)l"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CayleyError {
    DimensionMismatch { expected: usize, found: usize },
    /// Parameter `a` or `b` is zero; the norm would be degenerate.
    ZeroParameter(&'static str),
    /// `e_k σ(e_l) + e_l σ(e_k)` has a non-scalar component.
    NormNotScalar { row: usize, col: usize },
    /// The expanded norm does not match the Pfister form.
    NormMismatch,
    Form(FormError),
    Field(FieldError),
}

impl fmt::Display for CayleyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CayleyError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            CayleyError::ZeroParameter(p) => write!(f, "parameter {p} is zero"),
            CayleyError::NormNotScalar { row, col } => {
                write!(f, "norm has a non-scalar part at basis pair ({row}, {col})")
            }
            CayleyError::NormMismatch => write!(f, "norm form does not match the Pfister form"),
            CayleyError::Form(e) => write!(f, "{e}"),
            CayleyError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CayleyError {}

impl From<FormError> for CayleyError {
    fn from(e: FormError) -> Self {
        CayleyError::Form(e)
    }
}

impl From<FieldError> for CayleyError {
    fn from(e: FieldError) -> Self {
        CayleyError::Field(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Quaternion,
    Octonion,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vec<Rf>,
}

impl AlgebraElement {
    pub fn coords(&self) -> &[Rf] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rf::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    kind: AlgebraKind,
    a: Rf,
    b: Rf,
    c: Rf,
    /// `table[k][l]` holds the coordinates of `e_k e_l`.
    table: Vec<Vec<Vec<Rf>>>,
}

/// The norm as a polynomial in the coordinates, with its comparison to the
/// expanded Pfister form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormForm {
    /// Upper triangular `N_kl` with `N(x) = sum_{k <= l} N_kl x_k x_l`.
    pub polynomial: Vec<Vec<Rf>>,
    /// `⟪b; c]]` or `⟪a, b; c]]`.
    pub pfister: PfisterSpec,
    pub expanded: QuadraticForm,
    /// `N(x) = expanded(T x)`.
    pub isometry: IsometryWitness,
}

/// Nonzero `u, v` with `u v = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisors {
    pub u: AlgebraElement,
    pub v: AlgebraElement,
}

impl ZeroDivisors {
    pub fn verify(&self, alg: &CompositionAlgebra) -> bool {
        !self.u.is_zero()
            && !self.v.is_zero()
            && alg.multiply(&self.u, &self.v).is_ok_and(|p| p.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionVerdict {
    /// The norm form (the expanded Pfister form) is anisotropic.
    Division { form: QuadraticForm, proof: AnisotropyProof },
    Split(ZeroDivisors),
    Unknown(String),
}

impl DivisionVerdict {
    pub fn is_division(&self) -> bool {
        matches!(self, DivisionVerdict::Division { .. })
    }

    pub fn is_split(&self) -> bool {
        matches!(self, DivisionVerdict::Split(_))
    }
}

impl CompositionAlgebra {
    /// `(b, c]`.
    pub fn quaternion(b: Rf, c: Rf) -> Result<Self, CayleyError> {
        if b.is_zero() {
            return Err(CayleyError::ZeroParameter("b"));
        }
        Ok(Self::with_table(AlgebraKind::Quaternion, Rf::zero(), b, c))
    }

    /// `(a, b, c]`, the doubling of `(b, c]` by `ℓ^2 = a`.
    pub fn octonion(a: Rf, b: Rf, c: Rf) -> Result<Self, CayleyError> {
        if a.is_zero() {
            return Err(CayleyError::ZeroParameter("a"));
        }
        if b.is_zero() {
            return Err(CayleyError::ZeroParameter("b"));
        }
        Ok(Self::with_table(AlgebraKind::Octonion, a, b, c))
    }

    fn with_table(kind: AlgebraKind, a: Rf, b: Rf, c: Rf) -> Self {
        let mut alg = Self { kind, a, b, c, table: Vec::new() };
        let n = alg.dim();
        let table = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| alg.doubling_product(&alg.basis_element(k), &alg.basis_element(l)).coords)
                    .collect()
            })
            .collect();
        alg.table = table;
        alg
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            AlgebraKind::Quaternion => 4,
            AlgebraKind::Octonion => 8,
        }
    }

    /// `[b, c]` or `[a, b, c]`.
    pub fn params(&self) -> Vec<Rf> {
        match self.kind {
            AlgebraKind::Quaternion => vec![self.b.clone(), self.c.clone()],
            AlgebraKind::Octonion => vec![self.a.clone(), self.b.clone(), self.c.clone()],
        }
    }

    pub fn basis_names(&self) -> &'static [&'static str] {
        &BASIS_NAMES[..self.dim()]
    }

    pub fn table(&self) -> &[Vec<Vec<Rf>>] {
        &self.table
    }

    /// The same algebra with every parameter mapped by `f` (base change).
    pub fn try_map<E: From<CayleyError>>(&self, mut f: impl FnMut(&Rf) -> Result<Rf, E>) -> Result<Self, E> {
        let p: Vec<Rf> = self.params().iter().map(&mut f).collect::<Result<_, _>>()?;
        Ok(match self.kind {
            AlgebraKind::Quaternion => Self::quaternion(p[0].clone(), p[1].clone())?,
            AlgebraKind::Octonion => Self::octonion(p[0].clone(), p[1].clone(), p[2].clone())?,
        })
    }

    pub fn element(&self, coords: Vec<Rf>) -> Result<AlgebraElement, CayleyError> {
        if coords.len() != self.dim() {
            return Err(CayleyError::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        Ok(AlgebraElement { coords })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { coords: vec![Rf::zero(); self.dim()] }
    }

    pub fn scalar(&self, f: Rf) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[0] = f;
        e
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(Rf::one())
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[k] = Rf::one();
        e
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), CayleyError> {
        if x.coords.len() != self.dim() {
            return Err(CayleyError::DimensionMismatch { expected: self.dim(), found: x.coords.len() });
        }
        Ok(())
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, CayleyError> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgebraElement { coords: x.coords.iter().zip(&y.coords).map(|(p, q)| p.add_ref(q)).collect() })
    }

    pub fn scale(&self, f: &Rf, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coords: x.coords.iter().map(|c| f.mul_ref(c)).collect() }
    }

    /// Bilinear extension of the structure-constant table.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, CayleyError> {
        self.check(x)?;
        self.check(y)?;
        let n = self.dim();
        let mut out = vec![Rf::zero(); n];
        for (k, xk) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (l, yl) in y.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xk.mul_ref(yl);
                for (m, t) in self.table[k][l].iter().enumerate().filter(|(_, t)| !t.is_zero()) {
                    out[m] = out[m].add_ref(&xy.mul_ref(t));
                }
            }
        }
        Ok(AlgebraElement { coords: out })
    }

    /// The product computed directly from the doubling formulas.
    pub fn cayley_dickson_product(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, CayleyError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.doubling_product(x, y))
    }

    fn doubling_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let coords = match self.kind {
            AlgebraKind::Quaternion => quat_mul(&self.b, &self.c, &x.coords, &y.coords),
            AlgebraKind::Octonion => {
                let (x0, x1) = x.coords.split_at(4);
                let (y0, y1) = y.coords.split_at(4);
                let q = |p: &[Rf], r: &[Rf]| quat_mul(&self.b, &self.c, p, r);
                let first = add_vec(&q(x0, y0), &scale_vec(&self.a, &q(&quat_conj(y1), x1)));
                let second = add_vec(&q(y1, x0), &q(x1, &quat_conj(y0)));
                [first, second].concat()
            }
        };
        AlgebraElement { coords }
    }

    /// The canonical involution: `σ` on `Q`, and `x ⊕ y ℓ ↦ σ(x) ⊕ y ℓ` on `O`.
    pub fn involution(&self, x: &AlgebraElement) -> Result<AlgebraElement, CayleyError> {
        self.check(x)?;
        let mut coords = quat_conj(&x.coords[..4]);
        coords.extend(x.coords[4..].iter().cloned());
        Ok(AlgebraElement { coords })
    }

    /// `Some(f)` when `x = f · 1`.
    pub fn scalar_part(&self, x: &AlgebraElement) -> Option<Rf> {
        x.coords[1..].iter().all(Rf::is_zero).then(|| x.coords[0].clone())
    }

    /// `N(x) = x σ(x)`.
    pub fn norm(&self, x: &AlgebraElement) -> Result<Rf, CayleyError> {
        let p = self.multiply(x, &self.involution(x)?)?;
        self.scalar_part(&p).ok_or(CayleyError::NormNotScalar { row: 0, col: 0 })
    }

    /// `T(x) = x + σ(x)`.
    pub fn trace(&self, x: &AlgebraElement) -> Result<Rf, CayleyError> {
        let s = self.add(x, &self.involution(x)?)?;
        self.scalar_part(&s).ok_or(CayleyError::NormNotScalar { row: 0, col: 0 })
    }

    /// `⟪b; c]]` or `⟪a, b; c]]`.
    pub fn pfister(&self) -> PfisterSpec {
        match self.kind {
            AlgebraKind::Quaternion => PfisterSpec::quadratic(vec![self.b.clone()], self.c.clone()),
            AlgebraKind::Octonion => {
                PfisterSpec::quadratic(vec![self.a.clone(), self.b.clone()], self.c.clone())
            }
        }
    }

    /// Expands `N(x) = x σ(x)` in generic coordinates through the table:
    /// `N_kk` is the scalar `e_k σ(e_k)` and `N_kl` the scalar
    /// `e_k σ(e_l) + e_l σ(e_k)`. Then matches each binary block of the norm
    /// with a block of the expanded Pfister form and checks the pulled back
    /// coefficients one by one.
    pub fn norm_form(&self) -> Result<NormForm, CayleyError> {
        let n = self.dim();
        let basis: Vec<AlgebraElement> = (0..n).map(|k| self.basis_element(k)).collect();
        let conj: Vec<AlgebraElement> = basis.iter().map(|e| self.involution(e)).collect::<Result<_, _>>()?;
        let mut polynomial = vec![vec![Rf::zero(); n]; n];
        for k in 0..n {
            for l in k..n {
                let mut p = self.multiply(&basis[k], &conj[l])?;
                if k != l {
                    p = self.add(&p, &self.multiply(&basis[l], &conj[k])?)?;
                }
                polynomial[k][l] = self.scalar_part(&p).ok_or(CayleyError::NormNotScalar { row: k, col: l })?;
            }
        }

        let pfister = self.pfister();
        let ExpandedPfister::Quadratic(expanded) = pfister.expand()? else {
            return Err(CayleyError::NormMismatch);
        };
        let mut matrix = vec![vec![Rf::zero(); n]; n];
        let mut used = vec![false; n / 2];
        for k in 0..n / 2 {
            let (d, e) = (&polynomial[2 * k][2 * k], &polynomial[2 * k][2 * k + 1]);
            if e.is_zero() {
                return Err(CayleyError::NormMismatch);
            }
            let m = (0..n / 2)
                .find(|&m| !used[m] && expanded.blocks()[m].0 == *d)
                .ok_or(CayleyError::NormMismatch)?;
            used[m] = true;
            matrix[2 * m][2 * k] = Rf::one();
            matrix[2 * m + 1][2 * k + 1] = e.clone();
        }
        let isometry = IsometryWitness { matrix };
        let pulled = pullback_matrix(&expanded.coefficient_matrix(), &isometry)?;
        if pulled != polynomial || linalg::rank(&isometry.matrix, n) != n {
            return Err(CayleyError::NormMismatch);
        }
        Ok(NormForm { polynomial, pfister, expanded, isometry })
    }

    /// The algebra element with `T x = w` for a vector `w` of the expanded
    /// Pfister form, so `N(x) = expanded(w)`.
    pub fn element_from_pfister(&self, nf: &NormForm, w: &[Rf]) -> Result<AlgebraElement, CayleyError> {
        let n = self.dim();
        let x = linalg::solve(&nf.isometry.matrix, w, n).ok_or(CayleyError::NormMismatch)?;
        self.element(x)
    }

    /// `v, σ(v)` for an isotropic vector `v` of the norm: `v σ(v) = N(v) = 0`.
    pub fn zero_divisors(&self, v: &AlgebraElement) -> Result<Option<ZeroDivisors>, CayleyError> {
        let pair = ZeroDivisors { u: v.clone(), v: self.involution(v)? };
        Ok(pair.verify(self).then_some(pair))
    }

    /// Division iff the norm form is anisotropic. Runs the anisotropy
    /// deciders on the expanded Pfister form, then a bounded search with
    /// coordinates of degree at most `degree_bound`.
    pub fn is_division(&self, ctx: &DecideContext, degree_bound: u32) -> DivisionVerdict {
        let nf = match self.norm_form() {
            Ok(nf) => nf,
            Err(e) => return DivisionVerdict::Unknown(format!("{e}")),
        };
        let split = |w: &[Rf]| -> DivisionVerdict {
            let pair = self
                .element_from_pfister(&nf, w)
                .and_then(|v| self.zero_divisors(&v));
            match pair {
                Ok(Some(pair)) => DivisionVerdict::Split(pair),
                Ok(None) => DivisionVerdict::Unknown(String::from("isotropic vector gave no zero divisors")),
                Err(e) => DivisionVerdict::Unknown(format!("{e}")),
            }
        };
        match decide(&nf.expanded, ctx) {
            Decision::Anisotropic(proof) => DivisionVerdict::Division { form: nf.expanded.clone(), proof },
            Decision::Isotropic(w) => split(&w.vector),
            Decision::Unknown(reason) => match bounded_isotropy_search(&nf.expanded, degree_bound) {
                SearchOutcome::Found(w) => split(&w.vector),
                SearchOutcome::NoneFound => {
                    DivisionVerdict::Unknown(format!("{reason}; bounded search found nothing"))
                }
                SearchOutcome::TooLarge { bits, budget } => DivisionVerdict::Unknown(format!(
                    "{reason}; bounded search needs {bits} choice bits (budget {budget})"
                )),
            },
        }
    }

    /// Writes `x` as a sum over the basis names.
    pub fn format(&self, x: &AlgebraElement, fmt_scalar: impl Fn(&Rf) -> String) -> String {
        let terms: Vec<String> = x
            .coords
            .iter()
            .zip(self.basis_names())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| match (c.is_one(), *name == "1") {
                (_, true) => fmt_scalar(c),
                (true, false) => String::from(*name),
                (false, false) => format!("({})*{name}", fmt_scalar(c)),
            })
            .collect();
        if terms.is_empty() {
            String::from("0")
        } else {
            terms.join(" + ")
        }
    }
}

/// `(x0 + x1 i)(y0 + y1 i)` with `i^2 = i + c`.
fn fi_mul(c: &Rf, x: &[Rf], y: &[Rf]) -> [Rf; 2] {
    let x1y1 = x[1].mul_ref(&y[1]);
    [
        x[0].mul_ref(&y[0]).add_ref(&c.mul_ref(&x1y1)),
        x[0].mul_ref(&y[1]).add_ref(&x[1].mul_ref(&y[0])).add_ref(&x1y1),
    ]
}

fn fi_conj(x: &[Rf]) -> [Rf; 2] {
    [x[0].add_ref(&x[1]), x[1].clone()]
}

fn quat_mul(b: &Rf, c: &Rf, x: &[Rf], y: &[Rf]) -> Vec<Rf> {
    let (alpha, beta) = x.split_at(2);
    let (gamma, delta) = y.split_at(2);
    let p = fi_mul(c, alpha, gamma);
    let q = fi_mul(c, beta, &fi_conj(delta));
    let r = fi_mul(c, alpha, delta);
    let s = fi_mul(c, beta, &fi_conj(gamma));
    vec![
        p[0].add_ref(&b.mul_ref(&q[0])),
        p[1].add_ref(&b.mul_ref(&q[1])),
        r[0].add_ref(&s[0]),
        r[1].add_ref(&s[1]),
    ]
}

fn quat_conj(x: &[Rf]) -> Vec<Rf> {
    let a = fi_conj(&x[..2]);
    vec![a[0].clone(), a[1].clone(), x[2].clone(), x[3].clone()]
}

fn add_vec(x: &[Rf], y: &[Rf]) -> Vec<Rf> {
    x.iter().zip(y).map(|(p, q)| p.add_ref(q)).collect()
}

fn scale_vec(f: &Rf, x: &[Rf]) -> Vec<Rf> {
    x.iter().map(|c| f.mul_ref(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;
    use crate::pitower::{adjoin_roots, RootSpec};
    use alloc::string::ToString;

    fn vars() -> VariableSet {
        VariableSet::new(["x", "y", "z", "t"]).unwrap()
    }

    fn el(alg: &CompositionAlgebra, v: &VariableSet, coords: &[&str]) -> AlgebraElement {
        alg.element(coords.iter().map(|s| v.parse(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn quaternion_relations() {
        let v = vars();
        let q = CompositionAlgebra::quaternion(v.parse("y").unwrap(), v.parse("x").unwrap()).unwrap();
        let (i, j, ij) = (q.basis_element(1), q.basis_element(2), q.basis_element(3));
        assert_eq!(q.multiply(&i, &i).unwrap(), el(&q, &v, &["x", "1", "0", "0"]));
        assert_eq!(q.multiply(&j, &j).unwrap(), el(&q, &v, &["y", "0", "0", "0"]));
        assert_eq!(q.multiply(&j, &i).unwrap(), el(&q, &v, &["0", "0", "1", "1"]));
        assert_eq!(q.multiply(&i, &j).unwrap(), ij);
    }

    #[test]
    fn octonion_relations() {
        let v = vars();
        let p = |s: &str| v.parse(s).unwrap();
        let o = CompositionAlgebra::octonion(p("x"), p("y"), p("1/t")).unwrap();
        let l = o.basis_element(4);
        assert_eq!(o.multiply(&l, &l).unwrap(), o.scalar(p("x")));
        let i = o.basis_element(1);
        assert_eq!(o.multiply(&i, &l).unwrap(), o.basis_element(5));
        let j = o.basis_element(2);
        assert_eq!(o.multiply(&j, &l).unwrap(), o.basis_element(6));
        let ij = o.multiply(&i, &j).unwrap();
        assert_eq!(o.multiply(&ij, &l).unwrap(), o.basis_element(7));
        // the quaternion part multiplies as in (b, c]
        let q = CompositionAlgebra::quaternion(p("y"), p("1/t")).unwrap();
        for k in 0..4 {
            for m in 0..4 {
                assert_eq!(o.table()[k][m][..4], q.table()[k][m][..]);
                assert!(o.table()[k][m][4..].iter().all(Rf::is_zero));
            }
        }
    }

    #[test]
    fn quaternion_norm_expansion() {
        let v = vars();
        let p = |s: &str| v.parse(s).unwrap();
        let q = CompositionAlgebra::quaternion(p("y"), p("x")).unwrap();
        let nf = q.norm_form().unwrap();
        // x0^2 + x0 x1 + c x1^2 + b (x2^2 + x2 x3 + c x3^2)
        let z = Rf::zero();
        let expected = vec![
            vec![p("1"), p("1"), z.clone(), z.clone()],
            vec![z.clone(), p("x"), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), p("y"), p("y")],
            vec![z.clone(), z.clone(), z.clone(), p("x*y")],
        ];
        assert_eq!(nf.polynomial, expected);
        assert_eq!(nf.expanded.blocks(), &[(p("1"), p("x")), (p("y"), p("x/y"))]);
        assert_eq!(q.norm(&q.one()).unwrap(), p("1"));
    }

    #[test]
    fn octonion_norm_block_order() {
        let v = vars();
        let p = |s: &str| v.parse(s).unwrap();
        let o = CompositionAlgebra::octonion(p("x"), p("y"), p("z")).unwrap();
        let nf = o.norm_form().unwrap();
        let firsts: Vec<Rf> = (0..4).map(|k| nf.polynomial[2 * k][2 * k].clone()).collect();
        assert_eq!(firsts, vec![p("1"), p("y"), p("x"), p("x*y")]);
        assert!(nf.expanded.is_nondegenerate() && nf.expanded.dim() == 8);
        // N(e_k) read off through the isometry agrees with the table
        for k in 0..8 {
            let e = o.basis_element(k);
            let w = nf.isometry.apply(e.coords());
            assert_eq!(nf.expanded.evaluate(&w).unwrap(), o.norm(&e).unwrap());
        }
    }

    #[test]
    fn table_matches_doubling_formula() {
        let v = vars();
        let o = CompositionAlgebra::octonion(v.parse("x").unwrap(), v.parse("y").unwrap(), v.parse("1/t").unwrap())
            .unwrap();
        let a = el(&o, &v, &["x", "1", "y + 1", "0", "t", "1", "0", "x*y"]);
        let b = el(&o, &v, &["1", "z", "0", "1", "y", "0", "x + t", "1"]);
        assert_eq!(o.multiply(&a, &b).unwrap(), o.cayley_dickson_product(&a, &b).unwrap());
        let ab = o.multiply(&a, &b).unwrap();
        assert_eq!(o.norm(&ab).unwrap(), o.norm(&a).unwrap().mul_ref(&o.norm(&b).unwrap()));
        // octonions are not associative
        let c = el(&o, &v, &["0", "0", "1", "0", "0", "0", "0", "1"]);
        let left = o.multiply(&o.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = o.multiply(&a, &o.multiply(&b, &c).unwrap()).unwrap();
        assert_ne!(left, right);
    }

    #[test]
    fn division_and_split() {
        let v = vars();
        let p = |s: &str| v.parse(s).unwrap();
        let q = CompositionAlgebra::quaternion(p("1"), p("x")).unwrap();
        let DivisionVerdict::Split(pair) = q.is_division(&DecideContext::default(), 1) else { panic!() };
        assert!(pair.verify(&q));

        let o = CompositionAlgebra::octonion(p("x"), p("y"), p("1/t")).unwrap();
        let ctx = DecideContext::with_candidates(vec![3]);
        let DivisionVerdict::Division { form, proof } = o.is_division(&ctx, 1) else { panic!() };
        assert!(proof.verify(&form));

        let roots = [
            RootSpec { name: "r".to_string(), log2: 1, radicand: p("z") },
            RootSpec { name: "s".to_string(), log2: 1, radicand: p("x*z + y") },
        ];
        let emb = adjoin_roots(&v, Some(3), &roots).unwrap();
        let om = o.try_map(|c| emb.apply(c).map_err(CayleyError::from)).unwrap();
        let ctx = DecideContext::with_candidates(vec![emb.target_designated().unwrap()]);
        let DivisionVerdict::Split(pair) = om.is_division(&ctx, 1) else { panic!() };
        assert!(pair.verify(&om));
        assert_eq!(om.multiply(&pair.u, &pair.v).unwrap(), om.zero());
    }

    #[test]
    fn zero_parameters_rejected() {
        assert_eq!(CompositionAlgebra::quaternion(Rf::zero(), Rf::one()), Err(CayleyError::ZeroParameter("b")));
        assert_eq!(
            CompositionAlgebra::octonion(Rf::zero(), Rf::one(), Rf::one()),
            Err(CayleyError::ZeroParameter("a"))
        );
    }
}
