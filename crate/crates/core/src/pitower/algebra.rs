use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{PiError, Rf, TowerSpec, MAX_ALGEBRA_DEGREE};
use crate::gf2field::{square_decompose, Monomial, Polynomial};
use crate::linalg;

/// Element of a [`PiAlgebra`]: coordinates over the monomial basis
/// `prod_k T_k^{d_k}`, `0 <= d_k < 2^{e_k}`, at index `sum_k d_k stride_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coords: Vec<Rf>,
}

impl ExtElement {
    pub fn coords(&self) -> &[Rf] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// The quotient algebra `F[T_1, ..., T_n] / (T_k^{2^{e_k}} - g_k)`, which is
/// a field of degree `prod 2^{e_k}` once every `g_k` is a nonsquare in the
/// field generated by the earlier roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiAlgebra {
    spec: TowerSpec,
    sizes: Vec<usize>,
    /// `strides[k]` is the dimension of the field below root `k`; the last entry is the degree.
    strides: Vec<usize>,
    radicands: Vec<Vec<Rf>>,
}

/// The exponent-one socle `{s ∈ E : s^2 ∈ F}` as an `F`-subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Socle {
    pub basis: Vec<ExtElement>,
}

impl Socle {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }
}

impl PiAlgebra {
    /// Builds the tower root by root, rejecting radicands that are squares
    /// in the field below (the degree would collapse).
    pub fn build(spec: &TowerSpec) -> Result<Self, PiError> {
        let mut alg = PiAlgebra {
            spec: TowerSpec::new(spec.base.clone()),
            sizes: Vec::new(),
            strides: vec![1],
            radicands: Vec::new(),
        };
        for (k, root) in spec.roots.iter().enumerate() {
            let size = 1usize << root.log2.min(16);
            let degree = alg.degree().saturating_mul(size);
            if root.log2 > 16 || degree > MAX_ALGEBRA_DEGREE {
                return Err(PiError::TooLarge { degree });
            }
            let g = alg.eval(&root.radicand)?;
            if g.is_zero() {
                return Err(PiError::ZeroRadicand { root: k + 1 });
            }
            if alg.square_root_coefficients(&g).is_some() {
                return Err(PiError::DegenerateTower { root: k + 1 });
            }
            alg.sizes.push(size);
            alg.strides.push(degree);
            alg.radicands.push(g.coords);
            alg.spec.roots.push(root.clone());
        }
        Ok(alg)
    }

    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        *self.strides.last().expect("strides start with 1")
    }

    pub fn layers(&self) -> usize {
        self.sizes.len()
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement { coords: vec![Rf::zero(); self.degree()] }
    }

    pub fn one(&self) -> ExtElement {
        self.scalar(Rf::one())
    }

    pub fn scalar(&self, f: Rf) -> ExtElement {
        let mut e = self.zero();
        e.coords[0] = f;
        e
    }

    /// The basis monomial with index `index`.
    pub fn basis_element(&self, index: usize) -> ExtElement {
        let mut e = self.zero();
        e.coords[index] = Rf::one();
        e
    }

    /// The root `T_k` (0-based).
    pub fn generator(&self, k: usize) -> ExtElement {
        self.basis_element(self.strides[k])
    }

    pub fn from_coords(&self, coords: Vec<Rf>) -> Result<ExtElement, PiError> {
        if coords.len() != self.degree() {
            return Err(PiError::DimensionMismatch { expected: self.degree(), found: coords.len() });
        }
        Ok(ExtElement { coords })
    }

    /// Exponents `d_k` of the basis monomial with index `index`.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        self.sizes.iter().zip(&self.strides).map(|(&n, &s)| index / s % n).collect()
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.add_ref(y)).collect() }
    }

    pub fn scale(&self, f: &Rf, a: &ExtElement) -> ExtElement {
        ExtElement { coords: a.coords.iter().map(|c| f.mul_ref(c)).collect() }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement { coords: self.mul_level(self.sizes.len(), &a.coords, &b.coords) }
    }

    /// Product in the field generated by the first `level` roots.
    fn mul_level(&self, level: usize, a: &[Rf], b: &[Rf]) -> Vec<Rf> {
        if level == 0 {
            return vec![a[0].mul_ref(&b[0])];
        }
        let n = self.sizes[level - 1];
        let s = self.strides[level - 1];
        let a_chunks: Vec<Option<&[Rf]>> = (0..n).map(|i| nonzero_chunk(a, i, s)).collect();
        let b_chunks: Vec<Option<&[Rf]>> = (0..n).map(|i| nonzero_chunk(b, i, s)).collect();
        let mut acc: Vec<Option<Vec<Rf>>> = vec![None; 2 * n - 1];
        for (i, ai) in a_chunks.iter().enumerate() {
            let Some(ai) = ai else { continue };
            for (j, bj) in b_chunks.iter().enumerate() {
                let Some(bj) = bj else { continue };
                let p = self.mul_level(level - 1, ai, bj);
                add_into(&mut acc[i + j], p);
            }
        }
        // T^{n + m} = T^m g
        for m in (n..2 * n - 1).rev() {
            if let Some(high) = acc[m].take() {
                let p = self.mul_level(level - 1, &high, &self.radicands[level - 1]);
                add_into(&mut acc[m - n], p);
            }
        }
        let mut out = Vec::with_capacity(n * s);
        for c in acc.into_iter().take(n) {
            match c {
                Some(v) => out.extend(v),
                None => out.extend(core::iter::repeat_n(Rf::zero(), s)),
            }
        }
        out
    }

    pub fn square(&self, a: &ExtElement) -> ExtElement {
        self.mul(a, a)
    }

    /// `a^{2^n}`.
    pub fn frobenius(&self, a: &ExtElement, n: u32) -> ExtElement {
        let mut out = a.clone();
        for _ in 0..n {
            out = self.square(&out);
        }
        out
    }

    pub fn pow(&self, a: &ExtElement, mut n: u64) -> ExtElement {
        let mut base = a.clone();
        let mut out = self.one();
        while n > 0 {
            if n & 1 == 1 {
                out = self.mul(&out, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.square(&base);
            }
        }
        out
    }

    /// `Some(f)` if `a = f` lies in the base field.
    pub fn as_scalar(&self, a: &ExtElement) -> Option<Rf> {
        if a.coords[1..].iter().all(|c| c.is_zero()) {
            Some(a.coords[0].clone())
        } else {
            None
        }
    }

    /// Least `n` with `a^{2^n} ∈ F`.
    pub fn exponent_of(&self, a: &ExtElement) -> u32 {
        let mut cur = a.clone();
        let mut n = 0;
        while self.as_scalar(&cur).is_none() {
            cur = self.square(&cur);
            n += 1;
        }
        n
    }

    /// `exp_2(E/F)`, attained on the basis monomials since `a^{2^n}` is
    /// `F^{2^n}`-linear in the coordinates.
    pub fn exponent(&self) -> u32 {
        (0..self.degree()).map(|d| self.exponent_of(&self.basis_element(d))).max().unwrap_or(0)
    }

    /// `a^{-1} = a^{2^n - 1} / a^{2^n}` with `a^{2^n} ∈ F`.
    pub fn inverse(&self, a: &ExtElement) -> Result<ExtElement, PiError> {
        if a.is_zero() {
            return Err(PiError::DivisionByZero);
        }
        let mut power = self.one();
        let mut cur = a.clone();
        loop {
            if let Some(s) = self.as_scalar(&cur) {
                let inv = s.inv().map_err(|_| PiError::DivisionByZero)?;
                return Ok(self.scale(&inv, &power));
            }
            power = self.mul(&power, &cur);
            cur = self.square(&cur);
        }
    }

    pub fn div(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement, PiError> {
        Ok(self.mul(a, &self.inverse(b)?))
    }

    /// Evaluates an expression over the base variables and root names.
    pub fn eval(&self, f: &Rf) -> Result<ExtElement, PiError> {
        let nb = self.spec.base.len();
        let images: Vec<ExtElement> = (0..nb)
            .map(|i| self.scalar(Rf::var(i)))
            .chain((0..self.layers()).map(|k| self.generator(k)))
            .collect();
        if f.support() >> images.len() != 0 {
            return Err(PiError::BadRadicand { root: self.layers() + 1 });
        }
        let mut cache = BTreeMap::new();
        let num = self.eval_poly(f.num(), nb, &images, &mut cache);
        let den = self.eval_poly(f.den(), nb, &images, &mut cache);
        self.div(&num, &den)
    }

    /// Evaluates `f` with variable `i` sent to `images[i]`.
    pub fn eval_with(&self, f: &Rf, images: &[ExtElement]) -> Result<ExtElement, PiError> {
        if f.support() >> images.len() != 0 {
            return Err(PiError::DimensionMismatch { expected: images.len(), found: 32 - f.support().leading_zeros() as usize });
        }
        let mut cache = BTreeMap::new();
        let num = self.eval_poly(f.num(), 0, images, &mut cache);
        let den = self.eval_poly(f.den(), 0, images, &mut cache);
        self.div(&num, &den)
    }

    /// Variables below `scalar_vars` are multiplied in as base scalars.
    fn eval_poly(
        &self,
        p: &Polynomial,
        scalar_vars: usize,
        images: &[ExtElement],
        cache: &mut BTreeMap<(usize, u16), ExtElement>,
    ) -> ExtElement {
        let mut acc = self.zero();
        for m in p.terms() {
            let mut scalar = Monomial::ONE;
            let mut term: Option<ExtElement> = None;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if i < scalar_vars {
                    scalar.set_exponent(i, e);
                    continue;
                }
                let power = cache
                    .entry((i, e))
                    .or_insert_with(|| self.pow(&images[i], e as u64))
                    .clone();
                term = Some(match term {
                    None => power,
                    Some(t) => self.mul(&t, &power),
                });
            }
            let term = term.unwrap_or_else(|| self.one());
            acc = self.add(&acc, &self.scale(&Rf::monomial(scalar), &term));
        }
        acc
    }

    /// Squares of the basis monomials.
    fn basis_squares(&self) -> Vec<ExtElement> {
        (0..self.degree()).map(|d| self.square(&self.basis_element(d))).collect()
    }

    /// Coefficients `λ_d` with `g = (sum_d λ_d T^d)^2`, if `g` is a square.
    fn square_root_coefficients(&self, g: &ExtElement) -> Option<Vec<Rf>> {
        let squares = self.basis_squares();
        let (rows, masks) = frobenius_rows(&squares, 0..self.degree());
        let target: Vec<Rf> = masks
            .iter()
            .map(|&(c, e)| square_decompose(&g.coords[c]).get(e))
            .collect();
        // coordinates of g outside the listed masks must vanish
        let covered: BTreeSet<(usize, u32)> = masks.iter().copied().collect();
        for (c, x) in g.coords.iter().enumerate() {
            if square_decompose(x).components().keys().any(|&e| !covered.contains(&(c, e))) {
                return None;
            }
        }
        linalg::solve(&rows, &target, self.degree())
    }

    /// `Some(r)` with `r^2 = g`.
    pub fn sqrt(&self, g: &ExtElement) -> Option<ExtElement> {
        self.square_root_coefficients(g).map(|coords| ExtElement { coords })
    }

    /// `{s : s^2 ∈ F}`: writing `s = sum λ_d T^d`, `s^2 = sum λ_d^2 (T^d)^2`,
    /// so every non-constant coordinate gives `F`-linear conditions on the
    /// `λ_d` through the square decomposition.
    pub fn socle(&self) -> Socle {
        let squares = self.basis_squares();
        let (rows, _) = frobenius_rows(&squares, 1..self.degree());
        let basis = linalg::nullspace(&rows, self.degree())
            .into_iter()
            .map(|coords| ExtElement { coords })
            .collect();
        Socle { basis }
    }

    /// Renders `a` as a sum of `coefficient*monomial` terms in the root names.
    pub fn format(&self, a: &ExtElement) -> String {
        let vars = self.spec.variables();
        let nb = self.spec.base.len();
        let mut terms = Vec::new();
        for (d, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = self
                .digits(d)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    let name = vars.name(nb + k);
                    if e == 1 {
                        String::from(name)
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = vars.format(c);
            let coeff = if coeff.contains(['+', '/']) { format!("({coeff})") } else { coeff };
            terms.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => mono.join("*"),
                (false, false) => format!("{coeff}*{}", mono.join("*")),
            });
        }
        if terms.is_empty() {
            String::from("0")
        } else {
            terms.join(" + ")
        }
    }
}

fn nonzero_chunk(v: &[Rf], i: usize, s: usize) -> Option<&[Rf]> {
    let c = &v[i * s..(i + 1) * s];
    if c.iter().all(|e| e.is_zero()) {
        None
    } else {
        Some(c)
    }
}

fn add_into(slot: &mut Option<Vec<Rf>>, p: Vec<Rf>) {
    match slot {
        None => *slot = Some(p),
        Some(v) => {
            for (x, y) in v.iter_mut().zip(&p) {
                if !y.is_zero() {
                    *x = x.add_ref(y);
                }
            }
        }
    }
}

/// Rows of the `F`-linear system `sum_d λ_d (S_d)_{c,e}`, where `(S_d)_{c,e}`
/// is the `x^e` square-decomposition component of coordinate `c` of
/// `vectors[d]`, over the coordinates in `coords`.
fn frobenius_rows(
    vectors: &[ExtElement],
    coords: core::ops::Range<usize>,
) -> (Vec<Vec<Rf>>, Vec<(usize, u32)>) {
    let decs: Vec<Vec<_>> = vectors
        .iter()
        .map(|v| coords.clone().map(|c| square_decompose(&v.coords[c])).collect())
        .collect();
    let mut keys: BTreeSet<(usize, u32)> = BTreeSet::new();
    for dec in &decs {
        for (ci, d) in dec.iter().enumerate() {
            keys.extend(d.components().keys().map(|&e| (coords.start + ci, e)));
        }
    }
    let masks: Vec<(usize, u32)> = keys.into_iter().collect();
    let rows = masks
        .iter()
        .map(|&(c, e)| decs.iter().map(|dec| dec[c - coords.start].get(e)).collect())
        .collect();
    (rows, masks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;

    fn base() -> VariableSet {
        VariableSet::new(["x", "y", "z"]).unwrap()
    }

    fn sweedler() -> PiAlgebra {
        let mut spec = TowerSpec::new(base());
        let z = spec.parse("z").unwrap();
        spec.adjoin("ζ", 2, z).unwrap();
        let g = spec.parse("x*ζ^2 + y").unwrap();
        spec.adjoin("χ", 1, g).unwrap();
        PiAlgebra::build(&spec).unwrap()
    }

    #[test]
    fn biquadratic_tower() {
        let mut spec = TowerSpec::new(base());
        let z = spec.parse("z").unwrap();
        spec.adjoin("T", 1, z).unwrap();
        let g = spec.parse("x*z + y").unwrap();
        spec.adjoin("U", 1, g).unwrap();
        let e = PiAlgebra::build(&spec).unwrap();
        assert_eq!((e.degree(), e.exponent()), (4, 1));
        assert_eq!(e.socle().degree(), 4);
    }

    #[test]
    fn sweedler_tower() {
        let e = sweedler();
        assert_eq!((e.degree(), e.exponent()), (8, 2));
        let socle = e.socle();
        assert_eq!(socle.basis, vec![e.one(), e.basis_element(2)]);
        for s in &socle.basis {
            assert!(e.as_scalar(&e.square(s)).is_some());
        }
        let chi = e.generator(1);
        assert_eq!(e.exponent_of(&chi), 2);
        let chi2 = e.square(&chi);
        assert_eq!(e.format(&chi2), "y + x*ζ^2");
        let inv = e.inverse(&e.add(&chi, &e.generator(0))).unwrap();
        assert_eq!(e.mul(&inv, &e.add(&chi, &e.generator(0))), e.one());
    }

    #[test]
    fn degenerate_and_simple_towers() {
        let f = VariableSet::new(["x"]).unwrap();
        let mut spec = TowerSpec::new(f.clone());
        let x2 = spec.parse("x^2").unwrap();
        spec.adjoin("T", 1, x2).unwrap();
        assert_eq!(PiAlgebra::build(&spec), Err(PiError::DegenerateTower { root: 1 }));

        let mut spec = TowerSpec::new(f.clone());
        let x = spec.parse("x").unwrap();
        spec.adjoin("T", 1, x).unwrap();
        let t = spec.parse("T").unwrap();
        spec.adjoin("U", 1, t).unwrap();
        let e = PiAlgebra::build(&spec).unwrap();
        assert_eq!((e.degree(), e.exponent()), (4, 2));

        let mut spec = TowerSpec::new(f);
        let x = spec.parse("x").unwrap();
        spec.adjoin("T", 2, x).unwrap();
        let e = PiAlgebra::build(&spec).unwrap();
        assert_eq!(e.socle().basis, vec![e.one(), e.basis_element(2)]);
    }

    #[test]
    fn eval_matches_relations() {
        let e = sweedler();
        let vars = e.spec().variables();
        let g = e.eval(&vars.parse("χ^2 + x*ζ^2").unwrap()).unwrap();
        assert_eq!(g, e.scalar(vars.parse("y").unwrap()));
        let z = e.eval(&vars.parse("ζ^4").unwrap()).unwrap();
        assert_eq!(z, e.scalar(vars.parse("z").unwrap()));
        let q = e.eval(&vars.parse("1/(ζ + x)").unwrap()).unwrap();
        assert_eq!(e.mul(&q, &e.eval(&vars.parse("ζ + x").unwrap()).unwrap()), e.one());
    }
}
