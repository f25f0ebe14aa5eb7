//! `F^2`-linear algebra over `F`: span membership in `F^2(a_1, ..., a_n)`,
//! 2-independence and equality of the fields `F^2(A)`.
//!
//! Everything reduces to linear systems over `F`: writing each element in
//! the basis of square-free monomials over `F^2`, an equation
//! `b = sum c_i^2 m_i` holds iff `b_e = sum c_i (m_i)_e` for every
//! square-free exponent `e`, because Frobenius is injective.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::gf2field::Polynomial;
use crate::gf2field::{square_decompose, RationalFunction};
use crate::linalg;

/// Size caps for the exponential-size systems built here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximal number of generators whose subset products are formed.
    pub max_elements: usize,
    /// Maximal number of distinct variables occurring in the inputs.
    pub max_vars: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_elements: 6, max_vars: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemilinearError {
    TooManyElements { count: usize, limit: usize },
    TooManyVariables { count: usize, limit: usize },
}

impl fmt::Display for SemilinearError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemilinearError::TooManyElements { count, limit } => {
                write!(f, "{count} generators exceed the limit of {limit}")
            }
            SemilinearError::TooManyVariables { count, limit } => {
                write!(f, "{count} variables exceed the limit of {limit}")
            }
        }
    }
}

impl core::error::Error for SemilinearError {}

/// Coefficients `c_S` with `b = sum_S c_S^2 prod_{i in S} a_i`.
///
/// Subsets are bit masks over the generator indices (bit `i` = `a_{i+1}`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpanWitness {
    coefficients: BTreeMap<u32, RationalFunction>,
}

impl SpanWitness {
    pub fn from_coefficients(coefficients: BTreeMap<u32, RationalFunction>) -> Self {
        let coefficients = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, RationalFunction> {
        &self.coefficients
    }

    /// `sum_S c_S^2 prod_{i in S} a_i`.
    pub fn evaluate(&self, generators: &[RationalFunction]) -> RationalFunction {
        self.coefficients.iter().fold(RationalFunction::zero(), |acc, (&mask, c)| {
            acc.add_ref(&c.square().mul_ref(&subset_product(generators, mask)))
        })
    }

    /// Re-checks the identity by direct expansion.
    pub fn verify(&self, b: &RationalFunction, generators: &[RationalFunction]) -> bool {
        let n = generators.len();
        if !self.coefficients.keys().all(|&m| n >= 32 || m >> n == 0) {
            return false;
        }
        // cross-multiplied so that no gcd of the large intermediate terms is needed
        let (mut num, mut den) = (Polynomial::zero(), Polynomial::one());
        for (&mask, c) in &self.coefficients {
            let p = subset_product(generators, mask);
            let tn = c.num().square().mul_ref(p.num());
            let td = c.den().square().mul_ref(p.den());
            if td == den {
                num = num.add_ref(&tn);
            } else {
                num = num.mul_ref(&td).add_ref(&tn.mul_ref(&den));
                den = den.mul_ref(&td);
            }
        }
        num.mul_ref(b.den()) == b.num().mul_ref(&den)
    }
}

/// Shows `a_index` (1-based) lies in `F^2(a_1, ..., a_{index-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyCertificate {
    pub index: usize,
    pub witness: SpanWitness,
}

impl DependencyCertificate {
    pub fn verify(&self, elements: &[RationalFunction]) -> bool {
        self.index >= 1
            && self.index <= elements.len()
            && self.witness.verify(&elements[self.index - 1], &elements[..self.index - 1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent(DependencyCertificate),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Both inclusions between `F^2(A)` and `F^2(B)`, one witness slot per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEquality {
    /// Membership of each element of `B` in `F^2(A)`.
    pub b_in_a: Vec<Option<SpanWitness>>,
    /// Membership of each element of `A` in `F^2(B)`.
    pub a_in_b: Vec<Option<SpanWitness>>,
}

impl FieldEquality {
    pub fn equal(&self) -> bool {
        self.b_in_a.iter().chain(&self.a_in_b).all(Option::is_some)
    }

    pub fn verify(&self, a: &[RationalFunction], b: &[RationalFunction]) -> bool {
        let check = |ws: &[Option<SpanWitness>], targets: &[RationalFunction], gens: &[RationalFunction]| {
            ws.len() == targets.len()
                && ws.iter().zip(targets).all(|(w, t)| w.as_ref().is_none_or(|w| w.verify(t, gens)))
        };
        check(&self.b_in_a, b, a) && check(&self.a_in_b, a, b)
    }
}

pub fn subset_product(generators: &[RationalFunction], mask: u32) -> RationalFunction {
    generators
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(RationalFunction::one(), |acc, (_, a)| acc.mul_ref(a))
}

/// All `2^n` subset products, indexed by subset mask.
pub fn subset_products(generators: &[RationalFunction]) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(1 << generators.len());
    out.push(RationalFunction::one());
    for a in generators {
        let half: Vec<RationalFunction> = out.iter().map(|p| p.mul_ref(a)).collect();
        out.extend(half);
    }
    out
}

fn check_vars(elements: &[&RationalFunction], limits: &Limits) -> Result<(), SemilinearError> {
    let support = elements.iter().fold(0u32, |acc, e| acc | e.support());
    let count = support.count_ones() as usize;
    if count > limits.max_vars {
        return Err(SemilinearError::TooManyVariables { count, limit: limits.max_vars });
    }
    Ok(())
}

/// Solves `b = sum lambda_i^2 c_i` for `lambda` over `F`.
pub fn linear_span_membership(
    b: &RationalFunction,
    spanning: &[RationalFunction],
) -> Result<Option<Vec<RationalFunction>>, SemilinearError> {
    linear_span_membership_with(b, spanning, &Limits::default())
}

pub fn linear_span_membership_with(
    b: &RationalFunction,
    spanning: &[RationalFunction],
    limits: &Limits,
) -> Result<Option<Vec<RationalFunction>>, SemilinearError> {
    let limit = 1usize << limits.max_elements.min(20);
    if spanning.len() > limit {
        return Err(SemilinearError::TooManyElements { count: spanning.len(), limit });
    }
    let mut all: Vec<&RationalFunction> = spanning.iter().collect();
    all.push(b);
    check_vars(&all, limits)?;
    Ok(solve_semilinear(b, spanning))
}

fn solve_semilinear(b: &RationalFunction, spanning: &[RationalFunction]) -> Option<Vec<RationalFunction>> {
    let target = square_decompose(b);
    let decs: Vec<_> = spanning.iter().map(square_decompose).collect();
    let mut masks: BTreeSet<u32> = target.components().keys().copied().collect();
    for d in &decs {
        masks.extend(d.components().keys().copied());
    }
    let rows: Vec<Vec<RationalFunction>> =
        masks.iter().map(|&e| decs.iter().map(|d| d.get(e)).collect()).collect();
    let rhs: Vec<RationalFunction> = masks.iter().map(|&e| target.get(e)).collect();
    linalg::solve(&rows, &rhs, spanning.len())
}

/// Membership of `b` in the field `F^2(a_1, ..., a_n)`, i.e. the `F^2`-span
/// of all subset products.
pub fn f2_span_membership(
    b: &RationalFunction,
    generators: &[RationalFunction],
) -> Result<Option<SpanWitness>, SemilinearError> {
    f2_span_membership_with(b, generators, &Limits::default())
}

pub fn f2_span_membership_with(
    b: &RationalFunction,
    generators: &[RationalFunction],
    limits: &Limits,
) -> Result<Option<SpanWitness>, SemilinearError> {
    if generators.len() > limits.max_elements {
        return Err(SemilinearError::TooManyElements {
            count: generators.len(),
            limit: limits.max_elements,
        });
    }
    let mut all: Vec<&RationalFunction> = generators.iter().collect();
    all.push(b);
    check_vars(&all, limits)?;
    let products = subset_products(generators);
    Ok(solve_semilinear(b, &products).map(|lambda| {
        SpanWitness::from_coefficients(
            lambda.into_iter().enumerate().map(|(m, c)| (m as u32, c)).collect(),
        )
    }))
}

/// Decides whether `a_1, ..., a_n` are 2-independent. On failure the
/// certificate names the smallest `j` with `a_j` in `F^2(a_1, ..., a_{j-1})`.
pub fn two_independent(elements: &[RationalFunction]) -> Result<Independence, SemilinearError> {
    two_independent_with(elements, &Limits::default())
}

pub fn two_independent_with(
    elements: &[RationalFunction],
    limits: &Limits,
) -> Result<Independence, SemilinearError> {
    if elements.len() > limits.max_elements {
        return Err(SemilinearError::TooManyElements {
            count: elements.len(),
            limit: limits.max_elements,
        });
    }
    let all: Vec<&RationalFunction> = elements.iter().collect();
    check_vars(&all, limits)?;
    for j in 0..elements.len() {
        let products = subset_products(&elements[..j]);
        if let Some(lambda) = solve_semilinear(&elements[j], &products) {
            let witness = SpanWitness::from_coefficients(
                lambda.into_iter().enumerate().map(|(m, c)| (m as u32, c)).collect(),
            );
            return Ok(Independence::Dependent(DependencyCertificate { index: j + 1, witness }));
        }
    }
    Ok(Independence::Independent)
}

/// Number of `F^2`-independent subset products of `elements`.
pub fn subset_product_rank(elements: &[RationalFunction]) -> Result<usize, SemilinearError> {
    let limits = Limits::default();
    if elements.len() > limits.max_elements {
        return Err(SemilinearError::TooManyElements {
            count: elements.len(),
            limit: limits.max_elements,
        });
    }
    let products = subset_products(elements);
    let decs: Vec<_> = products.iter().map(square_decompose).collect();
    let masks: BTreeSet<u32> = decs.iter().flat_map(|d| d.components().keys().copied()).collect();
    let rows: Vec<Vec<RationalFunction>> =
        masks.iter().map(|&e| decs.iter().map(|d| d.get(e)).collect()).collect();
    Ok(linalg::rank(&rows, products.len()))
}

/// Decides `F^2(A) = F^2(B)`, certifying each inclusion element by element.
pub fn f2_field_equal(
    a: &[RationalFunction],
    b: &[RationalFunction],
) -> Result<FieldEquality, SemilinearError> {
    f2_field_equal_with(a, b, &Limits::default())
}

pub fn f2_field_equal_with(
    a: &[RationalFunction],
    b: &[RationalFunction],
    limits: &Limits,
) -> Result<FieldEquality, SemilinearError> {
    let b_in_a = b
        .iter()
        .map(|x| f2_span_membership_with(x, a, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let a_in_b = a
        .iter()
        .map(|x| f2_span_membership_with(x, b, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FieldEquality { b_in_a, a_in_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;

    fn field() -> VariableSet {
        VariableSet::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let f = field();
        let p = |s: &str| f.parse(s).unwrap();
        let w = f2_span_membership(&p("x^3"), &[p("x")]).unwrap().unwrap();
        assert_eq!(w.coefficients().get(&1), Some(&p("x")));
        assert!(f2_span_membership(&p("z"), &[p("x")]).unwrap().is_none());

        // a^2 at u = v = w = 1
        let a2 = p("z^2*x + y + z + x*z + y*z");
        let gens = [a2.clone(), p("x"), p("y")];
        let w = f2_span_membership(&p("z"), &gens).unwrap().unwrap();
        assert!(w.verify(&p("z"), &gens));
    }

    #[test]
    fn independence_examples() {
        let f = field();
        let p = |s: &str| f.parse(s).unwrap();
        assert!(two_independent(&[p("x"), p("y"), p("z")]).unwrap().is_independent());
        let elems = [p("z"), p("x*z + y"), p("x"), p("y")];
        let Independence::Dependent(cert) = two_independent(&elems).unwrap() else {
            panic!("expected dependency")
        };
        assert_eq!(cert.index, 4);
        assert!(cert.verify(&elems));
        // y = (xz + y) + x * z
        let expected: BTreeMap<u32, RationalFunction> =
            [(0b0010, RationalFunction::one()), (0b0101, RationalFunction::one())].into();
        assert_eq!(cert.witness.coefficients(), &expected);

        let Independence::Dependent(cert) = two_independent(&[p("x"), p("x")]).unwrap() else {
            panic!("expected dependency")
        };
        assert_eq!(cert.index, 2);
    }

    #[test]
    fn field_equality_examples() {
        let f = field();
        let p = |s: &str| f.parse(s).unwrap();
        let a2 = p("z^2*x + y + z + x*z + y*z");
        let eq = f2_field_equal(&[a2.clone(), p("x"), p("y")], &[p("z"), p("x"), p("y")]).unwrap();
        assert!(eq.equal());
        assert!(eq.verify(&[a2, p("x"), p("y")], &[p("z"), p("x"), p("y")]));
        assert!(f2_field_equal(&[p("x")], &[p("x^3")]).unwrap().equal());
        assert!(!f2_field_equal(&[p("x")], &[p("y")]).unwrap().equal());
    }

    #[test]
    fn limits_are_enforced() {
        let elems: Vec<RationalFunction> = (0..7).map(RationalFunction::var).collect();
        assert!(matches!(
            two_independent(&elems),
            Err(SemilinearError::TooManyElements { .. })
        ));
        let relaxed = Limits { max_elements: 7, max_vars: 7 };
        assert!(two_independent_with(&elems, &relaxed).unwrap().is_independent());
        assert_eq!(subset_product_rank(&[RationalFunction::var(0), RationalFunction::var(0)]).unwrap(), 2);
    }
}
