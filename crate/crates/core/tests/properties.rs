use proptest::prelude::*;

use char2forms_core::cayley::CompositionAlgebra;
use char2forms_core::forms::{
    check_isometry_witness, quadratic_pfister, ts_isotropy, IsometryWitness, QuadraticForm, TsIsotropy,
};
use char2forms_core::gf2field::{
    gcd, sqrt, square_decompose, Monomial, Polynomial, RationalFunction, VariableSet,
};
use char2forms_core::laurent::{residue, t_power, valuation};
use char2forms_core::pitower::{PiAlgebra, TowerSpec};
use char2forms_core::semilinear::{two_independent, Independence};

type Rf = RationalFunction;

const NVARS: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, NVARS).prop_map(|e| Monomial::from_exponents(&e))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(monomial(), 0..6).prop_map(|ms| {
        // repeated monomials cancel in characteristic 2
        ms.into_iter().fold(Polynomial::zero(), |acc, m| acc.add_ref(&Polynomial::monomial(m)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rf> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| Rf::new(n, d).expect("nonzero denominator"))
}

fn nonzero_rational() -> impl Strategy<Value = Rf> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn names() -> VariableSet {
    VariableSet::new(["x", "y", "z"]).unwrap()
}

/// GF(2)[x] as bit vectors, for an independent univariate gcd.
fn bits_of(p: &Polynomial) -> u64 {
    p.terms().iter().fold(0, |acc, m| acc ^ (1u64 << m.exponent(0)))
}

fn bits_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while a != 0 && a.leading_zeros() <= b.leading_zeros() {
            a ^= b << (b.leading_zeros() - a.leading_zeros());
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn univariate() -> impl Strategy<Value = Polynomial> {
    (1u64..1 << 12).prop_map(|bits| {
        Polynomial::from_terms((0..12).filter(|i| bits >> i & 1 == 1).map(|i| Monomial::var_pow(0, i as u16)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add_ref(&a), Polynomial::zero());
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.add_ref(&b).mul_ref(&c), a.mul_ref(&c).add_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).square(), a.square().add_ref(&b.square()));
    }

    #[test]
    fn exact_division(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!(a.mul_ref(&b).div_exact(&b), Some(a));
    }

    #[test]
    fn univariate_gcd_matches_bit_euclid(a in univariate(), b in univariate(), c in univariate()) {
        let (ac, bc) = (a.mul_ref(&c), b.mul_ref(&c));
        prop_assert_eq!(bits_of(&gcd(&ac, &bc)), bits_gcd(bits_of(&ac), bits_of(&bc)));
    }

    #[test]
    fn multivariate_gcd_divides_and_keeps_common_factor(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let (ac, bc) = (a.mul_ref(&c), b.mul_ref(&c));
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn field_laws(a in rational(), b in nonzero_rational()) {
        prop_assert_eq!(a.mul_ref(&b).div_ref(&b).unwrap(), a.clone());
        prop_assert!(b.inv().unwrap().mul_ref(&b).is_one());
        prop_assert_eq!(sqrt(&a.square()).unwrap(), a.clone());
        prop_assert_eq!(a.frobenius(3), a.square().square().square());
    }

    #[test]
    fn format_parse_roundtrip(a in rational()) {
        let n = names();
        prop_assert_eq!(n.parse(&n.format(&a)).unwrap(), a);
    }

    #[test]
    fn square_decomposition_recomposes(a in rational()) {
        let dec = square_decompose(&a);
        let back = dec.components().iter().fold(Rf::zero(), |acc, (&mask, c)| {
            acc.add_ref(&c.square().mul_ref(&Rf::monomial(Monomial::from_parity(mask))))
        });
        prop_assert_eq!(back, a);
    }

    #[test]
    fn monomial_independence_is_parity_independence(ms in prop::collection::vec(monomial(), 1..4)) {
        let elems: Vec<Rf> = ms.iter().map(|m| Rf::monomial(*m)).collect();
        let parity: Vec<u32> = ms.iter().map(Monomial::parity).collect();
        // independent iff no nonempty subset of parities XORs to zero
        let independent = (1u32..1 << parity.len())
            .all(|s| (0..parity.len()).filter(|i| s >> i & 1 == 1).fold(0, |acc, i| acc ^ parity[i]) != 0);
        match two_independent(&elems).unwrap() {
            Independence::Independent => prop_assert!(independent),
            Independence::Dependent(c) => {
                prop_assert!(!independent);
                prop_assert!(c.verify(&elems));
            }
        }
    }

    #[test]
    fn totally_singular_witnesses_verify(c in prop::collection::vec(nonzero_rational(), 1..4)) {
        let q = QuadraticForm::totally_singular(c);
        if let TsIsotropy::Isotropic(w) = ts_isotropy(&q).unwrap() {
            prop_assert!(w.verify(&q));
        }
    }

    #[test]
    fn arf_shear_is_an_isometry(a in nonzero_rational(), b in nonzero_rational(), l in rational()) {
        let q = QuadraticForm::binary(a.clone(), b.clone());
        // Y ↦ Y + λX turns [a, b] into [a + λ + λ^2 b, b]
        let target = QuadraticForm::binary(a.add_ref(&l).add_ref(&l.square().mul_ref(&b)), b);
        let mut w = IsometryWitness::identity(2);
        w.matrix[1][0] = l;
        prop_assert_eq!(check_isometry_witness(&q, &target, &w), Ok(true));
    }

    #[test]
    fn valuation_and_residue(u0 in nonzero_poly(), u1 in poly(), k in -4i64..5) {
        // t is variable 3, u a unit at t = 0
        let t = 3;
        let u = Rf::from(u0.clone()).add_ref(&Rf::var(t).mul_ref(&Rf::from(u1)));
        let e = t_power(t, k).mul_ref(&u);
        prop_assert_eq!(valuation(&e, t).unwrap(), k);
        prop_assert_eq!(residue(&u.square(), t).unwrap(), Rf::from(u0.square()));
    }

    #[test]
    fn quaternion_norm_is_multiplicative(xs in prop::collection::vec(poly(), 8)) {
        let alg = CompositionAlgebra::quaternion(Rf::var(0), Rf::var(1)).unwrap();
        let x = alg.element(xs[..4].iter().cloned().map(Rf::from).collect()).unwrap();
        let y = alg.element(xs[4..].iter().cloned().map(Rf::from).collect()).unwrap();
        let xy = alg.multiply(&x, &y).unwrap();
        prop_assert_eq!(alg.norm(&xy).unwrap(), alg.norm(&x).unwrap().mul_ref(&alg.norm(&y).unwrap()));
    }

    #[test]
    fn frobenius_is_a_ring_map(cs in prop::collection::vec(poly(), 16), n in 1u32..3) {
        let mut spec = TowerSpec::new(names());
        spec.adjoin("w", 2, Rf::var(2)).unwrap();
        spec.adjoin("v", 1, Rf::var(0)).unwrap();
        let alg = PiAlgebra::build(&spec).unwrap();
        let a = alg.from_coords(cs[..8].iter().cloned().map(Rf::from).collect()).unwrap();
        let b = alg.from_coords(cs[8..].iter().cloned().map(Rf::from).collect()).unwrap();
        prop_assert_eq!(alg.frobenius(&alg.mul(&a, &b), n), alg.mul(&alg.frobenius(&a, n), &alg.frobenius(&b, n)));
        prop_assert_eq!(alg.frobenius(&alg.add(&a, &b), n), alg.add(&alg.frobenius(&a, n), &alg.frobenius(&b, n)));
        let e = alg.exponent_of(&a);
        prop_assert!(e <= alg.exponent());
        prop_assert!(alg.as_scalar(&alg.frobenius(&a, e)).is_some());
    }
}

#[test]
fn pfister_dimensions() {
    let slots: Vec<Rf> = (0..3).map(Rf::var).collect();
    for n in 0..=3 {
        let q = quadratic_pfister(&slots[..n], &Rf::one()).unwrap();
        assert_eq!(q.dim(), 2 << n);
    }
}
