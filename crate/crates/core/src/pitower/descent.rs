use alloc::vec;
use alloc::vec::Vec;

use super::{Embedding, PiError, Rf};
use crate::forms::{
    check_isometry_witness, quadratic_pfister, search_with_choices, ChoiceOutcome, IsometryWitness,
    IsotropyWitness, QuadraticForm, DEFAULT_SEARCH_BUDGET,
};
use crate::gf2field::{sqrt, Polynomial};

/// `π = ⟪b; c]]` written as `⟪a; c]]` with `sqrt a ∈ E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticDescent {
    /// Over `F`, normalized to numerator times denominator.
    pub a: Rf,
    pub c: Rf,
    /// `x^2 + x y + c y^2 = b z^2` with `x, y ∈ F` and `z ∈ E`, `z^2 = a` up to squares.
    pub x: Rf,
    pub y: Rf,
    pub z: Rf,
    /// `⟪a; c]](v) = ⟪b; c]](T v)` over `F`.
    pub isometry: IsometryWitness,
    /// Isotropic vector of `π` over `E` (in target coordinates).
    pub witness: IsotropyWitness,
}

/// Looks for `x, y ∈ F`, `z ∈ E` with `x^2 + x y + c y^2 + b z^2 = 0`
/// among sums of monomials of degree at most `degree_bound`. Then
/// `a = z^2 ∈ F` and `π = ⟪b; c]] ≅ ⟪a; c]]`: with `α = x + y ω` in
/// `F(ω)`, `ω^2 = ω + c`, the norm satisfies `N(α) = b z^2`, so
/// `β ↦ d β ᾱ / b` maps `a d^2 N` onto `b N`.
///
/// `Ok(None)` means nothing was found; it refutes nothing.
pub fn find_quadratic_descent(
    b: &Rf,
    c: &Rf,
    emb: &Embedding,
    degree_bound: u32,
) -> Result<Option<QuadraticDescent>, PiError> {
    if !emb.is_exponent_one() {
        return Err(PiError::NotExponentOne);
    }
    let support = b.support() | c.support();
    let f_vars: Vec<usize> = (0..32).filter(|v| support >> v & 1 == 1).collect();
    let f_monomials: Vec<Rf> =
        Polynomial::monomials_up_to(&f_vars, degree_bound).into_iter().map(Rf::monomial).collect();
    let f_basis: Vec<Rf> = f_monomials.iter().map(|m| emb.apply(m)).collect::<Result<_, _>>()?;
    let e_vars: Vec<usize> = (0..emb.target.len()).collect();
    let e_basis: Vec<Rf> =
        Polynomial::monomials_up_to(&e_vars, degree_bound).into_iter().map(Rf::monomial).collect();

    let b_e = emb.apply(b)?;
    let c_e = emb.apply(c)?;
    let ternary = QuadraticForm::new(vec![(Rf::one(), c_e)], vec![b_e]);
    let bases = vec![f_basis.clone(), f_basis, e_basis];
    let ChoiceOutcome::Found { witness, choices } =
        search_with_choices(&ternary, &bases, DEFAULT_SEARCH_BUDGET)?
    else {
        return Ok(None);
    };
    let pick = |i: usize| choices[i].iter().fold(Rf::zero(), |acc, &j| acc.add_ref(&f_monomials[j]));
    let (x, y) = (pick(0), pick(1));
    let z = witness.vector[2].clone();
    let norm = x.square().add_ref(&x.mul_ref(&y)).add_ref(&c.mul_ref(&y.square()));
    if z.is_zero() || norm.is_zero() {
        return Err(PiError::IsotropicOverBase);
    }
    let a_raw = norm.div_ref(b)?;
    if emb.apply(&a_raw)? != z.square() {
        return Err(PiError::NotExponentOne);
    }
    if sqrt(&a_raw).is_ok() {
        return Err(PiError::IsotropicOverBase);
    }
    let d = Rf::from(a_raw.den().clone());
    let a = a_raw.mul_ref(&d.square());

    // rows give the π coordinates of the second block in terms of (p, q)
    let s = d.div_ref(b)?;
    let block = [
        [s.mul_ref(&x.add_ref(&y)), s.mul_ref(&c.mul_ref(&y))],
        [s.mul_ref(&y), s.mul_ref(&x)],
    ];
    let mut matrix = vec![vec![Rf::zero(); 4]; 4];
    matrix[0][0] = Rf::one();
    matrix[1][1] = Rf::one();
    for i in 0..2 {
        for j in 0..2 {
            matrix[2 + i][2 + j] = block[i][j].clone();
        }
    }
    let isometry = IsometryWitness { matrix };
    let pi = quadratic_pfister(core::slice::from_ref(b), c)?;
    let target = quadratic_pfister(core::slice::from_ref(&a), c)?;
    if !check_isometry_witness(&pi, &target, &isometry)? {
        return Err(PiError::WitnessRejected);
    }
    let pi_e = emb.apply_form(&pi)?;
    let witness = IsotropyWitness {
        vector: vec![emb.apply(&x)?, emb.apply(&y)?, z.clone(), Rf::zero()],
    };
    debug_assert!(witness.verify(&pi_e));
    Ok(Some(QuadraticDescent { a, c: c.clone(), x, y, z, isometry, witness }))
}

#[cfg(test)]
mod tests {
    use super::super::{adjoin_roots, RootSpec};
    use super::*;
    use crate::gf2field::VariableSet;
    use alloc::string::ToString;

    #[test]
    fn descends_to_the_square_root_in_e() {
        let f = VariableSet::new(["x", "t"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let roots = [RootSpec { name: "r".to_string(), log2: 1, radicand: p("x") }];
        let emb = adjoin_roots(&f, Some(1), &roots).unwrap();
        let d = find_quadratic_descent(&p("x"), &p("1/t"), &emb, 2).unwrap().unwrap();
        assert_eq!(d.a, p("x"));
        assert_eq!(d.z, emb.target.parse("r").unwrap());
        assert_eq!((d.x.clone(), d.y.clone()), (p("x"), p("0")));
        assert!(d.witness.verify(&emb.apply_form(&quadratic_pfister(&[p("x")], &p("1/t")).unwrap()).unwrap()));
    }

    #[test]
    fn nothing_found_when_pi_stays_anisotropic() {
        let f = VariableSet::new(["x", "z", "t"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let roots = [RootSpec { name: "r".to_string(), log2: 1, radicand: p("z") }];
        let emb = adjoin_roots(&f, Some(2), &roots).unwrap();
        assert_eq!(find_quadratic_descent(&p("x"), &p("1/t"), &emb, 2), Ok(None));
    }

    #[test]
    fn requires_exponent_one() {
        let f = VariableSet::new(["x"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let roots = [RootSpec { name: "r".to_string(), log2: 2, radicand: p("x") }];
        let emb = adjoin_roots(&f, None, &roots).unwrap();
        assert_eq!(find_quadratic_descent(&p("x"), &p("x"), &emb, 1), Err(PiError::NotExponentOne));
    }
}
