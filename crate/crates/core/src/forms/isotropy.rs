use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    bilinear_pfister, graded_lex_subsets, BilinearForm, FormError, IsotropyWitness, PfisterKind,
    PfisterSpec, QuadraticForm, Rf,
};
use crate::gf2field::sqrt;
use crate::laurent::ResidueProof;
use crate::semilinear::{
    self, f2_field_equal, linear_span_membership_with, FieldEquality, Independence, Limits,
};

/// Why a form is anisotropic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyProof {
    /// A totally singular form whose coefficients are linearly independent over `F^2`.
    IndependentCoefficients { coefficients: Vec<Rf> },
    /// The residue criterion over a Laurent variable.
    Residue(Box<ResidueProof>),
    /// The form is the leading part (prefix of blocks and diagonal) of an
    /// anisotropic form.
    Subform { ambient: QuadraticForm, proof: Box<AnisotropyProof> },
}

impl AnisotropyProof {
    /// Short name of the criterion that fired.
    pub fn method(&self) -> &'static str {
        match self {
            AnisotropyProof::IndependentCoefficients { .. } => "independent-coefficients",
            AnisotropyProof::Residue(_) => "residue-criterion",
            AnisotropyProof::Subform { .. } => "anisotropic-superform",
        }
    }

    /// Re-checks the proof for `q`.
    pub fn verify(&self, q: &QuadraticForm) -> bool {
        match self {
            AnisotropyProof::IndependentCoefficients { coefficients } => {
                q.is_totally_singular()
                    && q.diagonal() == coefficients.as_slice()
                    && ts_isotropy_with(q, &Limits { max_elements: 8, max_vars: 8 })
                        == Ok(TsIsotropy::Anisotropic)
            }
            AnisotropyProof::Residue(proof) => proof.form == *q && proof.verify(),
            AnisotropyProof::Subform { ambient, proof } => {
                ambient.blocks().starts_with(q.blocks())
                    && ambient.diagonal().starts_with(q.diagonal())
                    && proof.verify(ambient)
            }
        }
    }
}

/// Three-valued outcome of the anisotropy deciders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Anisotropic(AnisotropyProof),
    Isotropic(IsotropyWitness),
    Unknown(String),
}

impl Decision {
    pub fn is_anisotropic(&self) -> bool {
        matches!(self, Decision::Anisotropic(_))
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, Decision::Isotropic(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TsIsotropy {
    Isotropic(IsotropyWitness),
    Anisotropic,
}

/// Isotropy of a totally singular form `<c_1, ..., c_s>`: it is isotropic
/// iff the `c_i` are linearly dependent over `F^2`. The witness comes from
/// the first `c_j` in the `F^2`-span of its predecessors.
pub fn ts_isotropy(q: &QuadraticForm) -> Result<TsIsotropy, FormError> {
    ts_isotropy_with(q, &Limits::default())
}

pub fn ts_isotropy_with(q: &QuadraticForm, limits: &Limits) -> Result<TsIsotropy, FormError> {
    if !q.is_totally_singular() {
        return Err(FormError::NotTotallySingular);
    }
    // <c> ≅ <c d^2>: work with polynomial coefficients and rescale the witness
    let c: Vec<Rf> = q.diagonal().iter().map(|e| Rf::from(e.num().mul_ref(e.den()))).collect();
    let dens: Vec<Rf> = q.diagonal().iter().map(|e| Rf::from(e.den().clone())).collect();
    for j in 0..c.len() {
        let lambda = if c[j].is_zero() {
            Some(vec![Rf::zero(); j])
        } else {
            linear_span_membership_with(&c[j], &c[..j], limits)?
        };
        if let Some(mut v) = lambda {
            v.push(Rf::one());
            v.resize(c.len(), Rf::zero());
            let vector = v.iter().zip(&dens).map(|(w, d)| w.mul_ref(d)).collect();
            return Ok(TsIsotropy::Isotropic(IsotropyWitness { vector }));
        }
    }
    Ok(TsIsotropy::Anisotropic)
}

/// `⟪a_1, ..., a_n⟫_b` is anisotropic iff the slots are 2-independent.
pub fn bil_pfister_anisotropic(slots: &[Rf]) -> Result<Independence, FormError> {
    bilinear_pfister(slots)?;
    Ok(semilinear::two_independent(slots)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearIsotropy {
    pub isotropic: bool,
    /// The totally singular form associated with `⟪s_1, ..., s_r⟫_b ⊗ β`.
    pub associated: QuadraticForm,
    pub witness: Option<IsotropyWitness>,
}

/// Isotropy of `β` over `F(sqrt s_1, ..., sqrt s_r)`, decided through the
/// form `⟪s_1, ..., s_r⟫_b ⊗ β` over `F`.
pub fn bil_isotropic_over_exp1(beta: &BilinearForm, s: &[Rf]) -> Result<BilinearIsotropy, FormError> {
    if let Independence::Dependent(cert) = semilinear::two_independent(s)? {
        return Err(FormError::SNotTwoIndependent(cert));
    }
    let beta_diag = beta.associated_quadratic();
    let mut coeffs = Vec::new();
    for m in graded_lex_subsets(s.len()) {
        let p = semilinear::subset_product(s, m);
        for b in beta_diag.diagonal() {
            coeffs.push(p.mul_ref(b));
        }
    }
    let associated = QuadraticForm::totally_singular(coeffs);
    let limits = Limits { max_elements: 8, ..Limits::default() };
    Ok(match ts_isotropy_with(&associated, &limits)? {
        TsIsotropy::Isotropic(w) => BilinearIsotropy { isotropic: true, associated, witness: Some(w) },
        TsIsotropy::Anisotropic => BilinearIsotropy { isotropic: false, associated, witness: None },
    })
}

/// Quasi-Pfister forms are isometric iff `F^2(slots)` agree.
pub fn quasi_pfister_isometric(p: &PfisterSpec, q: &PfisterSpec) -> Result<FieldEquality, FormError> {
    if p.kind != PfisterKind::Quasi || q.kind != PfisterKind::Quasi {
        return Err(FormError::WrongPfisterKind);
    }
    if p.fold() != q.fold() {
        return Err(FormError::FoldMismatch { left: p.fold(), right: q.fold() });
    }
    Ok(f2_field_equal(&p.slots, &q.slots)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtVerdict {
    /// `q` stays anisotropic over `F(sqrt a)` because `⟪a⟫_b ⊗ q` is anisotropic.
    Anisotropic { tensor: QuadraticForm, proof: AnisotropyProof },
    Unknown { tensor: QuadraticForm, reason: String },
}

/// Anisotropy of `q` over `F(sqrt a)`: if `q` became isotropic there,
/// `⟪a⟫_b ⊗ q` would be isotropic over `F`. Never claims isotropy.
pub fn aniso_over_sqrt(
    q: &QuadraticForm,
    a: &Rf,
    decide: &dyn Fn(&QuadraticForm) -> Decision,
) -> Result<SqrtVerdict, FormError> {
    if sqrt(a).is_ok() {
        return Err(FormError::AIsSquare);
    }
    let tensor = q.orthogonal_sum(&q.scale(a)?);
    Ok(match decide(&tensor) {
        Decision::Anisotropic(proof) => SqrtVerdict::Anisotropic { tensor, proof },
        Decision::Isotropic(_) => SqrtVerdict::Unknown {
            tensor,
            reason: String::from("⟪a⟫_b ⊗ q is isotropic; no conclusion over F(sqrt a)"),
        },
        Decision::Unknown(reason) => SqrtVerdict::Unknown { tensor, reason },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::VariableSet;

    fn ts_decide(q: &QuadraticForm) -> Decision {
        match ts_isotropy(q) {
            Ok(TsIsotropy::Anisotropic) => Decision::Anisotropic(AnisotropyProof::IndependentCoefficients {
                coefficients: q.diagonal().to_vec(),
            }),
            Ok(TsIsotropy::Isotropic(w)) => Decision::Isotropic(w),
            Err(e) => Decision::Unknown(alloc::format!("{e}")),
        }
    }

    #[test]
    fn totally_singular_examples() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = QuadraticForm::totally_singular(vec![p("1"), p("1")]);
        assert_eq!(
            ts_isotropy(&q).unwrap(),
            TsIsotropy::Isotropic(IsotropyWitness { vector: vec![p("1"), p("1")] })
        );
        let q = QuadraticForm::totally_singular(vec![p("1"), p("x"), p("y")]);
        assert_eq!(ts_isotropy(&q).unwrap(), TsIsotropy::Anisotropic);
        let q = QuadraticForm::binary(p("1"), p("x"));
        assert_eq!(ts_isotropy(&q), Err(FormError::NotTotallySingular));
    }

    #[test]
    fn witness_over_biquadratic_extension() {
        // F(sqrt z, sqrt(xz + y)) realized as F_2(x, r, s) with z = r^2, y = s^2 + x r^2
        let e = VariableSet::new(["x", "r", "s"]).unwrap();
        let p = |s: &str| e.parse(s).unwrap();
        let q = QuadraticForm::totally_singular(vec![p("1"), p("x"), p("s^2 + x*r^2")]);
        let TsIsotropy::Isotropic(w) = ts_isotropy(&q).unwrap() else { panic!() };
        assert_eq!(w.vector, vec![p("s"), p("r"), p("1")]);
        assert!(w.verify(&q));
    }

    #[test]
    fn bilinear_criteria() {
        let f = VariableSet::new(["x", "y", "z", "c"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        assert!(bil_pfister_anisotropic(&[p("x"), p("y")]).unwrap().is_independent());
        assert!(!bil_pfister_anisotropic(&[p("x"), p("x")]).unwrap().is_independent());
        assert!(bil_pfister_anisotropic(&[p("x"), p("y"), p("c")]).unwrap().is_independent());

        let beta = bilinear_pfister(&[p("x"), p("y")]).unwrap();
        let r = bil_isotropic_over_exp1(&beta, &[p("x")]).unwrap();
        assert!(r.isotropic && r.witness.unwrap().verify(&r.associated));
        assert!(!bil_isotropic_over_exp1(&beta, &[p("z")]).unwrap().isotropic);
        assert!(bil_isotropic_over_exp1(&beta, &[p("z"), p("x*z + y")]).unwrap().isotropic);
        assert!(matches!(
            bil_isotropic_over_exp1(&beta, &[p("z"), p("z")]),
            Err(FormError::SNotTwoIndependent(_))
        ));
    }

    #[test]
    fn quasi_isometry() {
        let f = VariableSet::new(["x", "y", "z"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let a2 = p("z^2*x + y + z + x*z + y*z");
        let l = PfisterSpec::quasi(vec![a2, p("x"), p("y")]);
        let r = PfisterSpec::quasi(vec![p("z"), p("x"), p("y")]);
        assert!(quasi_pfister_isometric(&l, &r).unwrap().equal());
        let px = PfisterSpec::quasi(vec![p("x")]);
        assert!(quasi_pfister_isometric(&px, &PfisterSpec::quasi(vec![p("x^3")])).unwrap().equal());
        assert!(!quasi_pfister_isometric(&px, &PfisterSpec::quasi(vec![p("y")])).unwrap().equal());
        assert!(matches!(quasi_pfister_isometric(&px, &r), Err(FormError::FoldMismatch { .. })));
    }

    #[test]
    fn sqrt_extension_never_claims_isotropy() {
        let f = VariableSet::new(["x", "y"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        let q = QuadraticForm::totally_singular(vec![p("1"), p("x")]);
        assert!(matches!(aniso_over_sqrt(&q, &p("x"), &ts_decide).unwrap(), SqrtVerdict::Unknown { .. }));
        assert_eq!(aniso_over_sqrt(&q, &p("x^2"), &ts_decide), Err(FormError::AIsSquare));
        let q = QuadraticForm::totally_singular(vec![p("1"), p("x")]);
        assert!(matches!(
            aniso_over_sqrt(&q, &p("y"), &ts_decide).unwrap(),
            SqrtVerdict::Anisotropic { .. }
        ));
    }
}
