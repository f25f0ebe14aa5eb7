//! `F((t))` through its subfield `F(t)`: exact `t`-adic valuation and
//! residues for a designated variable `t`, residue forms, and the residue
//! criteria for anisotropy over `F((t))`.
//!
//! An anisotropy proof rewrites a form isometrically as
//! `ρ ⊥ t⁻¹σ ⊥ [a_1, t⁻¹b_1] ⊥ ... ⊥ [a_n, t⁻¹b_n]` with unit coefficients
//! and shows that the residue forms of `ρ ⊥ <a_1, ..., a_n>` and
//! `σ ⊥ <b_1, ..., b_n>` are anisotropic over `F`. Anisotropy over `F((t))`
//! implies anisotropy over `F(t)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::forms::{
    check_isometry_witness, ts_isotropy_with, AnisotropyProof, Decision, FormError, IsometryWitness,
    IsotropyWitness, QuadraticForm, TsIsotropy,
};
use crate::gf2field::{sqrt, FieldError, Monomial, Polynomial, RationalFunction};
use crate::semilinear::Limits;

type Rf = RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentError {
    ZeroElement,
    NonUnit { valuation: i64 },
    /// Coefficient (0-based, in coordinate order) that is neither zero nor a unit.
    NonUnitCoefficient { index: usize },
    LengthMismatch { alpha: usize, beta: usize },
    Form(FormError),
    Field(FieldError),
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::ZeroElement => write!(f, "zero has no valuation"),
            LaurentError::NonUnit { valuation } => {
                write!(f, "element of valuation {valuation} is not a unit")
            }
            LaurentError::NonUnitCoefficient { index } => {
                write!(f, "coefficient {index} is neither zero nor a unit")
            }
            LaurentError::LengthMismatch { alpha, beta } => {
                write!(f, "alpha has {alpha} entries but beta has {beta}")
            }
            LaurentError::Form(e) => write!(f, "{e}"),
            LaurentError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LaurentError {}

impl From<FormError> for LaurentError {
    fn from(e: FormError) -> Self {
        LaurentError::Form(e)
    }
}

impl From<FieldError> for LaurentError {
    fn from(e: FieldError) -> Self {
        LaurentError::Field(e)
    }
}

/// An element of `F(t) ⊂ F((t))`, with `t` the variable of index `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement {
    value: Rf,
    t: usize,
}

impl LaurentElement {
    pub fn new(value: Rf, t: usize) -> Self {
        Self { value, t }
    }

    pub fn value(&self) -> &Rf {
        &self.value
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn valuation(&self) -> Result<i64, LaurentError> {
        valuation(&self.value, self.t)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Ok(0)
    }

    pub fn residue(&self) -> Result<Rf, LaurentError> {
        residue(&self.value, self.t)
    }

    /// `(v, c)` with `self ∈ c t^v + t^{v+1} F[[t]]` and `c ∈ F*`.
    pub fn leading(&self) -> Result<(i64, Rf), LaurentError> {
        leading(&self.value, self.t)
    }
}

/// `t^k` for the variable of index `t`.
pub fn t_power(t: usize, k: i64) -> Rf {
    let m = Rf::monomial(Monomial::var_pow(t, k.unsigned_abs() as u16));
    if k >= 0 {
        m
    } else {
        m.inv().expect("monomial is nonzero")
    }
}

pub fn valuation(e: &Rf, t: usize) -> Result<i64, LaurentError> {
    let n = e.num().var_valuation(t).ok_or(LaurentError::ZeroElement)?;
    let d = e.den().var_valuation(t).expect("denominator is nonzero");
    Ok(n as i64 - d as i64)
}

/// Valuation and leading coefficient: the unit part evaluated at `t = 0`.
pub fn leading(e: &Rf, t: usize) -> Result<(i64, Rf), LaurentError> {
    let v = valuation(e, t)?;
    let strip = |p: &Polynomial| {
        let k = p.var_valuation(t).expect("nonzero");
        p.div_monomial(&Monomial::var_pow(t, k)).eval_var_zero(t)
    };
    let c = Rf::new(strip(e.num()), strip(e.den()))?;
    Ok((v, c))
}

/// Residue of a unit.
pub fn residue(e: &Rf, t: usize) -> Result<Rf, LaurentError> {
    let (v, c) = leading(e, t)?;
    if v != 0 {
        return Err(LaurentError::NonUnit { valuation: v });
    }
    Ok(c)
}

fn residue_or_zero(e: &Rf, t: usize, index: usize) -> Result<Rf, LaurentError> {
    if e.is_zero() {
        return Ok(Rf::zero());
    }
    residue(e, t).map_err(|_| LaurentError::NonUnitCoefficient { index })
}

/// Componentwise residues of a representation whose coefficients are units or zero.
pub fn residue_form(q: &QuadraticForm, t: usize) -> Result<QuadraticForm, LaurentError> {
    let mut index = 0;
    q.try_map(|c| {
        let r = residue_or_zero(c, t, index);
        index += 1;
        r
    })
}

fn check_units(q: &QuadraticForm, t: usize) -> Result<(), LaurentError> {
    residue_form(q, t).map(|_| ())
}

/// Settings for the recursive decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideContext {
    /// Variables that may serve as the Laurent variable; `None` allows any
    /// variable occurring in the form.
    pub candidates: Option<Vec<usize>>,
    /// Nesting depth for residue forms that are not totally singular.
    pub max_depth: usize,
    pub limits: Limits,
}

impl Default for DecideContext {
    fn default() -> Self {
        Self { candidates: None, max_depth: 3, limits: Limits { max_elements: 8, max_vars: 8 } }
    }
}

impl DecideContext {
    pub fn with_candidates(candidates: Vec<usize>) -> Self {
        Self { candidates: Some(candidates), ..Self::default() }
    }

    fn without(&self, t: usize) -> Self {
        let candidates = self.candidates.as_ref().map(|c| c.iter().copied().filter(|&v| v != t).collect());
        Self { candidates, max_depth: self.max_depth.saturating_sub(1), limits: self.limits }
    }
}

/// One Arf shear `X_k ↦ X_k + λ Y_k` applied to block `block`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArfStep {
    pub block: usize,
    pub lambda: Rf,
}

/// Certificate that `form` is anisotropic over `F((t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProof {
    pub t: usize,
    pub form: QuadraticForm,
    /// `ρ ⊥ t⁻¹σ ⊥ [a_1, t⁻¹b_1] ⊥ ... ⊥ [a_n, t⁻¹b_n]`.
    pub rewritten: QuadraticForm,
    /// `rewritten(v) = form(T v)`.
    pub isometry: IsometryWitness,
    pub arf_steps: Vec<ArfStep>,
    pub rho: QuadraticForm,
    pub sigma: QuadraticForm,
    pub alpha: Vec<Rf>,
    pub beta: Vec<Rf>,
    pub psi_bar: QuadraticForm,
    pub tau_bar: QuadraticForm,
    pub psi_proof: AnisotropyProof,
    pub tau_proof: AnisotropyProof,
}

impl ResidueProof {
    /// Re-checks every step of the certificate.
    pub fn verify(&self) -> bool {
        let Ok(expected) = prop44_shape(&self.rho, &self.sigma, &self.alpha, &self.beta, self.t) else {
            return false;
        };
        if expected != self.rewritten {
            return false;
        }
        if check_isometry_witness(&self.form, &self.rewritten, &self.isometry) != Ok(true) {
            return false;
        }
        let Ok((psi, tau)) = residue_pair(&self.rho, &self.sigma, &self.alpha, &self.beta, self.t) else {
            return false;
        };
        psi == self.psi_bar
            && tau == self.tau_bar
            && !depends_on(&psi, self.t)
            && !depends_on(&tau, self.t)
            && self.psi_proof.verify(&psi)
            && self.tau_proof.verify(&tau)
    }
}

fn depends_on(q: &QuadraticForm, t: usize) -> bool {
    q.coefficients().any(|c| c.support() >> t & 1 == 1)
}

/// The form `ρ ⊥ t⁻¹σ ⊥ [a_1, t⁻¹b_1] ⊥ ... ⊥ [a_n, t⁻¹b_n]`.
pub fn prop44_shape(
    rho: &QuadraticForm,
    sigma: &QuadraticForm,
    alpha: &[Rf],
    beta: &[Rf],
    t: usize,
) -> Result<QuadraticForm, LaurentError> {
    if alpha.len() != beta.len() {
        return Err(LaurentError::LengthMismatch { alpha: alpha.len(), beta: beta.len() });
    }
    let tinv = t_power(t, -1);
    let pairs = QuadraticForm::new(
        alpha.iter().zip(beta).map(|(a, b)| (a.clone(), tinv.mul_ref(b))).collect(),
        Vec::new(),
    );
    Ok(rho.orthogonal_sum(&sigma.scale(&tinv)?).orthogonal_sum(&pairs))
}

/// Residue forms of `ψ = ρ ⊥ α` and `τ = σ ⊥ β`.
fn residue_pair(
    rho: &QuadraticForm,
    sigma: &QuadraticForm,
    alpha: &[Rf],
    beta: &[Rf],
    t: usize,
) -> Result<(QuadraticForm, QuadraticForm), LaurentError> {
    if alpha.len() != beta.len() {
        return Err(LaurentError::LengthMismatch { alpha: alpha.len(), beta: beta.len() });
    }
    let psi = rho.orthogonal_sum(&QuadraticForm::totally_singular(alpha.to_vec()));
    let tau = sigma.orthogonal_sum(&QuadraticForm::totally_singular(beta.to_vec()));
    Ok((residue_form(&psi, t)?, residue_form(&tau, t)?))
}

/// If the residue forms of `ρ ⊥ α` and `σ ⊥ β` are anisotropic over `F`,
/// then `ρ ⊥ t⁻¹σ ⊥ [a_1, t⁻¹b_1] ⊥ ... ⊥ [a_n, t⁻¹b_n]` is anisotropic
/// over `F((t))`. Returns `Anisotropic` or `Unknown`.
pub fn prop44_aniso(
    rho: &QuadraticForm,
    sigma: &QuadraticForm,
    alpha: &[Rf],
    beta: &[Rf],
    t: usize,
    ctx: &DecideContext,
) -> Result<Decision, LaurentError> {
    let alpha_q = QuadraticForm::totally_singular(alpha.to_vec());
    let beta_q = QuadraticForm::totally_singular(beta.to_vec());
    for part in [rho, sigma, &alpha_q, &beta_q] {
        check_units(part, t)?;
    }
    let phi = prop44_shape(rho, sigma, alpha, beta, t)?;
    let n = phi.dim();
    Ok(residue_certificate(
        phi,
        t,
        IsometryWitness::identity(n),
        Vec::new(),
        rho.clone(),
        sigma.clone(),
        alpha.to_vec(),
        beta.to_vec(),
        ctx,
    )?)
}

#[allow(clippy::too_many_arguments)]
fn residue_certificate(
    form: QuadraticForm,
    t: usize,
    isometry: IsometryWitness,
    arf_steps: Vec<ArfStep>,
    rho: QuadraticForm,
    sigma: QuadraticForm,
    alpha: Vec<Rf>,
    beta: Vec<Rf>,
    ctx: &DecideContext,
) -> Result<Decision, LaurentError> {
    let rewritten = prop44_shape(&rho, &sigma, &alpha, &beta, t)?;
    let (psi_bar, tau_bar) = residue_pair(&rho, &sigma, &alpha, &beta, t)?;
    let sub = ctx.without(t);
    let psi_proof = match decide_residue(&psi_bar, &sub) {
        Decision::Anisotropic(p) => p,
        Decision::Isotropic(_) => return Ok(Decision::Unknown(String::from("residue form ψ̄ is isotropic"))),
        Decision::Unknown(r) => return Ok(Decision::Unknown(format!("residue form ψ̄ undecided: {r}"))),
    };
    let tau_proof = match decide_residue(&tau_bar, &sub) {
        Decision::Anisotropic(p) => p,
        Decision::Isotropic(_) => return Ok(Decision::Unknown(String::from("residue form τ̄ is isotropic"))),
        Decision::Unknown(r) => return Ok(Decision::Unknown(format!("residue form τ̄ undecided: {r}"))),
    };
    let proof = ResidueProof {
        t,
        form,
        rewritten,
        isometry,
        arf_steps,
        rho,
        sigma,
        alpha,
        beta,
        psi_bar,
        tau_bar,
        psi_proof,
        tau_proof,
    };
    debug_assert!(proof.verify());
    Ok(Decision::Anisotropic(AnisotropyProof::Residue(Box::new(proof))))
}

fn decide_residue(q: &QuadraticForm, ctx: &DecideContext) -> Decision {
    if q.dim() == 0 {
        return Decision::Anisotropic(AnisotropyProof::IndependentCoefficients { coefficients: Vec::new() });
    }
    decide(q, ctx)
}

/// For units `a, a_1, ..., a_n` with `<a_1, ..., a_n>` having anisotropic
/// residue form, `<a_1, ..., a_n>_b ⊗ [1, a t⁻¹] = ⊥ [a_i, a a_i⁻¹ t⁻¹]`
/// is anisotropic over `F((t))`.
pub fn cor45_aniso(slots: &[Rf], a: &Rf, t: usize, ctx: &DecideContext) -> Result<Decision, LaurentError> {
    let q_b = QuadraticForm::totally_singular(slots.to_vec());
    let residue_b = residue_form(&q_b, t)?;
    if slots.iter().any(|s| s.is_zero()) {
        return Err(LaurentError::NonUnitCoefficient {
            index: slots.iter().position(|s| s.is_zero()).expect("present"),
        });
    }
    let va = valuation(a, t)?;
    if va != 0 {
        return Err(LaurentError::NonUnit { valuation: va });
    }
    match ts_isotropy_with(&residue_b, &ctx.limits) {
        Ok(TsIsotropy::Anisotropic) => {}
        Ok(TsIsotropy::Isotropic(_)) => {
            return Ok(Decision::Unknown(String::from("residue of the bilinear form is isotropic")))
        }
        Err(e) => return Ok(Decision::Unknown(format!("{e}"))),
    }
    let beta: Vec<Rf> = slots
        .iter()
        .map(|s| a.div_ref(s))
        .collect::<Result<_, _>>()?;
    prop44_aniso(&QuadraticForm::default(), &QuadraticForm::default(), slots, &beta, t, ctx)
}

/// Three-valued anisotropy decision over the rational function field,
/// viewed inside `F((t))` for each candidate variable `t` in turn.
pub fn decide(q: &QuadraticForm, ctx: &DecideContext) -> Decision {
    if q.dim() == 0 {
        return Decision::Unknown(String::from("zero-dimensional form"));
    }
    if let Some(w) = zero_coefficient_witness(q) {
        return Decision::Isotropic(w);
    }
    if q.is_totally_singular() {
        return match ts_isotropy_with(q, &ctx.limits) {
            Ok(TsIsotropy::Isotropic(w)) => Decision::Isotropic(w),
            Ok(TsIsotropy::Anisotropic) => Decision::Anisotropic(AnisotropyProof::IndependentCoefficients {
                coefficients: q.diagonal().to_vec(),
            }),
            Err(e) => Decision::Unknown(format!("{e}")),
        };
    }
    if let Some(w) = probe(q, ctx) {
        return Decision::Isotropic(w);
    }
    let support = q.coefficients().fold(0u32, |acc, c| acc | c.support());
    let candidates: Vec<usize> = match &ctx.candidates {
        Some(c) => c.iter().copied().filter(|&v| support >> v & 1 == 1).collect(),
        None => (0..32).filter(|&v| support >> v & 1 == 1).collect(),
    };
    if ctx.max_depth == 0 {
        return Decision::Unknown(String::from("nesting depth exhausted"));
    }
    let mut reasons = Vec::new();
    for t in candidates {
        match decide_over(q, t, ctx) {
            Ok(Decision::Unknown(r)) => reasons.push(r),
            Ok(d) => return d,
            Err(e) => reasons.push(format!("{e}")),
        }
    }
    if reasons.is_empty() {
        Decision::Unknown(String::from("no Laurent variable available"))
    } else {
        Decision::Unknown(reasons.join("; "))
    }
}

fn zero_coefficient_witness(q: &QuadraticForm) -> Option<IsotropyWitness> {
    let n = q.dim();
    let unit = |i: usize| {
        let mut v = vec![Rf::zero(); n];
        v[i] = Rf::one();
        IsotropyWitness { vector: v }
    };
    for (k, (a, b)) in q.blocks().iter().enumerate() {
        if a.is_zero() {
            return Some(unit(2 * k));
        }
        if b.is_zero() {
            return Some(unit(2 * k + 1));
        }
    }
    let off = 2 * q.blocks().len();
    q.diagonal().iter().position(|c| c.is_zero()).map(|j| unit(off + j))
}

/// Isotropic vectors of the totally singular restrictions `Y = 0` and `X = 0`.
fn probe(q: &QuadraticForm, ctx: &DecideContext) -> Option<IsotropyWitness> {
    let r = q.blocks().len();
    for side in 0..2 {
        let mut coeffs: Vec<Rf> =
            q.blocks().iter().map(|(a, b)| if side == 0 { a.clone() } else { b.clone() }).collect();
        coeffs.extend(q.diagonal().iter().cloned());
        let sub = QuadraticForm::totally_singular(coeffs);
        if let Ok(TsIsotropy::Isotropic(w)) = ts_isotropy_with(&sub, &ctx.limits) {
            let mut v = vec![Rf::zero(); q.dim()];
            for k in 0..r {
                v[2 * k + side] = w.vector[k].clone();
            }
            for j in 0..q.diagonal().len() {
                v[2 * r + j] = w.vector[r + j].clone();
            }
            return Some(IsotropyWitness { vector: v });
        }
    }
    None
}

enum BlockRole {
    Rho,
    Sigma,
    Pair,
}

/// Rewrites `q` in residue shape for the variable `t` and decides the two
/// residue forms.
pub fn decide_over(q: &QuadraticForm, t: usize, ctx: &DecideContext) -> Result<Decision, LaurentError> {
    if let Some(w) = zero_coefficient_witness(q) {
        return Ok(Decision::Isotropic(w));
    }
    let n = q.dim();
    let r = q.blocks().len();
    let off = 2 * r;
    let mut transform = IsometryWitness::identity(n);
    let mut blocks: Vec<(Rf, Rf)> = q.blocks().to_vec();
    let mut diagonal: Vec<Rf> = q.diagonal().to_vec();
    let mut arf_steps = Vec::new();
    let mut roles = Vec::with_capacity(r);

    for k in 0..r {
        loop {
            let (a, b) = &blocks[k];
            let s = valuation(a, t)? + valuation(b, t)?;
            if s >= -1 || s % 2 != 0 {
                break;
            }
            let (_, lc) = leading(&a.mul_ref(b), t)?;
            let Ok(alpha) = sqrt(&lc) else {
                return Ok(Decision::Unknown(format!(
                    "block {} has leading coefficient of ab not a square",
                    k + 1
                )));
            };
            let w = alpha.mul_ref(&t_power(t, s / 2));
            let lambda = w.div_ref(a)?;
            let new_b = b.add_ref(&a.mul_ref(&lambda.square())).add_ref(&lambda);
            let mut step = IsometryWitness::identity(n);
            step.matrix[2 * k][2 * k + 1] = lambda.clone();
            transform = transform.then(&step);
            arf_steps.push(ArfStep { block: k, lambda });
            if new_b.is_zero() {
                let mut v = vec![Rf::zero(); n];
                v[2 * k + 1] = Rf::one();
                return Ok(Decision::Isotropic(IsotropyWitness { vector: transform.apply(&v) }));
            }
            blocks[k].1 = new_b;
        }
        let (va, vb) = (valuation(&blocks[k].0, t)?, valuation(&blocks[k].1, t)?);
        let s = va + vb;
        let role = match s {
            0 => {
                if va.rem_euclid(2) == 0 {
                    rescale_block(&mut blocks[k], &mut transform, k, t, -va / 2);
                    BlockRole::Rho
                } else {
                    rescale_block(&mut blocks[k], &mut transform, k, t, (-1 - va) / 2);
                    BlockRole::Sigma
                }
            }
            -1 => {
                if va.rem_euclid(2) != 0 {
                    swap_block(&mut blocks[k], &mut transform, k);
                }
                let va = valuation(&blocks[k].0, t)?;
                rescale_block(&mut blocks[k], &mut transform, k, t, -va / 2);
                BlockRole::Pair
            }
            _ => {
                return Ok(Decision::Unknown(format!(
                    "block {} has v(ab) = {s}, outside the residue shape",
                    k + 1
                )))
            }
        };
        roles.push(role);
    }

    let mut diag_sigma = Vec::new();
    for (j, c) in diagonal.iter_mut().enumerate() {
        let v = valuation(c, t)?;
        let shift = v.div_euclid(2) + v.rem_euclid(2);
        // Z ↦ t^{-shift} Z multiplies c by t^{-2 shift}
        if shift != 0 {
            *c = c.mul_ref(&t_power(t, -2 * shift));
            let mut step = IsometryWitness::identity(n);
            step.matrix[off + j][off + j] = t_power(t, -shift);
            transform = transform.then(&step);
        }
        diag_sigma.push(v.rem_euclid(2) == 1);
    }

    let tt = t_power(t, 1);
    let tinv = t_power(t, -1);
    let mut rho = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut sigma = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let (mut alpha, mut beta, mut pair_idx) = (Vec::new(), Vec::new(), Vec::new());
    for (k, role) in roles.iter().enumerate() {
        let (a, b) = &blocks[k];
        match role {
            BlockRole::Rho => {
                rho.0.push((a.clone(), b.clone()));
                rho.2.push(k);
            }
            BlockRole::Sigma => {
                sigma.0.push((tt.mul_ref(a), tinv.mul_ref(b)));
                sigma.2.push(k);
            }
            BlockRole::Pair => {
                alpha.push(a.clone());
                beta.push(tt.mul_ref(b));
                pair_idx.push(k);
            }
        }
    }
    for (j, c) in diagonal.iter().enumerate() {
        if diag_sigma[j] {
            sigma.1.push(tt.mul_ref(c));
            sigma.3.push(j);
        } else {
            rho.1.push(c.clone());
            rho.3.push(j);
        }
    }

    // coordinates of the rewritten form, as indices into the transformed form
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for &k in rho.2.iter().chain(&sigma.2).chain(&pair_idx) {
        order.push(2 * k);
        order.push(2 * k + 1);
    }
    for &j in rho.3.iter().chain(&sigma.3) {
        order.push(off + j);
    }
    let mut perm = IsometryWitness { matrix: vec![vec![Rf::zero(); n]; n] };
    for (new, &old) in order.iter().enumerate() {
        perm.matrix[old][new] = Rf::one();
    }
    let isometry = transform.then(&perm);

    let rho_q = QuadraticForm::new(rho.0, rho.1);
    let sigma_q = QuadraticForm::new(sigma.0, sigma.1);
    residue_certificate(q.clone(), t, isometry, arf_steps, rho_q, sigma_q, alpha, beta, ctx)
}

fn rescale_block(block: &mut (Rf, Rf), transform: &mut IsometryWitness, k: usize, t: usize, j: i64) {
    if j == 0 {
        return;
    }
    // X ↦ t^j X, Y ↦ t^{-j} Y
    block.0 = block.0.mul_ref(&t_power(t, 2 * j));
    block.1 = block.1.mul_ref(&t_power(t, -2 * j));
    let n = transform.dim();
    let mut step = IsometryWitness::identity(n);
    step.matrix[2 * k][2 * k] = t_power(t, j);
    step.matrix[2 * k + 1][2 * k + 1] = t_power(t, -j);
    *transform = transform.then(&step);
}

fn swap_block(block: &mut (Rf, Rf), transform: &mut IsometryWitness, k: usize) {
    core::mem::swap(&mut block.0, &mut block.1);
    let n = transform.dim();
    let mut step = IsometryWitness::identity(n);
    step.matrix[2 * k][2 * k] = Rf::zero();
    step.matrix[2 * k + 1][2 * k + 1] = Rf::zero();
    step.matrix[2 * k][2 * k + 1] = Rf::one();
    step.matrix[2 * k + 1][2 * k] = Rf::one();
    *transform = transform.then(&step);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{bounded_isotropy_search_in, pfister_products, quadratic_pfister, SearchOutcome};
    use crate::gf2field::VariableSet;

    fn field() -> (VariableSet, impl Fn(&str) -> Rf) {
        let f = VariableSet::new(["x", "y", "z", "t"]).unwrap();
        let g = f.clone();
        (f, move |s: &str| g.parse(s).unwrap())
    }

    const T: usize = 3;

    #[test]
    fn valuations_and_residues() {
        let (_, p) = field();
        assert_eq!(valuation(&p("(x + t)/t"), T), Ok(-1));
        assert_eq!(valuation(&p("x + t*y"), T), Ok(0));
        assert_eq!(residue(&p("x + t*y"), T), Ok(p("x")));
        assert_eq!(residue(&p("(x*t^2 + t^3)/t^2"), T), Ok(p("x")));
        assert_eq!(valuation(&p("0"), T), Err(LaurentError::ZeroElement));
        assert_eq!(residue(&p("t"), T), Err(LaurentError::NonUnit { valuation: 1 }));
        assert_eq!(leading(&p("(y*t + t^2)/(x + t)"), T), Ok((1, p("y/x"))));
    }

    #[test]
    fn residue_forms() {
        let (_, p) = field();
        let q = QuadraticForm::totally_singular(vec![p("1 + t"), p("x"), p("y + t^2*x")]);
        assert_eq!(residue_form(&q, T).unwrap(), QuadraticForm::totally_singular(vec![p("1"), p("x"), p("y")]));
        let q = QuadraticForm::binary(p("1 + t*x"), p("z"));
        assert_eq!(residue_form(&q, T).unwrap(), QuadraticForm::binary(p("1"), p("z")));
        let q = QuadraticForm::binary(p("1"), p("1/t"));
        assert_eq!(residue_form(&q, T), Err(LaurentError::NonUnitCoefficient { index: 1 }));
    }

    #[test]
    fn prop44_examples() {
        let (_, p) = field();
        let empty = QuadraticForm::default();
        let ctx = DecideContext::default();
        let d = prop44_aniso(&empty, &empty, &[p("1"), p("x")], &[p("1"), p("x")], T, &ctx).unwrap();
        let Decision::Anisotropic(AnisotropyProof::Residue(proof)) = d else { panic!("{d:?}") };
        assert!(proof.verify());
        let d = prop44_aniso(&empty, &empty, &[p("1"), p("1")], &[p("1"), p("1")], T, &ctx).unwrap();
        assert!(matches!(d, Decision::Unknown(_)));
        assert_eq!(
            prop44_aniso(&empty, &empty, &[p("1")], &[], T, &ctx),
            Err(LaurentError::LengthMismatch { alpha: 1, beta: 0 })
        );
    }

    #[test]
    fn cor45_examples() {
        let (_, p) = field();
        let ctx = DecideContext::default();
        let slots = pfister_products(&[p("x"), p("y")]);
        let d = cor45_aniso(&slots, &p("1"), T, &ctx).unwrap();
        let Decision::Anisotropic(AnisotropyProof::Residue(proof)) = &d else { panic!("{d:?}") };
        assert!(proof.verify());
        assert_eq!(proof.form, quadratic_pfister(&[p("x"), p("y")], &p("1/t")).unwrap());

        let slots = pfister_products(&[p("z"), p("x"), p("y")]);
        assert!(cor45_aniso(&slots, &p("1"), T, &ctx).unwrap().is_anisotropic());
        assert!(matches!(cor45_aniso(&[p("1"), p("1")], &p("1"), T, &ctx).unwrap(), Decision::Unknown(_)));
    }

    #[test]
    fn generic_decider_uses_arf_shears() {
        let f = VariableSet::new(["y", "s"]).unwrap();
        let p = |s: &str| f.parse(s).unwrap();
        // <<y; y^2 s^-2]] over F_2(y)((s))
        let q = quadratic_pfister(&[p("y")], &p("y^2/s^2")).unwrap();
        let d = decide_over(&q, 1, &DecideContext::default()).unwrap();
        let Decision::Anisotropic(AnisotropyProof::Residue(proof)) = &d else { panic!("{d:?}") };
        assert!(proof.verify());
        assert_eq!(proof.arf_steps.len(), 2);
        assert_eq!(proof.alpha, vec![p("1"), p("y")]);
        assert_eq!(proof.beta, vec![p("y"), p("1")]);
    }

    #[test]
    fn decider_finds_isotropy() {
        let (_, p) = field();
        // an Arf shear by 1/t turns [1, 1/t^2 + 1/t] into [1, 0]
        let q = QuadraticForm::binary(p("1"), p("1/t^2 + 1/t"));
        let d = decide(&q, &DecideContext::default());
        let Decision::Isotropic(w) = d else { panic!("{d:?}") };
        assert!(w.verify(&q));
        let q = QuadraticForm::new(vec![(p("1"), p("x/t"))], vec![p("x"), p("1")]);
        let Decision::Isotropic(w) = decide(&q, &DecideContext::default()) else { panic!() };
        assert!(w.verify(&q));
    }

    #[test]
    fn mixed_residue_forms_recurse() {
        let (_, p) = field();
        // [1, x] ⊥ [y, 1/(t y)]: ρ = [1, x] is decided over F_2(x, y) via another variable
        let q = QuadraticForm::new(vec![(p("1"), p("x/y")), (p("y"), p("1/(t*y)"))], Vec::new());
        let d = decide(&q, &DecideContext::with_candidates(vec![T, 0, 1]));
        let Decision::Anisotropic(proof) = &d else { panic!("{d:?}") };
        assert!(proof.verify(&q));
    }

    #[test]
    fn anisotropic_verdicts_survive_bounded_search() {
        let (_, p) = field();
        let ctx = DecideContext::default();
        let slots = pfister_products(&[p("x"), p("y")]);
        let Decision::Anisotropic(AnisotropyProof::Residue(proof)) = cor45_aniso(&slots, &p("1"), T, &ctx).unwrap()
        else {
            panic!()
        };
        let basis = vec![p("1"), p("x"), p("y"), p("1/t")];
        let bases = vec![basis; proof.form.dim()];
        assert_eq!(bounded_isotropy_search_in(&proof.form, &bases, 16).unwrap(), SearchOutcome::NoneFound);
    }
}
