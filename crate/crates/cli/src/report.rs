//! Claims, verdicts and certificates, and their canonical JSON form.
//!
//! Every certificate is re-verified when a check is added to a report; a
//! certificate that fails its own check turns the verdict into `error`.

use serde::Serialize;
use serde_json::{json, Value};

use char2forms_core::cayley::{CompositionAlgebra, ZeroDivisors};
use char2forms_core::forms::{
    check_arf_witness, check_isometry_witness, AnisotropyProof, ArfWitness, Decision, IsometryWitness,
    IsotropyWitness, QuadraticForm,
};
use char2forms_core::gf2field::{RationalFunction, VariableSet};
use char2forms_core::laurent::ResidueProof;
use char2forms_core::semilinear::{f2_field_equal_with, two_independent_with, FieldEquality, Independence, Limits};

type Rf = RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvedAnisotropic,
    Isotropic,
    Isometric,
    NotIsometric,
    Division,
    Split,
    Holds,
    Fails,
    Unknown,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvedAnisotropic => "proved-anisotropic",
            Verdict::Isotropic => "isotropic",
            Verdict::Isometric => "isometric",
            Verdict::NotIsometric => "not-isometric",
            Verdict::Division => "division",
            Verdict::Split => "split",
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
            Verdict::Error => "error",
        }
    }
}

/// Names used to print elements of one field.
pub type Names = VariableSet;

#[derive(Clone, Debug)]
pub enum Certificate {
    None,
    Isotropy { names: Names, form: QuadraticForm, witness: IsotropyWitness },
    Anisotropy { names: Names, form: QuadraticForm, proof: AnisotropyProof },
    Independence { names: Names, elements: Vec<Rf>, independence: Independence, limits: Limits },
    FieldEquality { names: Names, left: Vec<Rf>, right: Vec<Rf>, equality: FieldEquality, limits: Limits },
    Isometry { names: Names, source: QuadraticForm, target: QuadraticForm, witness: IsometryWitness },
    Arf { names: Names, u: Rf, u_prime: Rf, witness: ArfWitness },
    /// `lhs = rhs` as elements.
    Equation { names: Names, lhs: Rf, rhs: Rf },
    ZeroDivisors { names: Names, algebra: CompositionAlgebra, pair: ZeroDivisors },
    /// Recomputed values; nothing beyond the computation itself to re-check.
    Facts(Value),
    All(Vec<(String, Certificate)>),
}

impl Certificate {
    pub fn from_decision(names: &Names, form: &QuadraticForm, d: &Decision) -> Certificate {
        match d {
            Decision::Anisotropic(proof) => {
                Certificate::Anisotropy { names: names.clone(), form: form.clone(), proof: proof.clone() }
            }
            Decision::Isotropic(w) => {
                Certificate::Isotropy { names: names.clone(), form: form.clone(), witness: w.clone() }
            }
            Decision::Unknown(reason) => Certificate::Facts(json!({ "reason": reason })),
        }
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> bool {
        match self {
            Certificate::None | Certificate::Facts(_) => true,
            Certificate::Isotropy { form, witness, .. } => witness.verify(form),
            Certificate::Anisotropy { form, proof, .. } => proof.verify(form),
            Certificate::Independence { elements, independence, limits, .. } => match independence {
                Independence::Dependent(cert) => cert.verify(elements),
                Independence::Independent => two_independent_with(elements, limits)
                    .is_ok_and(|r| r.is_independent()),
            },
            Certificate::FieldEquality { left, right, equality, limits, .. } => {
                equality.verify(left, right)
                    && (equality.equal() || f2_field_equal_with(left, right, limits).as_ref() == Ok(equality))
            }
            Certificate::Isometry { source, target, witness, .. } => {
                check_isometry_witness(source, target, witness) == Ok(true)
            }
            Certificate::Arf { u, u_prime, witness, .. } => check_arf_witness(u, u_prime, witness),
            Certificate::Equation { lhs, rhs, .. } => lhs == rhs,
            Certificate::ZeroDivisors { algebra, pair, .. } => pair.verify(algebra),
            Certificate::All(parts) => parts.iter().all(|(_, c)| c.verify()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::None => Value::Null,
            Certificate::Facts(v) => v.clone(),
            Certificate::Isotropy { names, form, witness } => json!({
                "kind": "isotropic-vector",
                "form": form_json(names, form),
                "vector": elems(names, &witness.vector),
                "value": fmt(names, &form.evaluate(&witness.vector).unwrap_or_else(|_| Rf::one())),
            }),
            Certificate::Anisotropy { names, form, proof } => json!({
                "kind": "anisotropy-proof",
                "form": form_json(names, form),
                "proof": proof_json(names, proof),
            }),
            Certificate::Independence { names, elements, independence, .. } => match independence {
                Independence::Independent => json!({
                    "kind": "two-independent",
                    "elements": elems(names, elements),
                }),
                Independence::Dependent(cert) => json!({
                    "kind": "two-dependent",
                    "elements": elems(names, elements),
                    "index": cert.index,
                    "coefficients": span_json(names, cert.witness.coefficients()),
                }),
            },
            Certificate::FieldEquality { names, left, right, equality, .. } => json!({
                "kind": "square-field-comparison",
                "left": elems(names, left),
                "right": elems(names, right),
                "right_in_left": equality.b_in_a.iter()
                    .map(|w| w.as_ref().map(|w| span_json(names, w.coefficients()))).collect::<Vec<_>>(),
                "left_in_right": equality.a_in_b.iter()
                    .map(|w| w.as_ref().map(|w| span_json(names, w.coefficients()))).collect::<Vec<_>>(),
            }),
            Certificate::Isometry { names, source, target, witness } => json!({
                "kind": "isometry",
                "source": form_json(names, source),
                "target": form_json(names, target),
                "matrix": matrix_json(names, &witness.matrix),
            }),
            Certificate::Arf { names, u, u_prime, witness } => json!({
                "kind": "arf-witness",
                "u": fmt(names, u),
                "u_prime": fmt(names, u_prime),
                "w": fmt(names, &witness.w),
            }),
            Certificate::Equation { names, lhs, rhs } => json!({
                "kind": "equation",
                "lhs": fmt(names, lhs),
                "rhs": fmt(names, rhs),
            }),
            Certificate::ZeroDivisors { names, algebra, pair } => json!({
                "kind": "zero-divisors",
                "u": algebra.format(&pair.u, |c| fmt(names, c)),
                "v": algebra.format(&pair.v, |c| fmt(names, c)),
                "product": algebra.multiply(&pair.u, &pair.v)
                    .map(|p| algebra.format(&p, |c| fmt(names, c)))
                    .unwrap_or_default(),
            }),
            Certificate::All(parts) => {
                Value::Array(parts.iter().map(|(k, c)| json!({ "step": k, "certificate": c.to_json() })).collect())
            }
        }
    }
}

pub fn fmt(names: &Names, f: &Rf) -> String {
    names.format(f)
}

pub fn elems(names: &Names, v: &[Rf]) -> Vec<String> {
    v.iter().map(|e| names.format(e)).collect()
}

fn span_json(names: &Names, coeffs: &std::collections::BTreeMap<u32, Rf>) -> Value {
    Value::Array(
        coeffs.iter().map(|(mask, c)| json!({ "subset": mask, "coefficient": names.format(c) })).collect(),
    )
}

pub fn form_json(names: &Names, q: &QuadraticForm) -> Value {
    json!({
        "blocks": q.blocks().iter().map(|(a, b)| [names.format(a), names.format(b)]).collect::<Vec<_>>(),
        "diagonal": elems(names, q.diagonal()),
    })
}

fn matrix_json(names: &Names, m: &[Vec<Rf>]) -> Value {
    Value::Array(m.iter().map(|row| json!(elems(names, row))).collect())
}

fn proof_json(names: &Names, proof: &AnisotropyProof) -> Value {
    match proof {
        AnisotropyProof::IndependentCoefficients { coefficients } => json!({
            "method": proof.method(),
            "coefficients": elems(names, coefficients),
        }),
        AnisotropyProof::Residue(r) => residue_json(names, r),
        AnisotropyProof::Subform { ambient, proof: inner } => json!({
            "method": proof.method(),
            "ambient": form_json(names, ambient),
            "ambient_proof": proof_json(names, inner),
        }),
    }
}

fn residue_json(names: &Names, r: &ResidueProof) -> Value {
    json!({
        "method": "residue-criterion",
        "laurent_variable": names.name(r.t),
        "rewritten": form_json(names, &r.rewritten),
        "isometry": matrix_json(names, &r.isometry.matrix),
        "arf_steps": r.arf_steps.iter()
            .map(|s| json!({ "block": s.block, "lambda": names.format(&s.lambda) })).collect::<Vec<_>>(),
        "rho": form_json(names, &r.rho),
        "sigma": form_json(names, &r.sigma),
        "alpha": elems(names, &r.alpha),
        "beta": elems(names, &r.beta),
        "psi_bar": form_json(names, &r.psi_bar),
        "tau_bar": form_json(names, &r.tau_bar),
        "psi_proof": proof_json(names, &r.psi_proof),
        "tau_proof": proof_json(names, &r.tau_proof),
    })
}

/// One claim with its verdict.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub expected: Verdict,
    pub verdict: Verdict,
    pub method: String,
    /// Which realization of the field served the claim.
    pub realization: Option<String>,
    pub certificate: Certificate,
    pub note: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, expected: Verdict) -> Self {
        Check {
            id: id.into(),
            claim: claim.into(),
            expected,
            verdict: Verdict::Unknown,
            method: String::new(),
            realization: None,
            certificate: Certificate::None,
            note: None,
            elapsed_ms: None,
        }
    }

    pub fn verdict(mut self, verdict: Verdict, method: impl Into<String>, certificate: Certificate) -> Self {
        self.verdict = verdict;
        self.method = method.into();
        self.certificate = certificate;
        self
    }

    pub fn holds_if(self, ok: bool, method: impl Into<String>, certificate: Certificate) -> Self {
        let v = if ok { Verdict::Holds } else { Verdict::Fails };
        self.verdict(v, method, certificate)
    }

    pub fn realization(mut self, r: impl Into<String>) -> Self {
        self.realization = Some(r.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn error(self, e: impl std::fmt::Display) -> Self {
        self.verdict(Verdict::Error, "error", Certificate::None).note(e.to_string())
    }

    pub fn matches(&self) -> bool {
        self.verdict == self.expected
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "claim": self.claim,
            "expected": self.expected,
            "verdict": self.verdict,
            "method": self.method,
            "certificate": self.certificate.to_json(),
            "matches": self.matches(),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(r) = &self.realization {
            obj.insert("realization".into(), json!(r));
        }
        if let Some(n) = &self.note {
            obj.insert("note".into(), json!(n));
        }
        if let Some(ms) = self.elapsed_ms {
            obj.insert("elapsed_ms".into(), json!(ms));
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub seed: u64,
    pub degree_bound: u32,
    pub parameters: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>, seed: u64, degree_bound: u32) -> Self {
        Report { name: name.into(), seed, degree_bound, parameters: Value::Null, checks: Vec::new() }
    }

    /// Adds a check after re-verifying its certificate.
    pub fn push(&mut self, mut check: Check) {
        if !check.certificate.verify() {
            check.note = Some(format!("certificate rejected on re-verification (claimed {})", check.verdict.as_str()));
            check.verdict = Verdict::Error;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn all_match(&self) -> bool {
        self.checks.iter().all(Check::matches)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Checks whose id starts with `prefix`.
    pub fn checks_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
            "parameters": self.parameters,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "all_match": self.all_match(),
        })
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        canonical(&self.to_json())
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = format!("{}\n", self.name);
        for c in &self.checks {
            let mark = if c.matches() { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "  [{mark}] {}: {} -> {} ({})\n",
                c.id,
                c.claim,
                c.verdict.as_str(),
                if c.method.is_empty() { "-" } else { &c.method }
            ));
            if let (false, Some(n)) = (c.matches(), &c.note) {
                out.push_str(&format!("         {n}\n"));
            }
        }
        let total = self.checks.len();
        let ok = self.checks.iter().filter(|c| c.matches()).count();
        out.push_str(&format!("  {ok}/{total} claims match\n"));
        out
    }
}

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
