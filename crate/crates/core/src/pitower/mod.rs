//! Finite purely inseparable extensions `E = F(g_1^{1/2^{e_1}}, ...)` of a
//! rational function field `F`.
//!
//! Two realizations are provided. [`PiAlgebra`] works in the quotient
//! algebra with coordinates over the monomial basis and serves any tower,
//! including nonmodular ones. [`Embedding`] realizes `E` as a rational
//! function field by substituting variables (`z ↦ r^2`), which lets the form
//! deciders run over `E`.

mod algebra;
mod descent;
mod substitution;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::forms::FormError;
use crate::gf2field::{FieldError, RationalFunction, VariableSet};

pub use algebra::{ExtElement, PiAlgebra, Socle};
pub use descent::{find_quadratic_descent, QuadraticDescent};
pub use substitution::{adjoin_roots, simple_filtration, EmbeddedRoot, Embedding, FiltrationStep};

type Rf = RationalFunction;

/// Largest quotient algebra built by [`PiAlgebra`].
pub const MAX_ALGEBRA_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiError {
    /// The radicand of root `root` (1-based) is a square in the field below it.
    DegenerateTower { root: usize },
    /// A radicand refers to itself or a later root.
    BadRadicand { root: usize },
    ZeroRadicand { root: usize },
    TooLarge { degree: usize },
    NotSimple,
    NotExponentOne,
    DivisionByZero,
    DimensionMismatch { expected: usize, found: usize },
    /// No variable of the current field can be solved for the radicand.
    NoSubstitution { root: usize },
    /// The base is already split: the form is isotropic over `F`.
    IsotropicOverBase,
    /// A computed certificate failed its own check.
    WitnessRejected,
    Field(FieldError),
    Form(FormError),
}

impl fmt::Display for PiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiError::DegenerateTower { root } => {
                write!(f, "root {root}: radicand is a square in the field below, the degree collapses")
            }
            PiError::BadRadicand { root } => {
                write!(f, "root {root}: radicand refers to a root not yet adjoined")
            }
            PiError::ZeroRadicand { root } => write!(f, "root {root}: radicand is zero"),
            PiError::TooLarge { degree } => {
                write!(f, "extension degree {degree} exceeds {MAX_ALGEBRA_DEGREE}")
            }
            PiError::NotSimple => write!(f, "extension is not given by a single root"),
            PiError::NotExponentOne => write!(f, "extension does not have exponent 1"),
            PiError::DivisionByZero => write!(f, "division by zero"),
            PiError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            PiError::NoSubstitution { root } => write!(
                f,
                "root {root}: no variable can be solved for the radicand, no rational function field realization"
            ),
            PiError::IsotropicOverBase => write!(f, "form is already isotropic over the base field"),
            PiError::WitnessRejected => write!(f, "computed certificate failed verification"),
            PiError::Field(e) => write!(f, "{e}"),
            PiError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for PiError {}

impl From<FieldError> for PiError {
    fn from(e: FieldError) -> Self {
        PiError::Field(e)
    }
}

impl From<FormError> for PiError {
    fn from(e: FormError) -> Self {
        PiError::Form(e)
    }
}

/// The root `name = radicand^{1/2^log2}`. The radicand is written over the
/// base variables followed by the names of earlier roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSpec {
    pub name: String,
    pub log2: u32,
    pub radicand: Rf,
}

/// A base field and the roots adjoined to it, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    base: VariableSet,
    roots: Vec<RootSpec>,
}

impl TowerSpec {
    pub fn new(base: VariableSet) -> Self {
        Self { base, roots: Vec::new() }
    }

    pub fn base(&self) -> &VariableSet {
        &self.base
    }

    pub fn roots(&self) -> &[RootSpec] {
        &self.roots
    }

    /// Base variables followed by root names; radicands are parsed here.
    pub fn variables(&self) -> VariableSet {
        let mut v = self.base.clone();
        for r in &self.roots {
            v.push(r.name.clone()).expect("names were checked on adjoin");
        }
        v
    }

    pub fn adjoin(&mut self, name: impl Into<String>, log2: u32, radicand: Rf) -> Result<usize, PiError> {
        let name = name.into();
        let k = self.roots.len() + 1;
        if log2 == 0 {
            return Err(PiError::DegenerateTower { root: k });
        }
        if radicand.is_zero() {
            return Err(PiError::ZeroRadicand { root: k });
        }
        let allowed = self.base.len() + self.roots.len();
        if radicand.support() >> allowed != 0 {
            return Err(PiError::BadRadicand { root: k });
        }
        let mut vars = self.variables();
        vars.push(name.clone())?;
        self.roots.push(RootSpec { name, log2, radicand });
        Ok(self.roots.len() - 1)
    }

    /// Parses `text` over the base variables and the roots adjoined so far.
    pub fn parse(&self, text: &str) -> Result<Rf, PiError> {
        Ok(self.variables().parse(text)?)
    }
}
