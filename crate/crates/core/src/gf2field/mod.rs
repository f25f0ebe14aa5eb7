//! Exact arithmetic in rational function fields `F_2(x_1, ..., x_k)`.
//!
//! The variables form a 2-basis of the field, so every element has unique
//! coordinates over `F^2` in the square-free monomials; see
//! [`square_decompose`].

mod gcd;
mod modgcd;
mod monomial;
mod poly;
mod rational;
mod square;
mod vars;

use alloc::string::String;
use core::fmt;

pub use gcd::{gcd, lcm};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;
pub use rational::RationalFunction;
pub use square::{sqrt, square_decompose, SquareDecomposition};
pub use vars::VariableSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    ZeroDenominator,
    DivisionByZero,
    /// Carries the parity mask of a nonzero non-square component.
    NotASquare { component: u32 },
    ExponentTooLarge,
    SubstitutionKillsDenominator,
    DuplicateVariable(String),
    UnknownVariable(String),
    TooManyVariables(usize),
    Parse { position: usize, message: String },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::ZeroDenominator => write!(f, "zero denominator"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::NotASquare { component } => {
                write!(f, "not a square (nonzero component with parity mask {component:#b})")
            }
            FieldError::ExponentTooLarge => write!(f, "exponent too large"),
            FieldError::SubstitutionKillsDenominator => {
                write!(f, "substitution maps a denominator to zero")
            }
            FieldError::DuplicateVariable(n) => write!(f, "duplicate variable `{n}`"),
            FieldError::UnknownVariable(n) => write!(f, "unknown variable `{n}`"),
            FieldError::TooManyVariables(n) => {
                write!(f, "{n} variables exceed the limit of {MAX_VARS}")
            }
            FieldError::Parse { position, message } => {
                write!(f, "parse error at offset {position}: {message}")
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// `rf_normalize`: the reduced fraction `num/den`.
pub fn normalize(num: Polynomial, den: Polynomial) -> Result<RationalFunction, FieldError> {
    RationalFunction::new(num, den)
}
