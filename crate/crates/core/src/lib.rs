//! Exact computation with quadratic forms over characteristic-2 rational
//! function fields, their purely inseparable extensions, and composition
//! algebras.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cayley;
pub mod forms;
pub mod gf2field;
pub mod laurent;
pub mod linalg;
pub mod pitower;
pub mod semilinear;
