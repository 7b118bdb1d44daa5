//! Extended binary quadratic residue codes, their Jacobi polynomials,
//! harmonic weight enumerators and t-design checks on codeword shells.

pub mod code;
pub mod designs;
pub mod enumerators;
pub mod error;
pub mod format;
pub mod gf2;
pub mod poly;
pub mod projective;
pub mod reference;
pub mod reproduce;
pub mod study;

pub use code::{EnumOptions, Label, LinearCode};
pub use error::{Error, Result};
