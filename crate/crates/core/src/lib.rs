//! Exact arithmetic, reduction calculus and orbit machinery for Markoff triples
//! `x² + y² + z² = xyz + κ`.

pub mod certify;
pub mod error;
pub mod exact_rings;
pub mod ffield;
pub mod markoff;
pub mod nielsen;
pub mod spectral;
pub mod trired;

pub use error::{Error, Result};
