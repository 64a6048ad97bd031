//! Trivariate polynomials and the reductions Φ, Φ_x.

mod canon;
pub mod formulas;
mod parse;
mod phi;
mod tripoly;

pub use canon::{c_coeff, canonical_form, in_lambda_hathat};
pub use parse::parse_tripoly;
pub use phi::{cache_build, cache_build_until, fmt_upoly, phi, phi_x, PhiTable, PhiXResult, Reducer, UPoly};
pub use tripoly::{Exp, TriPoly};
