//! Exact rings: rationals, polynomials in κ, cyclotomic fields, Chebyshev
//! polynomials and fraction-free linear algebra.

pub mod chebyshev;
pub mod cyclo;
pub mod kpoly;
pub mod matrix;
pub mod rational;
pub mod ring;
pub mod xgcd;
pub mod zpoly;

pub use chebyshev::chebyshev_u;
pub use cyclo::{cyclotomic_poly, euler_phi, CycloElem};
pub use kpoly::KPoly;
pub use matrix::{bareiss_det, PolyMatrix};
pub use rational::Rational;
pub use ring::CoeffRing;
pub use xgcd::{kpoly_xgcd, Xgcd};
pub use zpoly::ZPoly;
