//! Exact analysis of algebraic annuli `t -> (phi(t), psi(t))`, where `phi`
//! and `psi` are Laurent polynomials over Q or a quadratic field.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod catalog;
pub mod certify;
pub mod curve;
pub mod error;
pub mod laurent;
pub mod local;
pub mod poly;
pub mod quotient;
pub mod scalar;
pub mod series;

pub use error::{AlgebraError, CatalogError, CurveError, Error, LocalError, OracleError};
pub use laurent::LaurentPoly;
pub use poly::{resultant, DynField, Domain, KPoly, Ring, UPoly};
pub use quotient::{quotient_gcd, split_run, QElem, Split};
pub use scalar::Scalar;
