//! Conformally invariant operators with leading term `Delta^m` on
//! pseudo-Riemannian products of spheres `S^p x S^q`, built and checked in
//! exact rational arithmetic.
//!
//! - [`exact`]: rationals and sparse multivariate polynomials
//! - [`operators`]: `A_{2m}`, `G_{2m}`, the Yamabe and Paneitz operators, and
//!   the polynomial identities among them
//! - [`spectrum`]: eigenvalues and multiplicities on `S^p x S^q`
//! - [`intertwinor`]: torus modes, the Lie algebra action, and the
//!   intertwining relation for `p = q = 1`
//! - [`report`]: structured verification results

pub mod error;
pub mod exact;
pub mod intertwinor;
pub mod operators;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
pub use report::{Status, VerificationReport};
