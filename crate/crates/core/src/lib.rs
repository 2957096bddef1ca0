//! Multivariate Bessel and Heckman-Opdam hypergeometric functions through
//! integrals over Gelfand-Tsetlin polytopes, together with exact checks of
//! the operator identities that connect them to Macdonald polynomials,
//! Dunkl operators and coadjoint-orbit integrals.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact sparse polynomials, partitions, GT patterns.
//! * [`macdonald`]: Macdonald polynomials and difference operators at rational `(q, t)`.
//! * [`dunkl`]: rational and trigonometric Dunkl operators and the `Z_k` identities.
//! * [`orbit`]: the interlacing unitary, orbit reconstruction and Monte Carlo.
//! * [`hypergeo`]: nested Gauss-Legendre evaluators for `φ_k`, `Φ_k`, `B_k`, `F_k`.
//! * [`limits`]: the `q → 1` limit harness.
//! * [`verify`]: the verification suites behind `gt-hypergeo verify`.

pub mod algebra;
pub mod cli;
pub mod dunkl;
pub mod error;
pub mod hypergeo;
pub mod limits;
pub mod macdonald;
pub mod orbit;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Hp, Rational, Scalar};
