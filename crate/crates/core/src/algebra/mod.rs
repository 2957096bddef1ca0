//! Exact arithmetic substrate: sparse Laurent polynomials, symmetric
//! functions, signatures and Gelfand-Tsetlin patterns.

pub mod gt;
pub mod multinomial;
pub mod poly;
pub mod signature;
pub mod symmetric;

pub use gt::{gt_volume, gt_volume_exact, GtPattern, GtSampler, MeanAccumulator};
pub use poly::{var_names, Exponents, SparsePoly};
pub use signature::Signature;
pub use symmetric::{cross_delta, elementary, monomial_symmetric, power_sum, vandermonde};
