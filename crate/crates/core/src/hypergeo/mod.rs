//! Gelfand-Tsetlin integral formulas for `φ_k` and `Φ_k`, the normalized
//! Bessel and Heckman-Opdam functions built from them, and numerical
//! checks of their differential equations and asymptotics.

mod analysis;
mod integrals;
mod quadrature;
mod result;

pub use analysis::{eigen_residual, leading_term_check, normalized_function, rho, DEFAULT_FD_STEP};
pub use integrals::{
    bessel, gt_integral, ho_f, normalizing_constant, phi_k, phi_k_trig, shift_identity_residual, weyl_denominator,
};
pub use quadrature::{gauss_legendre, QuadratureSpec, Rule};
pub use result::EvalResult;
