//! Rational and trigonometric Dunkl operators and the exact identities
//! built on them.

mod adjoint;
mod operators;
mod rational_fn;
mod resk;
mod zk;

pub use adjoint::{
    adjoint_apply, cm_adjoint_residual, conjugated_apply, default_adjoint_setup, delta, fd_first, fd_second,
    hamiltonian_apply, Bump, PowerSum, Rectangle,
};
pub use operators::{rational_dunkl_apply, trig_dunkl_apply, DunklWord, Flavor};
pub use rational_fn::RationalFunctionPair;
pub use resk::{expanded_vars, random_symmetric, res_k, res_k_check, res_k_sides, SymmetricTag};
pub use zk::{
    z1_kappa, z_bruteforce, z_bruteforce_trig, z_dunkl, z_dunkl_with_order, z_free_weight, z_numerator_bruteforce,
    zk_vars, Z1Kappa,
};
