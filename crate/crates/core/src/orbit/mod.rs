//! Orbit-side objects in Gelfand-Tsetlin coordinates: the interlacing
//! unitary, reconstruction of orbit points, zero-weight matrix elements and
//! Monte Carlo estimators for the orbit integrals.

mod harish;
mod matrix_element;
mod mc;
mod point;
mod unitary;

pub use harish::harish_chandra_rhs;
pub use matrix_element::{symmetric_power_coefficient, w_m_coefficient, w_m_dunkl_side};
pub use mc::orbit_mc;
pub use point::{principal_eigenvalues, reconstruct_orbit_point, torus_act, OrbitPoint};
pub use unitary::{build_unitary, random_interlacing, InterlacingUnitary};
