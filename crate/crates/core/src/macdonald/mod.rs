//! Macdonald polynomials and difference operators at concrete rational
//! `(q, t)`.
//!
//! Conventions follow the operator normalization
//! `D^r = t^{r(r−N)} Σ_{|I|=r} ∏_{i∈I, j∉I} (t²x_i − x_j)/(x_i − x_j) T_{q²,I}`,
//! whose eigenvalue on `P_λ(x; q², t²)` is `e_r(q^{2λ} t^{2ρ})`. Every API
//! here takes the pair `(q, t)`; the Macdonald parameters proper are their
//! squares.

mod closed;
mod denominator;
mod index;
mod operators;
mod poly;
mod qnum;
mod symmetry;

pub use closed::{macdonald_two_var_closed, macdonald_two_var_closed_pair};
pub use denominator::{ek_denominator, ek_denominator_f64};
pub use index::{apply_d_lambda_q, apply_dr_index, conjugated_dr_check, conjugated_dr_coefficient};
pub use operators::{apply_dr, eigenvalue};
pub use poly::{macdonald_poly, MacdonaldPoly};
pub use qnum::{qnum, qnum_falling, qnum_product};
pub use symmetry::{symmetry_identity_check, symmetry_sides, symmetry_sides_with};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use num_traits::{One, Signed};

/// The pair `(q, t)` of the operators `D^r(q², t²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MacParams {
    pub q: Rational,
    pub t: Rational,
}

impl MacParams {
    pub fn new(q: Rational, t: Rational) -> Result<Self> {
        if q.is_zero() || t.is_zero() {
            return Err(Error::InvalidInput("q and t must be nonzero".into()));
        }
        if q.abs().is_one() {
            return Err(Error::InvalidInput("q = ±1 makes the eigenvalues collide".into()));
        }
        Ok(MacParams { q, t })
    }

    /// The Jack-type specialization `t = q^k`.
    pub fn with_k(q: Rational, k: i64) -> Result<Self> {
        let t = Scalar::powi(&q, k);
        Self::new(q, t)
    }
}

/// `q^{2λ_i} t^{N+1−2i}`, i.e. `q^{2λ} t^{2ρ}` with integral exponents.
pub fn spectral_point<T: Scalar>(lambda: &[i64], q: &T, t: &T) -> Vec<T> {
    let n = lambda.len() as i64;
    lambda.iter().enumerate().map(|(i, &l)| q.powi(2 * l).mul_ref(&t.powi(n + 1 - 2 * (i as i64 + 1)))).collect()
}
