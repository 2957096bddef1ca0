use crate::error::Result;
use crate::scalar::{Rational, Scalar};

use super::poly::MacdonaldPoly;
use super::qnum::qnum_product;
use super::{macdonald_poly, spectral_point, MacParams};

/// Both sides of the symmetry identity at `t = q^k`:
/// `P_λ(q^{2μ+2kρ}) ∏[μ…]_{q,k}` and `P_μ(q^{2λ+2kρ}) ∏[λ…]_{q,k}`.
///
/// Callers that sweep many pairs should pass precomputed polynomials via
/// [`symmetry_sides_with`] to avoid re-solving for `P_λ`.
pub fn symmetry_sides(lambda: &[i32], mu: &[i32], q: &Rational, k: i64, n: usize) -> Result<(Rational, Rational)> {
    let params = MacParams::with_k(q.clone(), k)?;
    let p_lambda = macdonald_poly(lambda, &params, n)?;
    let p_mu = macdonald_poly(mu, &params, n)?;
    symmetry_sides_with(&p_lambda, &p_mu, k)
}

pub fn symmetry_sides_with(p_lambda: &MacdonaldPoly, p_mu: &MacdonaldPoly, k: i64) -> Result<(Rational, Rational)> {
    let q = &p_lambda.params.q;
    let t = &p_lambda.params.t;
    let lam: Vec<i64> = p_lambda.lambda.iter().map(|&v| v as i64).collect();
    let mu: Vec<i64> = p_mu.lambda.iter().map(|&v| v as i64).collect();
    let left = p_lambda.eval(&spectral_point(&mu, q, t))?.mul_ref(&qnum_product(&mu, k, q));
    let right = p_mu.eval(&spectral_point(&lam, q, t))?.mul_ref(&qnum_product(&lam, k, q));
    Ok((left, right))
}

/// True iff the symmetry identity holds exactly for `(λ, μ)`.
pub fn symmetry_identity_check(lambda: &[i32], mu: &[i32], q: &Rational, k: i64, n: usize) -> bool {
    matches!(symmetry_sides(lambda, mu, q, k, n), Ok((a, b)) if a == b)
}
