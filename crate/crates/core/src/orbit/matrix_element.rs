use nalgebra::DMatrix;

use crate::algebra::multinomial::coefficient_of_product;
use crate::algebra::{var_names, SparsePoly};
use crate::dunkl::rational_dunkl_apply;
use crate::error::{Error, Result};
use crate::scalar::{Hp, Scalar};

const DUNKL_SIDE_PRECISION: usize = 256;

use super::unitary::InterlacingUnitary;

/// Coefficient of `(x_1⋯x_n)^{k−1}` in the image of the same monomial under
/// the substitution `x_i ↦ Σ_j v_{ji} x_j`, for an `n×n` matrix `v`.
///
/// This is the zero-weight matrix element of `v` on `Sym^{(k−1)n}`.
pub fn symmetric_power_coefficient<T: Scalar>(v: &[Vec<T>], k: u32) -> T {
    let n = v.len();
    if k <= 1 || n == 0 {
        return T::one();
    }
    // forms[i][j] = v_{ji}: the i-th substituted linear form.
    let forms: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| v[j][i].clone()).collect()).collect();
    let power = vec![k - 1; n];
    coefficient_of_product(&forms, &power, &power)
}

/// `W_m` for a unitary of size `m + 1`.
pub fn w_m_coefficient(v: &InterlacingUnitary, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be a positive integer".into()));
    }
    Ok(symmetric_power_coefficient(&rows(&v.entries), k))
}

pub(crate) fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// The same matrix element computed through Dunkl operators:
///
/// `(−1)^{(k−1)(N+2)(N−1)/2} (k−1)!^{−(N−1)} Δ(μ)^{1−k} Δ(λ)^{1−k}
///  [(D_{N−1}⋯D_1)(1−k)]^{k−1} Δ(μ, λ)^{k−1}`
///
/// with `Δ(μ, λ) = ∏_{i,j}(μ_i − λ_j)`, evaluated at `μ`. With `trig` set
/// both sides live in the exponential coordinates, so the same rational
/// formula is evaluated at `(e^μ, e^λ)`.
pub fn w_m_dunkl_side(mu: &[f64], lambda: &[f64], k: u32, trig: bool) -> Result<f64> {
    let n = lambda.len();
    if mu.len() + 1 != n {
        return Err(Error::InvalidInput("need len(μ) = len(λ) − 1".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be a positive integer".into()));
    }
    // The Dunkl side divides by Vandermonde factors after heavy
    // cancellation, so it runs in extended precision.
    let hp = |x: &f64| Hp::from_f64(if trig { x.exp() } else { *x }, DUNKL_SIDE_PRECISION);
    let m: Vec<Hp> = mu.iter().map(hp).collect();
    let l: Vec<Hp> = lambda.iter().map(hp).collect();
    let vars = var_names("m", n - 1);
    let active: Vec<usize> = (0..n - 1).collect();
    let mut cross = SparsePoly::<Hp>::one(&vars);
    for i in 0..n - 1 {
        for lj in &l {
            let lin = SparsePoly::var(&vars, i)? - SparsePoly::constant(&vars, lj.clone());
            cross = &cross * &lin;
        }
    }
    let mut g = cross.pow(k - 1);
    let c = Hp::from_i64_prec(1 - k as i64, DUNKL_SIDE_PRECISION);
    for _ in 0..k - 1 {
        for &i in &active {
            g = rational_dunkl_apply(i, &c, &g, &active)?;
        }
    }
    let value = g.eval(&m)?;
    let vandermonde = |x: &[Hp]| {
        let mut p = Hp::from_i64_prec(1, DUNKL_SIDE_PRECISION);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                p = p * (x[i].clone() - x[j].clone());
            }
        }
        p
    };
    let fact = Hp::from_i64_prec((1..k as i64).product(), DUNKL_SIDE_PRECISION);
    let exponent = (k as usize - 1) * (n + 2) * (n - 1) / 2;
    let sign = if exponent % 2 == 0 { 1 } else { -1 };
    let denom = fact.powi(n as i64 - 1) * (vandermonde(&m) * vandermonde(&l)).powi(k as i64 - 1);
    Ok((value * Hp::from_i64_prec(sign, DUNKL_SIDE_PRECISION) / denom).to_f64())
}
