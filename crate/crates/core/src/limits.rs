//! Quasi-classical limits: scaled Macdonald values against the
//! Gelfand-Tsetlin integral `Φ_k`, and the index operator `D_λ(q)` against
//! the trigonometric Calogero-Moser operator.

use crate::dunkl::Flavor;
use crate::dunkl::{fd_first, fd_second};
use crate::error::{Error, Result};
use crate::hypergeo::{phi_k_trig, rho, weyl_denominator, QuadratureSpec};
use crate::macdonald::{apply_d_lambda_q, macdonald_poly, macdonald_two_var_closed_pair, qnum_product, MacParams};
use crate::scalar::{Hp, Scalar};

/// Precision of the scaled Macdonald sums, in bits.
pub const LIMIT_PRECISION: usize = 256;

/// Largest `m` for which three-variable values come from the exact
/// eigen-solver.
pub const EXACT_ENGINE_MAX_M: u32 = 8;

/// `q_m = e^{−1/(2m)}` and `λ_m = ⌊mλ⌋`, so that `−2 log(q_m) λ_m → λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitSchedule {
    pub ms: Vec<u32>,
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule { ms: vec![25, 50, 100, 200] }
    }
}

impl LimitSchedule {
    pub fn q(m: u32) -> f64 {
        (-0.5 / m as f64).exp()
    }

    pub fn q_hp(m: u32, precision: usize) -> Hp {
        (Hp::from_i64_prec(-1, precision) / Hp::from_i64_prec(2 * m as i64, precision)).exp()
    }

    pub fn lambda_m(lambda: &[f64], m: u32) -> Vec<i64> {
        lambda.iter().map(|x| (m as f64 * x).floor() as i64).collect()
    }
}

fn check_signature(lambda: &[i64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("λ_m = {lambda:?} is not a signature")));
    }
    Ok(())
}

/// `P_{λ_m}(q_m^{−2s}; q_m², q_m^{2k})` at the given precision. Signatures
/// with negative parts are handled by factoring out a power of `x_1⋯x_N`.
fn macdonald_value(lambda_m: &[i64], s: &[f64], k: u32, m: u32, precision: usize) -> Result<Hp> {
    let n = lambda_m.len();
    check_signature(lambda_m)?;
    let q = LimitSchedule::q_hp(m, precision);
    let t = q.powi(k as i64);
    let x: Vec<Hp> =
        s.iter().map(|si| (Hp::from_f64(*si, precision) / Hp::from_i64_prec(m as i64, precision)).exp()).collect();
    let shift = *lambda_m.last().unwrap_or(&0);
    let det_power = x.iter().fold(Hp::from_i64_prec(1, precision), |p, xi| p * xi.clone()).powi(shift);
    let partition: Vec<i64> = lambda_m.iter().map(|l| l - shift).collect();
    let value = match n {
        1 => x[0].powi(partition[0]),
        2 => macdonald_two_var_closed_pair(partition[0] as usize, 0, &q, &t, &x[0], &x[1]),
        3 if m <= EXACT_ENGINE_MAX_M => {
            let params = MacParams::with_k(q.to_rational(), k as i64)?;
            let parts: Vec<i32> = partition.iter().map(|&p| p as i32).collect();
            macdonald_poly(&parts, &params, 3)?.eval(&x)?
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "scaled Macdonald values need N ≤ 2, or N = 3 with m ≤ {EXACT_ENGINE_MAX_M} (got N = {n}, m = {m})"
            )))
        }
    };
    Ok(value * det_power)
}

/// `(−2 log q_m)^{kN(N−1)/2} P_{λ_m}(q_m^{−2s}; q_m², q_m^{2k})`, which tends
/// to `Φ_k(λ, s)`.
pub fn macdonald_scaled(lambda: &[f64], s: &[f64], k: u32, m: u32, precision: usize) -> Result<f64> {
    check_common(lambda, s, k, m)?;
    let n = lambda.len() as i64;
    let lm = LimitSchedule::lambda_m(lambda, m);
    let value = macdonald_value(&lm, s, k, m, precision)?;
    let eps = Hp::from_i64_prec(1, precision) / Hp::from_i64_prec(m as i64, precision);
    Ok((eps.powi(k as i64 * n * (n - 1) / 2) * value).to_f64())
}

/// `P_{λ_m}(q_m^{−2s}) / ∏_{i<j}[λ_{m,i} − λ_{m,j} + k(j−i) + k − 1]_{q_m,k}`,
/// which tends to `Φ_k(λ, s) / Δ^trig(λ)^k`.
///
/// With `q_m < 1` each q-number `[a]_{q_m}` is positive for `a > 0`, so the
/// normalizer tends to `(−2 log q_m)^{−kN(N−1)/2} Δ^trig(λ)^k` with no sign.
pub fn macdonald_alternate(lambda: &[f64], s: &[f64], k: u32, m: u32, precision: usize) -> Result<f64> {
    check_common(lambda, s, k, m)?;
    let lm = LimitSchedule::lambda_m(lambda, m);
    let value = macdonald_value(&lm, s, k, m, precision)?;
    let q = LimitSchedule::q_hp(m, precision);
    Ok((value / qnum_product(&lm, k as i64, &q)).to_f64())
}

fn check_common(lambda: &[f64], s: &[f64], k: u32, m: u32) -> Result<()> {
    if lambda.is_empty() || lambda.len() != s.len() {
        return Err(Error::InvalidInput("λ and s must be nonempty and of equal length".into()));
    }
    if k == 0 || m == 0 {
        return Err(Error::InvalidInput("k and m must be positive".into()));
    }
    if !lambda.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::Degenerate(format!("λ must be strictly decreasing: {lambda:?}")));
    }
    Ok(())
}

/// One row of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitPoint {
    pub m: u32,
    pub value: f64,
    pub relative_error: f64,
}

/// `macdonald_scaled` along the schedule, each compared with `Φ_k(λ, s)`.
pub fn scaled_convergence(
    lambda: &[f64],
    s: &[f64],
    k: u32,
    schedule: &LimitSchedule,
    spec: QuadratureSpec,
) -> Result<(f64, Vec<LimitPoint>)> {
    let target = phi_k_trig(lambda, s, k as f64, spec)?.value;
    let rows = schedule
        .ms
        .iter()
        .map(|&m| {
            let value = macdonald_scaled(lambda, s, k, m, LIMIT_PRECISION)?;
            Ok(LimitPoint { m, value, relative_error: ((value - target) / target).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, rows))
}

/// Same table for the alternate normalization against `Φ_k / Δ^trig(λ)^k`.
pub fn alternate_convergence(
    lambda: &[f64],
    s: &[f64],
    k: u32,
    schedule: &LimitSchedule,
    spec: QuadratureSpec,
) -> Result<(f64, Vec<LimitPoint>)> {
    let target =
        phi_k_trig(lambda, s, k as f64, spec)?.value / weyl_denominator(Flavor::Trigonometric, lambda).powi(k as i32);
    let rows = schedule
        .ms
        .iter()
        .map(|&m| {
            let value = macdonald_alternate(lambda, s, k, m, LIMIT_PRECISION)?;
            Ok(LimitPoint { m, value, relative_error: ((value - target) / target).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, rows))
}

const OPERATOR_FD_STEP: f64 = 1e-3;

/// `Δf − k Σ_{i<j} (1 + e^{λ_i−λ_j})/(1 − e^{λ_i−λ_j}) (∂_i − ∂_j) f + k²(ρ,ρ) f`
/// by fourth-order central differences.
pub fn limiting_operator_apply(f: &dyn Fn(&[f64]) -> f64, lambda: &[f64], k: f64) -> f64 {
    let n = lambda.len();
    let h = OPERATOR_FD_STEP;
    let grad: Vec<f64> = (0..n).map(|i| fd_first(f, lambda, i, h)).collect();
    let laplacian: f64 = (0..n).map(|i| fd_second(f, lambda, i, h)).sum();
    let mut drift = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let e = (lambda[i] - lambda[j]).exp();
            drift += (1.0 + e) / (1.0 - e) * (grad[i] - grad[j]);
        }
    }
    let rho_sq: f64 = rho(n).iter().map(|r| r * r).sum();
    laplacian - k * drift + k * k * rho_sq * f(lambda)
}

/// `|(−2 log q_m)^{−2} D_{λ_m}(q_m) f_m(λ_m) − L̄^trig_{p2}(k) f(x_m)|`
/// with the index function `f_m(μ) = f(μ/m)`.
///
/// The shifts in `D_λ(q)` span `λ_m .. λ_m + 2`, so the differential side
/// is compared at the stencil center `x_m = (λ_m + 1)/m`. Any point within
/// `O(1/m)` of `λ` is admissible; the center removes the first-order
/// offset of the one-variable case `(T − 1)²`.
pub fn operator_limit_residual(lambda: &[f64], k: u32, m: u32, f: &dyn Fn(&[f64]) -> f64) -> Result<f64> {
    if lambda.is_empty() || k == 0 || m == 0 {
        return Err(Error::InvalidInput("need nonempty λ and positive k, m".into()));
    }
    let lm = LimitSchedule::lambda_m(lambda, m);
    check_signature(&lm)?;
    let scale = 1.0 / m as f64;
    let point: Vec<f64> = lm.iter().map(|&l| (l + 1) as f64 * scale).collect();
    if point.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("λ_m has repeated parts".into()));
    }
    let q = LimitSchedule::q(m);
    let fm = |mu: &[i64]| {
        let x: Vec<f64> = mu.iter().map(|&v| v as f64 * scale).collect();
        f(&x)
    };
    let discrete = apply_d_lambda_q(&lm, &q, k as i64, &fm) * (m as f64).powi(2);
    Ok((discrete - limiting_operator_apply(f, &point, k as f64)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn schedule_recovers_lambda() {
        let lambda = [1.37, -0.52];
        for m in [25, 50, 100, 200, 1000] {
            let lm = LimitSchedule::lambda_m(&lambda, m);
            let back: Vec<f64> = lm.iter().map(|&l| -2.0 * LimitSchedule::q(m).ln() * l as f64).collect();
            assert!((back[0] - lambda[0]).abs() <= 1.0 / m as f64 + 1e-12);
            assert!((back[1] - lambda[1]).abs() <= 1.0 / m as f64 + 1e-12);
        }
    }

    #[test]
    fn one_variable_is_an_exponential() {
        for m in [25, 200] {
            let v = macdonald_scaled(&[0.8], &[1.5], 2, m, LIMIT_PRECISION).unwrap();
            let lm = (0.8 * m as f64).floor() / m as f64;
            assert!((v - (1.5 * lm).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn engine_matches_closed_form_for_two_variables() {
        for m in 1..=6 {
            let lm = [m as i64 + 2, -1];
            let closed = macdonald_value(&lm, &[0.6, -0.4], 2, m, LIMIT_PRECISION).unwrap();
            let q = LimitSchedule::q_hp(m, LIMIT_PRECISION);
            let params = MacParams::with_k(q.to_rational(), 2).unwrap();
            let x: Vec<Hp> = [0.6, -0.4]
                .iter()
                .map(|si| (Hp::from_f64(*si, LIMIT_PRECISION) / Hp::from_i64_prec(m as i64, LIMIT_PRECISION)).exp())
                .collect();
            let engine =
                macdonald_poly(&[m as i32 + 3], &params, 2).unwrap().eval(&x).unwrap() / (x[0].clone() * x[1].clone());
            let diff = ((closed.clone() - engine) / closed).abs().to_f64();
            assert!(diff < 1e-20, "m={m}: {diff}");
        }
    }

    #[test]
    fn two_variable_convergence() {
        let schedule = LimitSchedule::default();
        for k in 1..=2 {
            // The scaled error behaves like C_k/(m(λ_1 − λ_2)) with C_1 ≈ 1
            // and C_2 ≈ 5, hence the wider gap for the endpoint tolerance.
            let (_, rows) = scaled_convergence(&[2.0, 0.0], &[0.6, -0.4], k, &schedule, spec()).unwrap();
            assert!(rows.windows(2).all(|w| w[1].relative_error < w[0].relative_error), "k={k}: {rows:?}");
            assert!(rows.last().unwrap().relative_error < 0.02, "k={k}: {rows:?}");
            let (_, narrow) = scaled_convergence(&[1.0, 0.0], &[0.6, -0.4], k, &schedule, spec()).unwrap();
            assert!(narrow.windows(2).all(|w| w[1].relative_error < w[0].relative_error), "k={k}: {narrow:?}");
            // At k = 1 the alternate normalization is exact for every m
            // (a discrete Harish-Chandra formula), so only rounding remains.
            let (_, alt) = alternate_convergence(&[1.0, 0.0], &[0.6, -0.4], k, &schedule, spec()).unwrap();
            assert!(
                alt.windows(2).all(|w| w[1].relative_error < w[0].relative_error || w[1].relative_error < 1e-13),
                "k={k}: {alt:?}"
            );
            assert!(alt.last().unwrap().relative_error < 0.02, "k={k}: {alt:?}");
        }
    }

    #[test]
    fn three_variables_through_the_exact_engine() {
        let v = macdonald_scaled(&[1.0, 0.5, 0.0], &[0.3, 0.0, -0.2], 1, 4, LIMIT_PRECISION).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(matches!(
            macdonald_scaled(&[1.0, 0.5, 0.0], &[0.3, 0.0, -0.2], 1, 25, LIMIT_PRECISION),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn constant_function_limit() {
        for (n, k) in [(2usize, 1u32), (3, 2)] {
            let lambda: Vec<f64> = (0..n).map(|i| 1.0 - 0.7 * i as f64).collect();
            let residuals: Vec<f64> =
                [50, 100, 200].iter().map(|&m| operator_limit_residual(&lambda, k, m, &|_| 1.0).unwrap()).collect();
            assert!(residuals.windows(2).all(|w| w[1] < w[0]), "{residuals:?}");
        }
    }

    #[test]
    fn exponential_test_function_converges() {
        let f = |x: &[f64]| (0.8 * x[0] - 0.3 * x[1]).exp();
        let r50 = operator_limit_residual(&[1.0, 0.0], 1, 50, &f).unwrap();
        let r200 = operator_limit_residual(&[1.0, 0.0], 1, 200, &f).unwrap();
        assert!(r200 < r50, "{r50} then {r200}");
        let g = |x: &[f64]| (1.1 * x[0]).exp();
        assert!(operator_limit_residual(&[0.7], 1, 200, &g).unwrap() < 1e-4);
    }
}
