use crate::dunkl::{delta, hamiltonian_apply, Flavor, PowerSum};
use crate::error::{Error, Result};

use super::integrals::{bessel, ho_f, normalizing_constant};
use super::quadrature::QuadratureSpec;

pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// `B_k` or `F_k` at `λ`, by flavor.
pub fn normalized_function(flavor: Flavor, lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<f64> {
    let r = match flavor {
        Flavor::Rational => bessel(lambda, s, k, spec)?,
        Flavor::Trigonometric => ho_f(lambda, s, k, spec)?,
    };
    Ok(r.value)
}

/// Relative residual `|L̄_{p2}(k) f − p_2(s) f| / |f|` of the quadratic
/// Calogero-Moser eigenvalue equation for `f = B_k` (rational) or
/// `f = F_k` (trigonometric), with `L̄ = Δ^{−k} L Δ^k` applied by
/// fourth-order central differences of step `h`.
pub fn eigen_residual(flavor: Flavor, lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidInput("finite-difference step must be positive".into()));
    }
    let gap = lambda.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    if gap <= 4.0 * h {
        return Err(Error::InvalidInput(format!("stencil of step {h} crosses a wall (gap {gap})")));
    }
    // Quadrature failures inside the stencil surface as NaN and then as an
    // error below.
    let f = |x: &[f64]| normalized_function(flavor, x, s, k, spec).unwrap_or(f64::NAN);
    let center = f(lambda);
    let lifted = |x: &[f64]| delta(flavor, x).powf(k) * f(x);
    let applied = hamiltonian_apply(flavor, PowerSum::P2, k, &lifted, lambda, h) / delta(flavor, lambda).powf(k);
    let eigenvalue: f64 = s.iter().map(|x| x * x).sum();
    let residual = (applied - eigenvalue * center).abs() / center.abs();
    if residual.is_nan() {
        return Err(Error::Numerical("eigen residual evaluated to NaN".into()));
    }
    Ok(residual)
}

/// `ρ_i = (N + 1)/2 − i`.
pub fn rho(n: usize) -> Vec<f64> {
    (1..=n).map(|i| (n as f64 + 1.0) / 2.0 - i as f64).collect()
}

/// Relative deviation of `F_k(cλ°, s) e^{−(cλ°, s − kρ)}` from its limit
/// `Γ(Nk)⋯Γ(k)/Γ(k)^N ∏_{i<j} ∏_{a=0}^{k−1} (s_i − s_j + a)^{−1}` along the
/// ray through `direction = λ°` (integer `k`).
///
/// The integrand grows like `e^{c(s_i − s_j)}` across each box, so the
/// number of Gauss-Legendre panels is raised with `c` to keep the
/// quadrature error below the deviation being measured.
pub fn leading_term_check(direction: &[f64], s: &[f64], k: u32, c: f64, spec: QuadratureSpec) -> Result<f64> {
    let n = direction.len();
    if s.len() != n {
        return Err(Error::InvalidInput("direction and s must have equal length".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be a positive integer".into()));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let lambda: Vec<f64> = direction.iter().map(|d| c * d).collect();
    let spread = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - s.iter().cloned().fold(f64::INFINITY, f64::min);
    let width = direction[0] - direction[n - 1];
    let panels = spec.panels.max((c * width * (spread + k as f64) / 12.0).ceil() as usize);
    let spec = QuadratureSpec { panels, ..spec };
    let value = ho_f(&lambda, s, k as f64, spec)?.value;
    let r = rho(n);
    let exponent: f64 = (0..n).map(|i| lambda[i] * (s[i] - k as f64 * r[i])).sum();
    let mut target = normalizing_constant(n, k as f64);
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..k {
                target /= s[i] - s[j] + a as f64;
            }
        }
    }
    Ok((value * (-exponent).exp() / target - 1.0).abs())
}
