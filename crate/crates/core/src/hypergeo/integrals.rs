use crate::dunkl::Flavor;
use crate::error::{Error, Result};

use super::quadrature::{QuadratureSpec, Rule};
use super::EvalResult;

fn check_inputs(lambda: &[f64], s: &[f64], k: f64) -> Result<()> {
    if lambda.is_empty() || lambda.len() != s.len() {
        return Err(Error::InvalidInput(format!(
            "λ and s must be nonempty and of equal length (got {} and {})",
            lambda.len(),
            s.len()
        )));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
    }
    if lambda.iter().chain(s).any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite input".into()));
    }
    if !lambda.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::Degenerate(format!("λ must be strictly decreasing: {lambda:?}")));
    }
    Ok(())
}

/// Per-level scratch space, reused across the whole recursion so the inner
/// loops never allocate.
#[derive(Clone, Default)]
struct Level {
    mu: Vec<f64>,
    emu: Vec<f64>,
    idx: Vec<usize>,
    /// `axes[i]` holds `(node, e^node, separable factor)` on `(λ_{i+1}, λ_i)`.
    axes: Vec<Vec<(f64, f64, f64)>>,
}

struct Ctx<'a> {
    flavor: Flavor,
    s: &'a [f64],
    k: f64,
    /// `k − 1` when it is an integer, so that powers use `powi`.
    km1: Option<i32>,
    rule: &'a Rule,
}

impl Ctx<'_> {
    fn pow(&self, x: f64) -> f64 {
        match self.km1 {
            Some(0) => 1.0,
            Some(e) => x.powi(e),
            None => x.powf(self.k - 1.0),
        }
    }

    /// `|Δ(a)|` in the coordinates the kernel lives in.
    fn abs_vandermonde(a: &[f64]) -> f64 {
        let mut p = 1.0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                p *= a[i] - a[j];
            }
        }
        p.abs()
    }
}

/// The integral without its Γ(k) prefactor, via the recursion
/// `I(λ, s) = ∫_{μ≺λ} K(μ, λ) e^{s_N(|λ| − |μ|)} I(μ, s_1..s_{N−1}) dμ`
/// with `K = ∏|a_i − b_j|^{k−1} / (|Δ(a)|^{k−1}|Δ(b)|^{k−1})` in the
/// coordinates `a = μ, b = λ` (rational) or `a = e^μ, b = e^λ`
/// (trigonometric, with the extra weight `e^{−(k−1)|μ|}`).
///
/// `λ_j` enters `K` only through factors depending on a single `μ_i`, so
/// those are tabulated once per axis; only `Δ(μ)` couples the axes.
fn recurse(ctx: &Ctx, lambda: &[f64], elambda: &[f64], levels: &mut [Level]) -> f64 {
    let n = lambda.len();
    if n == 1 {
        return (ctx.s[0] * lambda[0]).exp();
    }
    let trig = ctx.flavor == Flavor::Trigonometric;
    let sn = ctx.s[n - 1];
    let b = if trig { elambda } else { lambda };
    if n == 2 {
        return innermost(ctx, lambda, b);
    }
    let (here, below) = levels.split_first_mut().expect("one scratch level per recursion depth");
    for i in 0..n - 1 {
        let axis = &mut here.axes[i];
        axis.clear();
        for (x, w) in ctx.rule.on(lambda[i + 1], lambda[i]) {
            let ex = if trig { x.exp() } else { 0.0 };
            let a = if trig { ex } else { x };
            let cross: f64 = b.iter().map(|bj| (a - bj).abs()).product();
            let mut factor = w * ctx.pow(cross) * (-sn * x).exp();
            if trig {
                factor *= (-(ctx.k - 1.0) * x).exp();
            }
            axis.push((x, ex, factor));
        }
    }
    let outer = (sn * lambda.iter().sum::<f64>()).exp() / ctx.pow(Ctx::abs_vandermonde(b));
    let m = here.axes[0].len();
    here.idx.clear();
    here.idx.resize(n - 1, 0);
    here.mu.resize(n - 1, 0.0);
    here.emu.resize(n - 1, 0.0);
    let mut total = 0.0;
    'odometer: loop {
        let mut weight = 1.0;
        for i in 0..n - 1 {
            let (x, ex, f) = here.axes[i][here.idx[i]];
            here.mu[i] = x;
            here.emu[i] = ex;
            weight *= f;
        }
        let a = if trig { &here.emu } else { &here.mu };
        let coupling = ctx.pow(Ctx::abs_vandermonde(a));
        total += weight / coupling * recurse(ctx, &here.mu, &here.emu, below);
        for i in 0..n - 1 {
            here.idx[i] += 1;
            if here.idx[i] < m {
                continue 'odometer;
            }
            here.idx[i] = 0;
        }
        break;
    }
    outer * total
}

/// The two-variable step, where the inner integral is the one-variable
/// exponential and all factors fold into a single loop.
fn innermost(ctx: &Ctx, lambda: &[f64], b: &[f64]) -> f64 {
    let trig = ctx.flavor == Flavor::Trigonometric;
    let (s1, s2) = (ctx.s[0], ctx.s[1]);
    let rate = if trig { s1 - s2 - (ctx.k - 1.0) } else { s1 - s2 };
    let mut total = 0.0;
    for (x, w) in ctx.rule.on(lambda[1], lambda[0]) {
        let a = if trig && ctx.km1 != Some(0) { x.exp() } else { x };
        total += w * ctx.pow(((a - b[0]) * (a - b[1])).abs()) * (rate * x).exp();
    }
    (s2 * (lambda[0] + lambda[1])).exp() / ctx.pow((b[0] - b[1]).abs()) * total
}

fn integrate(flavor: Flavor, lambda: &[f64], s: &[f64], k: f64, rule: &Rule) -> f64 {
    let n = lambda.len();
    let km1 = (k.fract() == 0.0 && k < 64.0).then_some(k as i32 - 1);
    let ctx = Ctx { flavor, s, k, km1, rule };
    let elambda: Vec<f64> = lambda.iter().map(|x| x.exp()).collect();
    let mut levels: Vec<Level> =
        (0..n).map(|d| Level { axes: vec![Vec::new(); n.saturating_sub(d + 1)], ..Level::default() }).collect();
    recurse(&ctx, lambda, &elambda, &mut levels)
}

fn count_work(n: usize, per_dim: u64) -> u64 {
    // Level m contributes per_dim^{m−1} nodes for each node above it.
    let mut work = 0u64;
    let mut outer = 1u64;
    for m in (2..=n).rev() {
        outer = outer.saturating_mul(per_dim.saturating_pow(m as u32 - 1));
        work = work.saturating_add(outer);
    }
    work
}

/// The Gelfand-Tsetlin integral `φ_k` (rational) or `Φ_k` (trigonometric),
/// with `est_error` the change from the half-node rule.
pub fn gt_integral(flavor: Flavor, lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    check_inputs(lambda, s, k)?;
    let n = lambda.len();
    let prefactor = libm::tgamma(k).powf(-((n * (n - 1) / 2) as f64));
    let (fine, coarse) = rayon::join(
        || integrate(flavor, lambda, s, k, &spec.rule()) * prefactor,
        || integrate(flavor, lambda, s, k, &spec.halved().rule()) * prefactor,
    );
    if !fine.is_finite() {
        return Err(Error::Numerical(format!("integral overflowed at λ={lambda:?}, s={s:?}")));
    }
    let per_dim = (spec.nodes * spec.panels) as u64;
    Ok(EvalResult { value: fine, est_error: (fine - coarse).abs(), work: count_work(n, per_dim) })
}

pub fn phi_k(lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    gt_integral(Flavor::Rational, lambda, s, k, spec)
}

pub fn phi_k_trig(lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    gt_integral(Flavor::Trigonometric, lambda, s, k, spec)
}

/// `Γ(Nk)⋯Γ(k) / Γ(k)^N`.
pub fn normalizing_constant(n: usize, k: f64) -> f64 {
    let log: f64 = (1..=n).map(|j| libm::lgamma(j as f64 * k) - libm::lgamma(k)).sum();
    log.exp()
}

/// `Δ(λ)` or `Δ^trig(λ) = ∏ 2 sinh((λ_i − λ_j)/2)`.
pub fn weyl_denominator(flavor: Flavor, lambda: &[f64]) -> f64 {
    crate::dunkl::delta(flavor, lambda)
}

fn normalized(flavor: Flavor, lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    let raw = gt_integral(flavor, lambda, s, k, spec)?;
    let c = normalizing_constant(lambda.len(), k) / weyl_denominator(flavor, lambda).powf(k);
    Ok(raw.scaled(c))
}

/// Multivariate Bessel function `B_k(λ, s)`, normalized by `B_k(λ, 0) = 1`.
pub fn bessel(lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    normalized(Flavor::Rational, lambda, s, k, spec)
}

/// Heckman-Opdam hypergeometric function `F_k(λ, s)`.
pub fn ho_f(lambda: &[f64], s: &[f64], k: f64, spec: QuadratureSpec) -> Result<EvalResult> {
    normalized(Flavor::Trigonometric, lambda, s, k, spec)
}

/// Relative defect of the shift identity
/// `e^{c|λ|} I(λ, s) = I(λ, s + c)` for either integral.
pub fn shift_identity_residual(
    flavor: Flavor,
    lambda: &[f64],
    s: &[f64],
    k: f64,
    c: f64,
    spec: QuadratureSpec,
) -> Result<f64> {
    let base = gt_integral(flavor, lambda, s, k, spec)?.value;
    let shifted_s: Vec<f64> = s.iter().map(|x| x + c).collect();
    let shifted = gt_integral(flavor, lambda, &shifted_s, k, spec)?.value;
    let left = (c * lambda.iter().sum::<f64>()).exp() * base;
    Ok((left - shifted).abs() / shifted.abs())
}
