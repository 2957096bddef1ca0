//! Numerical check of the adjunction relation for the conjugated
//! Calogero-Moser operators `L̄_{p1}` and `L̄_{p2}` in two variables.
//!
//! Operators are applied through their conjugation definitions with
//! fourth-order central differences; integrals use the trapezoid rule on a
//! rectangle containing both supports, which converges faster than any
//! power for smooth compactly supported integrands.

use crate::error::{Error, Result};

use super::operators::Flavor;

const FD_STEP: f64 = 1e-3;

/// A smooth bump `amplitude · (1 + tilt·(x − center)) · exp(−1/(1 − r²))`
/// with `r = |x − center| / radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bump {
    pub center: [f64; 2],
    pub radius: f64,
    pub tilt: [f64; 2],
    pub amplitude: f64,
}

impl Bump {
    pub fn new(center: [f64; 2], radius: f64) -> Self {
        Bump { center, radius, tilt: [0.0, 0.0], amplitude: 1.0 }
    }

    pub fn with_tilt(mut self, tilt: [f64; 2]) -> Self {
        self.tilt = tilt;
        self
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let d = [x[0] - self.center[0], x[1] - self.center[1]];
        let r2 = (d[0] * d[0] + d[1] * d[1]) / (self.radius * self.radius);
        if r2 >= 1.0 {
            return 0.0;
        }
        let linear = 1.0 + self.tilt[0] * d[0] + self.tilt[1] * d[1];
        self.amplitude * linear * (-1.0 / (1.0 - r2)).exp()
    }
}

/// Which Hamiltonian of the family: `p_1 = Σ λ_i` or `p_2 = Σ λ_i²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSum {
    P1,
    P2,
}

impl PowerSum {
    pub fn degree(self) -> i32 {
        match self {
            PowerSum::P1 => 1,
            PowerSum::P2 => 2,
        }
    }
}

/// `Δ(x)` for the rational flavor; `∏_{i<j} 2 sinh((x_i − x_j)/2)` for the
/// trigonometric one, which equals `e^{−(N−1)/2 Σx} Δ(e^x)`.
pub fn delta(flavor: Flavor, x: &[f64]) -> f64 {
    let mut acc = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let d = x[i] - x[j];
            acc *= match flavor {
                Flavor::Rational => d,
                Flavor::Trigonometric => 2.0 * (d / 2.0).sinh(),
            };
        }
    }
    acc
}

fn shifted(x: &[f64], i: usize, by: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[i] += by;
    y
}

/// Fourth-order central first derivative.
pub fn fd_first(h: &dyn Fn(&[f64]) -> f64, x: &[f64], i: usize, step: f64) -> f64 {
    (-h(&shifted(x, i, 2.0 * step)) + 8.0 * h(&shifted(x, i, step)) - 8.0 * h(&shifted(x, i, -step))
        + h(&shifted(x, i, -2.0 * step)))
        / (12.0 * step)
}

/// Fourth-order central second derivative.
pub fn fd_second(h: &dyn Fn(&[f64]) -> f64, x: &[f64], i: usize, step: f64) -> f64 {
    (-h(&shifted(x, i, 2.0 * step)) + 16.0 * h(&shifted(x, i, step)) - 30.0 * h(x) + 16.0 * h(&shifted(x, i, -step))
        - h(&shifted(x, i, -2.0 * step)))
        / (12.0 * step * step)
}

/// The unconjugated Hamiltonian `L_p(k)` applied to `h` at `x`:
/// `Σ ∂_i` for `p_1`, and `Σ ∂_i² + V` for `p_2` with
/// `V = 2k(1−k) Σ (x_i − x_j)^{−2}` or `k(1−k) Σ 1/(2 sinh²((x_i − x_j)/2))`.
pub fn hamiltonian_apply(flavor: Flavor, p: PowerSum, k: f64, h: &dyn Fn(&[f64]) -> f64, x: &[f64], step: f64) -> f64 {
    let n = x.len();
    match p {
        PowerSum::P1 => (0..n).map(|i| fd_first(h, x, i, step)).sum(),
        PowerSum::P2 => {
            let kinetic: f64 = (0..n).map(|i| fd_second(h, x, i, step)).sum();
            let mut potential = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    let d = x[i] - x[j];
                    potential += match flavor {
                        Flavor::Rational => 2.0 * k * (1.0 - k) / (d * d),
                        Flavor::Trigonometric => k * (1.0 - k) / (2.0 * (d / 2.0).sinh().powi(2)),
                    };
                }
            }
            kinetic + potential * h(x)
        }
    }
}

/// `L̄_p(k) g = Δ^{−k} L_p(k) (Δ^k g)`.
pub fn conjugated_apply(flavor: Flavor, p: PowerSum, k: f64, g: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let lifted = |y: &[f64]| delta(flavor, y).powf(k) * g(y);
    hamiltonian_apply(flavor, p, k, &lifted, x, FD_STEP) / delta(flavor, x).powf(k)
}

/// `L̄_p(k)^† f = (−1)^{deg p} Δ^{2k} L̄_p(k) Δ^{−2k} f = (−1)^{deg p} Δ^k L_p(k) (Δ^{−k} f)`.
pub fn adjoint_apply(flavor: Flavor, p: PowerSum, k: f64, f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let lowered = |y: &[f64]| f(y) / delta(flavor, y).powf(k);
    let sign = if p.degree() % 2 == 0 { 1.0 } else { -1.0 };
    sign * delta(flavor, x).powf(k) * hamiltonian_apply(flavor, p, k, &lowered, x, FD_STEP)
}

/// An axis-aligned rectangle `[lo_0, hi_0] × [lo_1, hi_1]` in `x_1 > x_2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rectangle {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Rectangle {
    fn contains_support(&self, b: &Bump) -> bool {
        // Leave room for the finite-difference stencil as well.
        let r = b.radius + 2.0 * FD_STEP;
        (0..2).all(|i| b.center[i] - r > self.lo[i] && b.center[i] + r < self.hi[i])
    }

    fn clear_of_diagonal(&self, b: &Bump) -> bool {
        // Distance from the center to the line x_1 = x_2.
        (b.center[0] - b.center[1]) / std::f64::consts::SQRT_2 > b.radius + 2.0 * FD_STEP
    }
}

/// `|∫_A f · L̄_p g − ∫_A (L̄_p^† f) · g|` by the trapezoid rule with
/// `points` nodes per axis.
pub fn cm_adjoint_residual(
    flavor: Flavor,
    p: PowerSum,
    k: f64,
    f: &Bump,
    g: &Bump,
    rect: &Rectangle,
    points: usize,
) -> Result<f64> {
    for (name, b) in [("f", f), ("g", g)] {
        if !rect.contains_support(b) {
            return Err(Error::InvalidInput(format!("support of {name} reaches the rectangle boundary")));
        }
        if !rect.clear_of_diagonal(b) {
            return Err(Error::Degenerate(format!("support of {name} touches the diagonal x_1 = x_2")));
        }
    }
    if points < 3 {
        return Err(Error::InvalidInput("need at least three quadrature nodes per axis".into()));
    }
    let fe = |x: &[f64]| f.eval(x);
    let ge = |x: &[f64]| g.eval(x);
    let hx = (rect.hi[0] - rect.lo[0]) / (points - 1) as f64;
    let hy = (rect.hi[1] - rect.lo[1]) / (points - 1) as f64;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    // Boundary nodes carry zero integrand, so the interior sum is the rule.
    for a in 1..points - 1 {
        for b in 1..points - 1 {
            let x = [rect.lo[0] + a as f64 * hx, rect.lo[1] + b as f64 * hy];
            let (fv, gv) = (fe(&x), ge(&x));
            if fv != 0.0 {
                lhs += fv * conjugated_apply(flavor, p, k, &ge, &x);
            }
            if gv != 0.0 {
                rhs += adjoint_apply(flavor, p, k, &fe, &x) * gv;
            }
        }
    }
    Ok(((lhs - rhs) * hx * hy).abs())
}

/// The bump pair and rectangle used by the default adjunction check.
pub fn default_adjoint_setup() -> (Bump, Bump, Rectangle) {
    let f = Bump::new([2.0, -0.5], 0.9).with_tilt([0.4, -0.3]);
    let g = Bump::new([2.2, -0.3], 0.8).with_tilt([-0.2, 0.5]);
    let rect = Rectangle { lo: [0.8, -1.6], hi: [3.2, 0.8] };
    (f, g, rect)
}
