use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[−1, 1]`, by Newton iteration on
/// the three-term recurrence from Chebyshev initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n−1}(x).
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Per-dimension rule for the nested interlacing quadrature: `panels`
/// equal sub-intervals per interlacing interval, each with a `nodes`-point
/// Gauss-Legendre rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { nodes: 24, panels: 1 }
    }
}

impl QuadratureSpec {
    pub fn new(nodes: usize, panels: usize) -> Result<Self> {
        if nodes < 8 {
            return Err(Error::InvalidInput(format!("at least 8 nodes per dimension required, got {nodes}")));
        }
        if panels == 0 {
            return Err(Error::InvalidInput("panels must be positive".into()));
        }
        Ok(QuadratureSpec { nodes, panels })
    }

    /// The coarser rule used for the refinement error estimate.
    pub fn halved(self) -> Self {
        QuadratureSpec { nodes: self.nodes / 2, panels: self.panels }
    }

    pub fn rule(self) -> Rule {
        let (x, w) = gauss_legendre(self.nodes);
        Rule { x, w, panels: self.panels }
    }
}

/// A reference rule ready to be mapped onto intervals.
#[derive(Clone, Debug)]
pub struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
    panels: usize,
}

impl Rule {
    /// Nodes and weights on `[lo, hi]`.
    pub fn on(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = (hi - lo) / self.panels as f64 / 2.0;
        (0..self.panels).flat_map(move |p| {
            let mid = lo + (2 * p + 1) as f64 * half;
            self.x.iter().zip(&self.w).map(move |(x, w)| (mid + half * x, half * w))
        })
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.panels
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in [1, 2, 5, 8, 24, 40] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n={n}");
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_up_to_degree_two_n_minus_one() {
        let n = 12;
        let (x, w) = gauss_legendre(n);
        for d in 0..2 * n {
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
            let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            assert!((approx - exact).abs() < 1e-13, "degree {d}");
        }
        let d = 2 * n;
        let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(d as i32)).sum();
        assert!((approx - 2.0 / (d as f64 + 1.0)).abs() > 1e-10);
    }

    #[test]
    fn panels_cover_the_interval() {
        let rule = QuadratureSpec::new(10, 3).unwrap().rule();
        let pts: Vec<(f64, f64)> = rule.on(-1.0, 2.0).collect();
        assert_eq!(pts.len(), 30);
        let integral: f64 = pts.iter().map(|(x, w)| w * x.exp()).sum();
        assert!((integral - (2f64.exp() - (-1f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn rejects_tiny_rules() {
        assert!(QuadratureSpec::new(4, 1).is_err());
        assert!(QuadratureSpec::new(8, 0).is_err());
    }
}
