use nalgebra::DMatrix;
use rand::Rng;

use crate::algebra::gt::strictly_interlaces;
use crate::error::{Error, Result};

/// The real orthogonal matrix `u(μ, λ)` whose conjugate of `diag(λ)` has
/// principal `(N−1)×(N−1)` block `diag(μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterlacingUnitary {
    pub entries: DMatrix<f64>,
    pub mu: Vec<f64>,
    pub lambda: Vec<f64>,
    pub trig: bool,
}

/// Builds `u(μ, λ)` from the explicit square-root formulas
///
/// `u_{Nj} = sqrt(∏_l (μ_l − λ_j) / ∏_{l≠j} (λ_l − λ_j))`,
/// `u_{ij} = u_{Nj} / (λ_j − μ_i) · sqrt(−∏_l (λ_l − μ_i) / ∏_{l≠i} (μ_l − μ_i))`.
///
/// With `trig` set the same formulas are applied to `(e^μ, e^λ)`.
pub fn build_unitary(mu: &[f64], lambda: &[f64], trig: bool) -> Result<InterlacingUnitary> {
    let n = lambda.len();
    if n == 0 || mu.len() + 1 != n {
        return Err(Error::InvalidInput(format!("need len(μ) = len(λ) − 1, got {} and {n}", mu.len())));
    }
    if !strictly_interlaces(mu, lambda) {
        return Err(Error::Interlacing(format!("{mu:?} does not strictly interlace {lambda:?}")));
    }
    let (m, l): (Vec<f64>, Vec<f64>) = if trig {
        (mu.iter().map(|x| x.exp()).collect(), lambda.iter().map(|x| x.exp()).collect())
    } else {
        (mu.to_vec(), lambda.to_vec())
    };
    if l.windows(2).any(|w| w[0] <= w[1]) || (0..mu.len()).any(|i| m[i] >= l[i] || m[i] <= l[i + 1]) {
        return Err(Error::EigenvalueCollision("exponentiated coordinates are not strictly interlacing".into()));
    }
    let mut u = DMatrix::zeros(n, n);
    for j in 0..n {
        let num: f64 = m.iter().map(|ml| ml - l[j]).product();
        let den: f64 = (0..n).filter(|&q| q != j).map(|q| l[q] - l[j]).product();
        // Interlacing makes the ratio nonnegative; clamp rounding noise.
        u[(n - 1, j)] = (num / den).max(0.0).sqrt();
    }
    for i in 0..n - 1 {
        let num: f64 = l.iter().map(|lq| lq - m[i]).product();
        let den: f64 = (0..n - 1).filter(|&q| q != i).map(|q| m[q] - m[i]).product();
        let row_scale = (-num / den).max(0.0).sqrt();
        for j in 0..n {
            u[(i, j)] = u[(n - 1, j)] * row_scale / (l[j] - m[i]);
        }
    }
    Ok(InterlacingUnitary { entries: u, mu: mu.to_vec(), lambda: lambda.to_vec(), trig })
}

impl InterlacingUnitary {
    pub fn size(&self) -> usize {
        self.lambda.len()
    }

    fn diagonal_values(&self, v: &[f64]) -> Vec<f64> {
        if self.trig {
            v.iter().map(|x| x.exp()).collect()
        } else {
            v.to_vec()
        }
    }

    /// `‖u uᵀ − I‖_∞` (maximum absolute row sum).
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.size();
        let g = &self.entries * self.entries.transpose() - DMatrix::<f64>::identity(n, n);
        g.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// `‖u D uᵀ‖` off-diagonal and diagonal-defect maxima on the principal
    /// block, with `D = diag(λ)` (or `diag(e^λ)`).
    pub fn submatrix_residuals(&self) -> (f64, f64) {
        let n = self.size();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.diagonal_values(&self.lambda)));
        let x = &self.entries * d * self.entries.transpose();
        let target = self.diagonal_values(&self.mu);
        let mut off: f64 = 0.0;
        let mut diag: f64 = 0.0;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                if i == j {
                    diag = diag.max((x[(i, i)] - target[i]).abs());
                } else {
                    off = off.max(x[(i, j)].abs());
                }
            }
        }
        (off, diag)
    }

    /// `1 − Σ_i u_{ij}²` over columns: the column-normalization identity.
    pub fn column_defect(&self) -> f64 {
        let n = self.size();
        (0..n).map(|j| (1.0 - (0..n).map(|i| self.entries[(i, j)].powi(2)).sum::<f64>()).abs()).fold(0.0, f64::max)
    }
}

/// A strictly interlacing pair with `λ` drawn uniformly from `[−scale, scale]`
/// and `μ` uniformly from its interlacing boxes.
pub fn random_interlacing<R: Rng>(n: usize, scale: f64, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    loop {
        let mut lambda: Vec<f64> = (0..n).map(|_| rng.random_range(-scale..scale)).collect();
        lambda.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mu: Vec<f64> = (0..n - 1).map(|i| rng.random_range(lambda[i + 1]..lambda[i])).collect();
        if strictly_interlaces(&mu, &lambda) && lambda.windows(2).all(|w| w[0] > w[1]) {
            return (mu, lambda);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two_example() {
        let u = build_unitary(&[0.5], &[1.0, 0.0], false).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = DMatrix::from_row_slice(2, 2, &[h, -h, h, h]);
        assert!((u.entries - expected).abs().max() < 1e-15);
    }

    #[test]
    fn invariants_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            for trig in [false, true] {
                for _ in 0..50 {
                    let (mu, lambda) = random_interlacing(n, 3.0, &mut rng);
                    let u = build_unitary(&mu, &lambda, trig).unwrap();
                    assert!(u.unitarity_residual() < 1e-12, "n={n}");
                    let (off, diag) = u.submatrix_residuals();
                    assert!(off < 1e-11 && diag < 1e-11, "n={n} trig={trig}: {off} {diag}");
                    assert!(u.column_defect() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_non_strict_interlacing() {
        assert!(matches!(build_unitary(&[1.0], &[1.0, 0.0], false), Err(Error::Interlacing(_))));
        assert!(build_unitary(&[2.0], &[1.0, 0.0], false).is_err());
        assert!(build_unitary(&[0.5, 0.2], &[1.0, 0.0], false).is_err());
    }
}
