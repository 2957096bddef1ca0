use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::GtPattern;
use crate::error::{Error, Result};

use super::unitary::build_unitary;

/// A point of the orbit together with the coordinates it was built from.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub x: DMatrix<Complex64>,
    pub pattern: GtPattern,
    /// `angles[l − 1]` holds the `l` angles of the torus factor `T_l`.
    pub angles: Vec<Vec<f64>>,
    pub trig: bool,
}

/// Embeds an `l×l` block in the top-left corner of an `n×n` identity.
fn embed(block: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::identity(n, n);
    let l = block.nrows();
    out.view_mut((0, 0), (l, l)).copy_from(block);
    out
}

fn phases(angles: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&DVector::from_iterator(angles.len(), angles.iter().map(|&t| Complex64::from_polar(1.0, t))))
}

/// `X = W D W^*` with `W = t̄_1 v̄_2 t̄_2 v̄_3 ⋯ t̄_{N−1} v̄_N`, `v_m = u(μ^{m−1}, μ^m)`
/// and `D = diag(λ)` (or `diag(e^λ)` when `trig`).
pub fn reconstruct_orbit_point(pattern: &GtPattern, angles: &[Vec<f64>], trig: bool) -> Result<OrbitPoint> {
    let n = pattern.size();
    if angles.len() + 1 != n.max(1) || angles.iter().enumerate().any(|(l, a)| a.len() != l + 1) {
        return Err(Error::InvalidInput("angles[l−1] must hold l angles for l = 1..N−1".into()));
    }
    if !pattern.is_strict() {
        return Err(Error::Interlacing("orbit reconstruction needs strict interlacing".into()));
    }
    let mut w = DMatrix::<Complex64>::identity(n, n);
    for m in 2..=n {
        w *= embed(&phases(&angles[m - 2]), n);
        let v = build_unitary(pattern.level(m - 1), pattern.level(m), trig)?;
        w *= embed(&v.entries.map(|x| Complex64::new(x, 0.0)), n);
    }
    let top: Vec<Complex64> =
        pattern.top().iter().map(|&x| Complex64::new(if trig { x.exp() } else { x }, 0.0)).collect();
    let d = DMatrix::from_diagonal(&DVector::from_vec(top));
    let x = &w * d * w.adjoint();
    Ok(OrbitPoint { x, pattern: pattern.clone(), angles: angles.to_vec(), trig })
}

/// Sorted (descending) eigenvalues of the principal `l×l` block.
pub fn principal_eigenvalues(x: &DMatrix<Complex64>, l: usize) -> Vec<f64> {
    let block = x.view((0, 0), (l, l)).into_owned();
    let mut ev: Vec<f64> = block.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

/// Gelfand-Tsetlin action of `t_l`: conjugation by `U_l t_l U_l^*` where
/// `U_l` diagonalizes the principal block with eigenvalues in descending
/// order.
pub fn torus_act(x: &DMatrix<Complex64>, l: usize, angles: &[f64]) -> Result<DMatrix<Complex64>> {
    if angles.len() != l || l == 0 || l > x.nrows() {
        return Err(Error::InvalidInput(format!("T_{l} needs {l} angles")));
    }
    let block = x.view((0, 0), (l, l)).into_owned();
    let eig = block.symmetric_eigen();
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    // Angle i goes with the i-th largest eigenvalue.
    let mut diag = vec![Complex64::new(1.0, 0.0); l];
    for (rank, &idx) in order.iter().enumerate() {
        diag[idx] = Complex64::from_polar(1.0, angles[rank]);
    }
    let u = &eig.eigenvectors;
    let g = u * DMatrix::from_diagonal(&DVector::from_vec(diag)) * u.adjoint();
    let big = embed(&g, x.nrows());
    Ok(&big * x * big.adjoint())
}

impl OrbitPoint {
    /// Largest deviation between the principal-block spectra and the pattern
    /// (in exponentiated coordinates for the trigonometric flavor).
    pub fn gt_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in 1..=self.pattern.size() {
            let ev = principal_eigenvalues(&self.x, l);
            for (a, &b) in ev.iter().zip(self.pattern.level(l)) {
                let target = if self.trig { b.exp() } else { b };
                worst = worst.max((a - target).abs());
            }
        }
        worst
    }

    pub fn hermitian_residual(&self) -> f64 {
        (&self.x - self.x.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GtSampler;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zero_angles(n: usize) -> Vec<Vec<f64>> {
        (1..n).map(|l| vec![0.0; l]).collect()
    }

    fn random_angles(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        (1..n).map(|l| (0..l).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect()).collect()
    }

    #[test]
    fn two_by_two_corner_entry() {
        let p = GtPattern::new(vec![vec![0.25], vec![1.0, -0.5]]).unwrap();
        let point = reconstruct_orbit_point(&p, &zero_angles(2), false).unwrap();
        assert!((point.x[(0, 0)].re - 0.25).abs() < 1e-14);
    }

    #[test]
    fn spectra_of_principal_blocks_match_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5 {
            let lambda: Vec<f64> = (0..n).map(|i| 1.5 - 0.8 * i as f64).collect();
            let sampler = GtSampler::new(&lambda, 99).unwrap();
            for idx in 0..10 {
                let (pattern, _) = sampler.sample(idx);
                for trig in [false, true] {
                    let point = reconstruct_orbit_point(&pattern, &random_angles(n, &mut rng), trig).unwrap();
                    assert!(point.gt_residual() < 1e-10, "n={n} trig={trig}: {}", point.gt_residual());
                    assert!(point.hermitian_residual() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn torus_action_matches_inserted_angles_and_keeps_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 4;
        let sampler = GtSampler::new(&[2.0, 0.7, -0.1, -1.3], 1).unwrap();
        let (pattern, _) = sampler.sample(0);
        let base = reconstruct_orbit_point(&pattern, &zero_angles(n), false).unwrap();
        for m in 1..n {
            let theta: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..6.0)).collect();
            let acted = torus_act(&base.x, m, &theta).unwrap();
            let mut angles = zero_angles(n);
            angles[m - 1] = theta.clone();
            let direct = reconstruct_orbit_point(&pattern, &angles, false).unwrap();
            let diff = (&acted - &direct.x).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-10, "m={m}: {diff}");
            let moved = OrbitPoint { x: acted, ..base.clone() };
            assert!(moved.gt_residual() < 1e-10);
        }
    }
}
