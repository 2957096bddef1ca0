use rayon::prelude::*;

use crate::algebra::{GtSampler, MeanAccumulator};
use crate::error::{Error, Result};
use crate::hypergeo::EvalResult;

use super::matrix_element::w_m_coefficient;
use super::unitary::build_unitary;

/// Monte Carlo estimate of `∫_{GT_λ} ∏_m W_m e^{Σ_l s_l(|μ^l| − |μ^{l−1}|)} dμ`,
/// which is `ψ_k(λ, s)` (or `Ψ_k(λ, s)` with `trig`).
///
/// Samples are drawn by the box-chain sampler and mapped in parallel, then
/// accumulated in index order so the estimate depends only on
/// `(seed, samples)`.
pub fn orbit_mc(lambda: &[f64], s: &[f64], k: u32, trig: bool, samples: u64, seed: u64) -> Result<EvalResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be a positive integer".into()));
    }
    if s.len() != lambda.len() {
        return Err(Error::InvalidInput("λ and s must have the same length".into()));
    }
    if samples < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    let sampler = GtSampler::new(lambda, seed)?;
    let n = lambda.len();
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|idx| -> Result<f64> {
            let (pattern, weight) = sampler.sample(idx);
            let mut w = 1.0;
            if k > 1 {
                for m in 1..n {
                    let v = build_unitary(pattern.level(m), pattern.level(m + 1), trig)?;
                    w *= w_m_coefficient(&v, k)?;
                }
            }
            Ok(weight * w * pattern.weight_exponent(s).exp())
        })
        .collect::<Result<_>>()?;
    let mut acc = MeanAccumulator::default();
    for v in values {
        acc.push(v);
    }
    Ok(EvalResult { value: acc.mean(), est_error: acc.std_error(), work: samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::harish_chandra_rhs;

    #[test]
    fn deterministic_across_thread_counts() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| orbit_mc(&[1.0, 0.2, -0.6], &[0.5, 0.0, -0.4], 2, false, 2000, 9).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn k_one_is_harish_chandra() {
        let lambda = [2.0, 1.0, 0.0];
        let s = [1.0, 0.0, -1.0];
        let est = orbit_mc(&lambda, &s, 1, false, 100_000, 7).unwrap();
        let exact = harish_chandra_rhs(&lambda, &s).unwrap();
        assert!(est.within_sigmas(exact, 3.0), "{est:?} vs {exact}");
    }

    #[test]
    fn two_variable_k_two_integrates_by_parts() {
        // ψ_2 for N = 2 is ∫ (2μ − λ1 − λ2)/(λ1 − λ2) e^{(s1−s2)μ + s2|λ|} dμ.
        let (l1, l2, s1, s2) = (1.0f64, -0.5f64, 0.8f64, -0.2f64);
        let c = s1 - s2;
        let antideriv = |x: f64| ((2.0 * x - l1 - l2) / c - 2.0 / (c * c)) * (c * x).exp();
        let exact = (antideriv(l1) - antideriv(l2)) / (l1 - l2) * (s2 * (l1 + l2)).exp();
        let est = orbit_mc(&[l1, l2], &[s1, s2], 2, false, 50_000, 3).unwrap();
        assert!(est.within_sigmas(exact, 3.0), "{est:?} vs {exact}");
    }
}
