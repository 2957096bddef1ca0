//! Gelfand-Tsetlin patterns: validation, closed-form volume, and the
//! box-chain sampler used by every Monte Carlo estimator.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational};

/// Triangular interlacing array. `levels[l]` holds `l + 1` entries and the
/// last level is the top row `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GtPattern {
    levels: Vec<Vec<f64>>,
}

impl GtPattern {
    pub fn new(levels: Vec<Vec<f64>>) -> Result<Self> {
        for (l, level) in levels.iter().enumerate() {
            if level.len() != l + 1 {
                return Err(Error::InvalidInput(format!(
                    "level {} has {} entries, expected {}",
                    l + 1,
                    level.len(),
                    l + 1
                )));
            }
        }
        for l in 1..levels.len() {
            if !interlaces(&levels[l - 1], &levels[l]) {
                return Err(Error::Interlacing(format!("{:?} does not interlace {:?}", levels[l - 1], levels[l])));
            }
        }
        Ok(GtPattern { levels })
    }

    pub fn size(&self) -> usize {
        self.levels.len()
    }

    /// Level `l` (1-based, as in `μ^l`).
    pub fn level(&self, l: usize) -> &[f64] {
        &self.levels[l - 1]
    }

    pub fn top(&self) -> &[f64] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    /// `Σ_l s_l (|μ^l| − |μ^{l−1}|)`, the exponent of every integrand here.
    pub fn weight_exponent(&self, s: &[f64]) -> f64 {
        let mut prev = 0.0;
        let mut acc = 0.0;
        for (l, level) in self.levels.iter().enumerate() {
            let total: f64 = level.iter().sum();
            acc += s[l] * (total - prev);
            prev = total;
        }
        acc
    }

    pub fn is_strict(&self) -> bool {
        (1..self.levels.len()).all(|l| strictly_interlaces(&self.levels[l - 1], &self.levels[l]))
    }
}

/// `μ ≺ λ`: `λ_i ≥ μ_i ≥ λ_{i+1}`.
pub fn interlaces(mu: &[f64], lambda: &[f64]) -> bool {
    mu.len() + 1 == lambda.len() && mu.iter().enumerate().all(|(i, &m)| lambda[i] >= m && m >= lambda[i + 1])
}

pub fn strictly_interlaces(mu: &[f64], lambda: &[f64]) -> bool {
    mu.len() + 1 == lambda.len() && mu.iter().enumerate().all(|(i, &m)| lambda[i] > m && m > lambda[i + 1])
}

fn superfactorial_product(n: usize) -> u128 {
    // (n−1)! (n−2)! ⋯ 1!
    let mut acc: u128 = 1;
    let mut fact: u128 = 1;
    for m in 1..n {
        fact *= m as u128;
        acc *= fact;
    }
    acc
}

/// `Vol(GT_λ) = ∏_{i<j}(λ_i − λ_j) / ((N−1)! ⋯ 1!)`; zero on walls.
pub fn gt_volume(lambda: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            v *= lambda[i] - lambda[j];
        }
    }
    v / superfactorial_product(lambda.len()) as f64
}

pub fn gt_volume_exact(lambda: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            v *= &lambda[i] - &lambda[j];
        }
    }
    if v.is_zero() {
        return v;
    }
    v / rat_int(superfactorial_product(lambda.len()) as i64)
}

/// Counter-based sampler: sample `index` under seed `seed` is always the
/// same, regardless of how samples are distributed over threads.
#[derive(Clone, Debug)]
pub struct GtSampler {
    lambda: Vec<f64>,
    seed: u64,
}

impl GtSampler {
    pub fn new(lambda: &[f64], seed: u64) -> Result<Self> {
        if !lambda.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::Degenerate(format!("{lambda:?}")));
        }
        Ok(GtSampler { lambda: lambda.to_vec(), seed })
    }

    pub fn rng_for(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// Draws each level uniformly from its interlacing box given the level
    /// above. The weight is the product of box volumes, so weighted means
    /// estimate Lebesgue integrals over `GT_λ`.
    pub fn sample(&self, index: u64) -> (GtPattern, f64) {
        let mut rng = self.rng_for(index);
        let n = self.lambda.len();
        let mut levels = vec![Vec::new(); n];
        if n == 0 {
            return (GtPattern { levels }, 1.0);
        }
        levels[n - 1] = self.lambda.clone();
        let mut weight = 1.0;
        for l in (1..n).rev() {
            let above = &levels[l];
            let mut level = Vec::with_capacity(l);
            for i in 0..l {
                let (hi, lo) = (above[i], above[i + 1]);
                let u: f64 = rng.random();
                level.push(lo + (hi - lo) * u);
                weight *= hi - lo;
            }
            levels[l - 1] = level;
        }
        (GtPattern { levels }, weight)
    }
}

/// Running mean and standard error over weighted samples.
#[derive(Clone, Copy, Debug, Default)]
pub struct MeanAccumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std_error(&self) -> f64 {
        if self.n < 2 {
            return f64::INFINITY;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}
