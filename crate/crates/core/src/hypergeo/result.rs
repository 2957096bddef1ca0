use serde::Serialize;

/// A numerical value with an error estimate and the work spent on it.
///
/// For quadrature, `est_error` is the change between `n` and `n/2` nodes
/// and `work` counts integrand evaluations; for Monte Carlo, `est_error` is
/// one standard error and `work` the sample count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub est_error: f64,
    pub work: u64,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        EvalResult { value, est_error: 0.0, work: 0 }
    }

    /// Scales value and error by a constant.
    pub fn scaled(self, c: f64) -> Self {
        EvalResult { value: self.value * c, est_error: self.est_error * c.abs(), work: self.work }
    }

    /// True iff `target` lies within `sigmas` standard errors.
    pub fn within_sigmas(&self, target: f64, sigmas: f64) -> bool {
        (self.value - target).abs() <= sigmas * self.est_error
    }
}
