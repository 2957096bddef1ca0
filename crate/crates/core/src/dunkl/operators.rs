use crate::algebra::SparsePoly;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};

/// Which family of Dunkl operators a word is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Rational,
    Trigonometric,
}

fn check_active(i: usize, active: &[usize]) -> Result<()> {
    if active.contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("variable {i} is not among the active Dunkl variables {active:?}")))
    }
}

/// `D_i(c) f = ∂_i f + c Σ_{j≠i} (f − s_ij f)/(x_i − x_j)`, with `j` ranging
/// over the active variables only. Variables outside `active` are passive
/// parameters (the `λ` in `Δ(μ, λ)`).
pub fn rational_dunkl_apply<C: Scalar>(i: usize, c: &C, f: &SparsePoly<C>, active: &[usize]) -> Result<SparsePoly<C>> {
    check_active(i, active)?;
    let mut out = f.derivative(i)?;
    if c.is_zero() {
        return Ok(out);
    }
    let mut diffs = SparsePoly::zero(f.vars());
    for &j in active.iter().filter(|&&j| j != i) {
        diffs = diffs + f.exact_divide_difference(i, j)?;
    }
    out = out + diffs.scale(c);
    Ok(out)
}

/// Trigonometric Dunkl operator on Laurent polynomials in `X_j = e^{μ_j}`:
///
/// `T_i(c) = X_i D_{X_i}(c) + c Σ_{j<i} s_ij − c (n − 1)/2`,
///
/// where `n` is the number of active variables and `j < i` refers to
/// positions in `active`. This is the defining root-system formula after
/// splitting `1/(1 − e^{−α})` into `X_i/(X_i − X_j)` and a transposition.
pub fn trig_dunkl_apply(i: usize, c: &Rational, f: &SparsePoly, active: &[usize]) -> Result<SparsePoly> {
    check_active(i, active)?;
    let pos = active.iter().position(|&a| a == i).unwrap();
    let mut xi = vec![0; f.nvars()];
    xi[i] = 1;
    let rational_part = rational_dunkl_apply(i, c, f, active)?.mul_monomial(&xi);
    let mut swaps = SparsePoly::zero(f.vars());
    for &j in &active[..pos] {
        swaps = swaps + f.apply_transposition(i, j)?;
    }
    let n = active.len() as i64;
    let shift = c * rat(n - 1, 2);
    Ok(rational_part + swaps.scale(c) - f.scale(&shift))
}

/// An ordered product of Dunkl operators at a common coupling, raised to a
/// whole-word power. `steps[0]` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct DunklWord {
    pub flavor: Flavor,
    pub coupling: Rational,
    pub steps: Vec<usize>,
    pub repetitions: u32,
}

impl DunklWord {
    pub fn new(flavor: Flavor, coupling: Rational, steps: Vec<usize>, repetitions: u32) -> Self {
        DunklWord { flavor, coupling, steps, repetitions }
    }

    /// Applies the word to `f`; `active` lists the Dunkl variables.
    pub fn apply(&self, f: &SparsePoly, active: &[usize]) -> Result<SparsePoly> {
        if let Some(&bad) = self.steps.iter().find(|s| !active.contains(s)) {
            return Err(Error::InvalidInput(format!("word step {bad} is not an active variable")));
        }
        let mut g = f.clone();
        for _ in 0..self.repetitions {
            for &i in &self.steps {
                g = match self.flavor {
                    Flavor::Rational => rational_dunkl_apply(i, &self.coupling, &g, active)?,
                    Flavor::Trigonometric => trig_dunkl_apply(i, &self.coupling, &g, active)?,
                };
            }
        }
        Ok(g)
    }
}
