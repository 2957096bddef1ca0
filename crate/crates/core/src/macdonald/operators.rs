use crate::algebra::symmetric::subsets;
use crate::algebra::SparsePoly;
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational, Scalar};

use super::{spectral_point, MacParams};

/// `T_{q²,I}`: rescales `x_i ↦ q² x_i` for every `i ∈ I`.
fn shift(f: &SparsePoly, subset: &[usize], q2: &Rational) -> SparsePoly {
    let mut out = SparsePoly::zero(f.vars());
    for (e, c) in f.terms() {
        let power: i64 = subset.iter().map(|&i| e[i] as i64).sum();
        out.add_term(e.clone(), c * q2.powi(power));
    }
    out
}

/// Applies `D^r_{N,x}(q², t²)` to a polynomial in `N` variables.
///
/// The sum over subsets is brought over the common denominator `Δ(x)`:
/// each summand's own denominator `∏_{i∈I, j∉I}(x_i − x_j)` divides `Δ(x)`
/// up to sign. The final division by `Δ(x)` is carried out factor by factor
/// and fails loudly if the input was not symmetric enough to clear it.
pub fn apply_dr(r: usize, params: &MacParams, f: &SparsePoly, n: usize) -> Result<SparsePoly> {
    if f.nvars() != n {
        return Err(Error::InvalidInput(format!("polynomial has {} variables, operator acts on {n}", f.nvars())));
    }
    if r > n {
        return Ok(SparsePoly::zero(f.vars()));
    }
    let vars = f.vars().to_vec();
    let q2 = &params.q * &params.q;
    let t2 = &params.t * &params.t;
    let mut numerator = SparsePoly::zero(&vars);
    for subset in subsets(n, r) {
        let inside = |i: usize| subset.contains(&i);
        let mut term = shift(f, &subset, &q2);
        let mut sign = rat_int(1);
        for a in 0..n {
            for b in a + 1..n {
                let cross = inside(a) != inside(b);
                if cross {
                    // (x_i − x_j) with i ∈ I equals ±(x_a − x_b).
                    let (i, j) = if inside(a) { (a, b) } else { (b, a) };
                    if i > j {
                        sign = -sign;
                    }
                    let mut lin = SparsePoly::var(&vars, i)?.scale(&t2);
                    lin = lin - SparsePoly::var(&vars, j)?;
                    term = &term * &lin;
                } else {
                    term = &term * &SparsePoly::difference(&vars, a, b)?;
                }
            }
        }
        numerator = numerator + term.scale(&sign);
    }
    let mut quotient = numerator;
    for a in 0..n {
        for b in a + 1..n {
            quotient = quotient.div_by_difference(a, b).map_err(|_| {
                Error::NotDivisible(format!(
                    "D^{r} left a remainder modulo x{} - x{}; input is not symmetric",
                    a + 1,
                    b + 1
                ))
            })?;
        }
    }
    let prefactor = params.t.powi((r as i64) * (r as i64 - n as i64));
    Ok(quotient.scale(&prefactor))
}

/// `e_r(q^{2λ} t^{2ρ})`, the eigenvalue of `D^r` on `P_λ`.
pub fn eigenvalue(r: usize, lambda: &[i64], params: &MacParams) -> Rational {
    let point = spectral_point(lambda, &params.q, &params.t);
    let mut acc = rat_int(0);
    for subset in subsets(point.len(), r) {
        acc += subset.iter().fold(rat_int(1), |p, &i| p * &point[i]);
    }
    acc
}
