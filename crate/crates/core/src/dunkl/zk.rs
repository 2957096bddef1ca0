//! Matrix-element identities: the brute-force coefficient `Z_k(μ, λ)`, its
//! expression through a Dunkl word acting on `Δ(μ, λ)^k`, and the
//! arbitrary-coupling `k = 1` identity evaluated without fractional powers.

use std::collections::BTreeMap;

use crate::algebra::multinomial::{coefficient_of_product, factorial};
use crate::algebra::symmetric::cross_delta;
use crate::algebra::{var_names, SparsePoly};
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational, Scalar};

use super::operators::{trig_dunkl_apply, DunklWord, Flavor};
use super::rational_fn::RationalFunctionPair;

/// Variable names `m1..m_{N−1}, l1..l_l` used by the symbolic identities.
pub fn zk_vars(n_mu: usize, l: usize) -> Vec<String> {
    let mut vars = var_names("m", n_mu);
    vars.extend(var_names("l", l));
    vars
}

fn inverse_factorial<T: Scalar>(n: u32) -> T {
    T::one() / T::from_rational(&Rational::from_integer(factorial(n).into()))
}

/// `((l−N+1)k)! / (k!^{l−N+1} (l−N+1)!)`: the ratio between
/// [`z_bruteforce`] and the Dunkl-word value. It is 1 when `l = N`
/// or `k = 1` and exceeds 1 otherwise, because the `1/(l−N+1)!` prefactor
/// only cancels the free-variable arrangements when `k = 1`.
pub fn z_free_weight(n_mu: usize, l: usize, k: u32) -> Rational {
    let r = (l - n_mu) as u32;
    Rational::new(factorial(r * k).into(), (factorial(k).pow(r) * factorial(r)).into())
}

/// Coefficient of `(x_1⋯x_l)^k` in
/// `(1/(l−N+1)!) ∏_j (Σ_{i<N} x_i/(μ_i − λ_j) + x_N + ⋯ + x_l)^k`,
/// with `μ` of length `N − 1`. `Z_0 = 1` by convention.
pub fn z_bruteforce<T: Scalar>(mu: &[T], lambda: &[T], k: u32) -> Result<T> {
    let (n_mu, l) = (mu.len(), lambda.len());
    if l < n_mu {
        return Err(Error::InvalidInput(format!("need l ≥ N − 1, got l = {l} < {n_mu}")));
    }
    if k == 0 {
        return Ok(T::one());
    }
    let mut forms = Vec::with_capacity(l);
    for lj in lambda {
        let mut form = vec![T::one(); l];
        for (i, mi) in mu.iter().enumerate() {
            let d = mi.clone() - lj.clone();
            if d.is_zero() {
                return Err(Error::Degenerate(format!("μ_{} coincides with a λ entry", i + 1)));
            }
            form[i] = T::one() / d;
        }
        forms.push(form);
    }
    let value = coefficient_of_product(&forms, &vec![k; l], &vec![k; l]);
    Ok(value.mul_ref(&inverse_factorial((l - n_mu) as u32)))
}

/// `Z_k(e^μ, e^λ)` in floating point.
pub fn z_bruteforce_trig(mu: &[f64], lambda: &[f64], k: u32) -> Result<f64> {
    let e = |v: &[f64]| v.iter().map(|x| x.exp()).collect::<Vec<_>>();
    z_bruteforce(&e(mu), &e(lambda), k)
}

/// Visits every `(N−1) × l` matrix of nonnegative integers whose rows sum to
/// `k` and whose columns sum to at most `k`.
fn for_each_row_matrix(n_mu: usize, l: usize, k: u32, visit: &mut dyn FnMut(&[Vec<u32>])) {
    fn rows_from(
        row: usize,
        n_mu: usize,
        l: usize,
        k: u32,
        cols: &mut Vec<u32>,
        acc: &mut Vec<Vec<u32>>,
        visit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if row == n_mu {
            visit(acc);
            return;
        }
        let mut current = vec![0u32; l];
        fill(0, k, row, n_mu, l, k, cols, &mut current, acc, visit);
    }
    #[allow(clippy::too_many_arguments)]
    fn fill(
        j: usize,
        left: u32,
        row: usize,
        n_mu: usize,
        l: usize,
        k: u32,
        cols: &mut Vec<u32>,
        current: &mut Vec<u32>,
        acc: &mut Vec<Vec<u32>>,
        visit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if j == l {
            if left == 0 {
                acc.push(current.clone());
                rows_from(row + 1, n_mu, l, k, cols, acc, visit);
                acc.pop();
            }
            return;
        }
        for a in 0..=left.min(k - cols[j]) {
            current[j] = a;
            cols[j] += a;
            fill(j + 1, left - a, row, n_mu, l, k, cols, current, acc, visit);
            cols[j] -= a;
        }
        current[j] = 0;
    }
    let mut cols = vec![0u32; l];
    rows_from(0, n_mu, l, k, &mut cols, &mut Vec::new(), visit);
}

/// `Z_k · Δ(μ, λ)^k` as a polynomial in `μ` and `λ`, from the multinomial
/// expansion.
///
/// A choice of how many `x_i` (`i < N`) each factor `j` contributes is an
/// integer matrix `a` with row sums `k`. The remaining `c_j = k − Σ_i a_ij`
/// slots of factor `j` go to the free variables, which together must absorb
/// `(l−N+1)k` units; that count is `((l−N+1)k)! / k!^{l−N+1}` regardless of
/// how the `c_j` split.
pub fn z_numerator_bruteforce(n_mu: usize, l: usize, k: u32) -> Result<SparsePoly> {
    if l < n_mu {
        return Err(Error::InvalidInput(format!("need l ≥ N − 1, got l = {l} < {n_mu}")));
    }
    let vars = zk_vars(n_mu, l);
    if k == 0 {
        return Ok(SparsePoly::one(&vars));
    }
    let kf = factorial(k);
    let free = z_free_weight(n_mu, l, k);
    // Powers (μ_i − λ_j)^e, cached.
    let mut powers: BTreeMap<(usize, usize, u32), SparsePoly> = BTreeMap::new();
    let mut total = SparsePoly::zero(&vars);
    let mut failure = None;
    for_each_row_matrix(n_mu, l, k, &mut |a| {
        let mut weight = free.clone();
        let mut term = SparsePoly::one(&vars);
        for j in 0..l {
            let col: u32 = a.iter().map(|row| row[j]).sum();
            let mut denom = factorial(k - col);
            for row in a {
                denom *= factorial(row[j]);
            }
            weight *= Rational::new(kf.into(), denom.into());
            for (i, row) in a.iter().enumerate() {
                let e = k - row[j];
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, j, e)).or_insert_with(|| {
                    SparsePoly::difference(&vars, i, n_mu + j).map(|d| d.pow(e)).unwrap_or_else(|err| {
                        failure.get_or_insert(err);
                        SparsePoly::zero(&vars)
                    })
                });
                term = &term * p;
            }
        }
        total = std::mem::replace(&mut total, SparsePoly::zero(&vars)) + term.scale(&weight);
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(total),
    }
}

/// `Z_k` through the Dunkl word, as an exact rational function in
/// `zk_vars(N−1, l)`.
///
/// Rational flavor: `k!^{−(N−1)} Δ(μ,λ)^{−k} (D_{μ_{N−1}}(−k)⋯D_{μ_1}(−k))^k Δ(μ,λ)^k`.
/// Trigonometric flavor, in `X = e^μ`, `Λ = e^λ`:
/// `k!^{−(N−1)} Δ(X,Λ)^{−k} (e^{−Σμ} ∏_i (T_{μ_i}(−k) − k(N−2)/2))^k Δ(X,Λ)^k`.
pub fn z_dunkl(n_mu: usize, l: usize, k: u32, flavor: Flavor) -> Result<RationalFunctionPair> {
    z_dunkl_with_order(n_mu, l, k, flavor, &(0..n_mu).collect::<Vec<_>>())
}

/// As [`z_dunkl`], applying the single-variable operators in the given order
/// within each pass.
pub fn z_dunkl_with_order(
    n_mu: usize,
    l: usize,
    k: u32,
    flavor: Flavor,
    order: &[usize],
) -> Result<RationalFunctionPair> {
    let vars = zk_vars(n_mu, l);
    let active: Vec<usize> = (0..n_mu).collect();
    let lambda_idx: Vec<usize> = (n_mu..n_mu + l).collect();
    let delta_k = cross_delta::<Rational>(&vars, &active, &lambda_idx)?.pow(k);
    let coupling = rat_int(-(k as i64));
    let image = match flavor {
        Flavor::Rational => DunklWord::new(flavor, coupling, order.to_vec(), k).apply(&delta_k, &active)?,
        Flavor::Trigonometric => {
            let shift = &coupling * Rational::new((n_mu as i64 - 1).into(), 2.into());
            let mut inv_x = vec![0; vars.len()];
            for e in inv_x.iter_mut().take(n_mu) {
                *e = -1;
            }
            let mut g = delta_k.clone();
            for _ in 0..k {
                for &i in order {
                    // T_i(−k) − k(N−2)/2 = T_i(−k) + shift.
                    g = trig_dunkl_apply(i, &coupling, &g, &active)? + g.scale(&shift);
                }
                g = g.mul_monomial(&inv_x);
            }
            g
        }
    };
    let scale = inverse_factorial::<Rational>(k).powi(n_mu as i64);
    let factors: Vec<((usize, usize), u32)> =
        active.iter().flat_map(|&i| lambda_idx.iter().map(move |&j| ((i, j), k))).collect();
    RationalFunctionPair::new(image.scale(&scale), &factors)
}

/// Both sides of the arbitrary-coupling `k = 1` identity
/// `Δ^{−κ} D_{μ_{N−1}}(−κ)⋯D_{μ_1}(−κ) Δ^κ = κ^{N−1} Σ_σ ∏_i (μ_i − λ_{σ(i)})^{−1}`,
/// the sum over injections `σ: [N−1] → [l]`.
#[derive(Clone, Debug)]
pub struct Z1Kappa {
    pub recursion: RationalFunctionPair,
    pub sum_form: RationalFunctionPair,
    pub kappa: Rational,
}

impl Z1Kappa {
    pub fn holds(&self) -> bool {
        self.recursion == self.sum_form
    }

    /// Compares the sum form with `κ^{N−1} Z_1` from the brute-force
    /// expansion at a concrete point.
    pub fn matches_bruteforce_at(&self, mu: &[Rational], lambda: &[Rational]) -> Result<bool> {
        let mut point = mu.to_vec();
        point.extend_from_slice(lambda);
        let lhs = self.sum_form.eval(&point)?;
        let rhs = self.kappa.powi(mu.len() as i64) * z_bruteforce(mu, lambda, 1)?;
        Ok(lhs == rhs)
    }
}

/// Evaluates the left side by conjugating one operator at a time: with
/// `Δ = Δ(μ, λ)` symmetric in `μ`,
/// `Δ^{−κ} D_a(−κ) Δ^κ R = κ R Σ_j (μ_a − λ_j)^{−1} + ∂_a R − κ Σ_{b≠a} (R − s_ab R)/(μ_a − μ_b)`,
/// which never leaves rational functions.
pub fn z1_kappa(n_mu: usize, l: usize, kappa: &Rational) -> Result<Z1Kappa> {
    if Scalar::is_zero(kappa) {
        return Err(Error::InvalidInput("κ must be nonzero".into()));
    }
    if l < n_mu {
        return Err(Error::InvalidInput(format!("need l ≥ N − 1, got l = {l} < {n_mu}")));
    }
    let vars = zk_vars(n_mu, l);
    let mut r = RationalFunctionPair::constant(&vars, rat_int(1));
    for a in 0..n_mu {
        let mut log_derivative = RationalFunctionPair::constant(&vars, rat_int(0));
        for j in 0..l {
            let term = RationalFunctionPair::constant(&vars, rat_int(1)).div_by_factor(a, n_mu + j)?;
            log_derivative = log_derivative.add(&term);
        }
        let mut next = r.mul(&log_derivative).scale(kappa).add(&r.derivative(a)?);
        for b in (0..n_mu).filter(|&b| b != a) {
            let diff = r.sub(&r.swap(a, b)?).div_by_factor(a, b)?;
            next = next.sub(&diff.scale(kappa));
        }
        r = next.reduce();
    }
    let mut sum = RationalFunctionPair::constant(&vars, rat_int(0));
    let mut sigma = vec![0usize; n_mu];
    injections(0, l, &mut sigma, &mut vec![false; l], &mut |s| {
        let mut term = RationalFunctionPair::constant(&vars, rat_int(1));
        for (i, &j) in s.iter().enumerate() {
            term = term.div_by_factor(i, n_mu + j).expect("indices in range");
        }
        sum = sum.add(&term);
    });
    Ok(Z1Kappa { recursion: r, sum_form: sum.scale(&kappa.powi(n_mu as i64)), kappa: kappa.clone() })
}

fn injections(pos: usize, l: usize, sigma: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
    if pos == sigma.len() {
        visit(sigma);
        return;
    }
    for j in 0..l {
        if !used[j] {
            used[j] = true;
            sigma[pos] = j;
            injections(pos + 1, l, sigma, used, visit);
            used[j] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn two_factor_hand_expansion() {
        let (mu, l1, l2) = (rat(5, 2), rat(1, 3), rat(-2, 1));
        let z: Rational = z_bruteforce(std::slice::from_ref(&mu), &[l1.clone(), l2.clone()], 1).unwrap();
        assert_eq!(z, rat_int(1) / (&mu - &l1) + rat_int(1) / (&mu - &l2));
    }

    #[test]
    fn degenerate_cases() {
        let z: Rational = z_bruteforce(&[rat_int(1)], &[rat_int(2), rat_int(3)], 0).unwrap();
        assert_eq!(z, rat_int(1));
        assert!(z_bruteforce(&[rat_int(2)], &[rat_int(2), rat_int(3)], 1).is_err());
        // N = 1: (lk)! / (k!^l · l!).
        for (l, k) in [(2usize, 1u32), (3, 2), (2, 3)] {
            let lam: Vec<Rational> = (0..l).map(|j| rat_int(j as i64)).collect();
            let z: Rational = z_bruteforce(&[], &lam, k).unwrap();
            let expected = Rational::new(
                factorial(l as u32 * k).into(),
                (factorial(k).pow(l as u32) * factorial(l as u32)).into(),
            );
            assert_eq!(z, expected);
        }
    }

    #[test]
    fn symbolic_numerator_matches_pointwise_expansion() {
        let mu = [rat(7, 2), rat(-1, 3)];
        let lam = [rat(1, 5), rat(2, 1), rat(-4, 3)];
        for k in 1..=3 {
            let num = z_numerator_bruteforce(2, 3, k).unwrap();
            let mut point = mu.to_vec();
            point.extend_from_slice(&lam);
            let mut delta = rat_int(1);
            for m in &mu {
                for l in &lam {
                    delta *= (m - l).powi(k as i64);
                }
            }
            let expected = z_bruteforce(&mu, &lam, k).unwrap() * delta;
            assert_eq!(num.eval(&point).unwrap(), expected, "k={k}");
        }
    }

    #[test]
    fn dunkl_side_small_cases() {
        for flavor in [Flavor::Rational, Flavor::Trigonometric] {
            for (n_mu, l, k) in [(1usize, 1usize, 1u32), (1, 2, 1), (1, 2, 2), (2, 2, 1), (2, 3, 2)] {
                let z = z_dunkl(n_mu, l, k, flavor).unwrap();
                let vars = zk_vars(n_mu, l);
                let expected = z_numerator_bruteforce(n_mu, l, k).unwrap();
                assert_eq!(expected.vars(), vars.as_slice());
                let brute = RationalFunctionPair::new(
                    expected,
                    &z.denominator.iter().map(|(&a, &b)| (a, b)).collect::<Vec<_>>(),
                )
                .unwrap();
                assert_eq!(z, brute, "{flavor:?} N−1={n_mu} l={l} k={k}");
            }
        }
    }

    #[test]
    fn dunkl_side_equals_bruteforce_up_to_free_weight() {
        // N = 1 makes the discrepancy visible without any operator: the word
        // is empty, so the Dunkl side is 1.
        assert_eq!(z_free_weight(0, 2, 2), rat_int(3));
        let brute: Rational = z_bruteforce(&[], &[rat_int(0), rat_int(1)], 2).unwrap();
        assert_eq!(brute, rat_int(3));
        for (n_mu, l, k) in [(1usize, 3usize, 2u32), (2, 4, 2), (1, 4, 3)] {
            let z = z_dunkl(n_mu, l, k, Flavor::Rational).unwrap();
            let factors: Vec<_> = z.denominator.iter().map(|(&a, &b)| (a, b)).collect();
            let num = z_numerator_bruteforce(n_mu, l, k).unwrap();
            let corrected =
                RationalFunctionPair::new(num, &factors).unwrap().scale(&(rat_int(1) / z_free_weight(n_mu, l, k)));
            assert_eq!(z, corrected, "N−1={n_mu} l={l} k={k}");
        }
    }

    #[test]
    fn word_order_does_not_matter() {
        let forward = z_dunkl_with_order(2, 3, 2, Flavor::Rational, &[0, 1]).unwrap();
        let backward = z_dunkl_with_order(2, 3, 2, Flavor::Rational, &[1, 0]).unwrap();
        assert_eq!(forward, backward);
    }

    #[test]
    fn kappa_identity_base_and_small_cases() {
        for kappa in [rat(1, 2), rat(-2, 1), rat(3, 1), rat(-1, 3)] {
            let one = z1_kappa(1, 3, &kappa).unwrap();
            assert!(one.holds());
            let two = z1_kappa(2, 3, &kappa).unwrap();
            assert!(two.holds(), "κ={kappa}");
            assert!(two.matches_bruteforce_at(&[rat(1, 2), rat(7, 3)], &[rat(-1, 1), rat(4, 1), rat(2, 5)]).unwrap());
        }
    }
}
