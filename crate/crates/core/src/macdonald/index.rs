//! Difference operators acting on the index `λ` rather than on `x`.
//!
//! Substituting `x = q^{2λ+2kρ}` turns `T_{q²,i}` into the shift
//! `λ_i ↦ λ_i + 1`, so `D^r` becomes an operator on functions of integer
//! signatures. Index functions are passed as callbacks so that the limit
//! harness can feed closed-form values at very large indices.

use crate::algebra::symmetric::{elementary, subsets};
use crate::algebra::var_names;
use crate::error::Result;
use crate::scalar::{Rational, Scalar};

use super::qnum::qnum;
use super::{macdonald_poly, spectral_point, MacParams};

fn shifted(lambda: &[i64], subset: &[usize], by: i64) -> Vec<i64> {
    let mut out = lambda.to_vec();
    for &i in subset {
        out[i] += by;
    }
    out
}

/// `(D^r g)(λ)` with `D^r = D^r_{N, q^{2λ+2kρ}}(q², q^{2k})`.
pub fn apply_dr_index<T: Scalar>(r: usize, lambda: &[i64], q: &T, k: i64, g: &dyn Fn(&[i64]) -> T) -> T {
    let n = lambda.len();
    let t = q.powi(k);
    let t2 = t.mul_ref(&t);
    let y = spectral_point(lambda, q, &t);
    let mut acc = T::zero();
    for subset in subsets(n, r) {
        // A factor t²y_i − y_j vanishes identically when
        // λ_i − λ_j = k(i − j − 1); drop those terms before touching g,
        // which may be singular at the shifted index.
        let vanishes = subset
            .iter()
            .any(|&i| (0..n).any(|j| !subset.contains(&j) && lambda[i] - lambda[j] == k * (i as i64 - j as i64 - 1)));
        if vanishes {
            continue;
        }
        let mut coeff = T::one();
        for &i in &subset {
            for j in (0..n).filter(|j| !subset.contains(j)) {
                coeff = coeff.mul_ref(&((t2.mul_ref(&y[i]) - y[j].clone()) / (y[i].clone() - y[j].clone())));
            }
        }
        acc.add_assign_ref(&coeff.mul_ref(&g(&shifted(lambda, &subset, 1))));
    }
    acc.mul_ref(&t.powi(r as i64 * (r as i64 - n as i64)))
}

/// `D_λ(q) = (D¹)² − 2D² − 2D¹ + N` applied to the index function `g`.
pub fn apply_d_lambda_q<T: Scalar>(lambda: &[i64], q: &T, k: i64, g: &dyn Fn(&[i64]) -> T) -> T {
    let n = lambda.len() as i64;
    let d1g = |mu: &[i64]| apply_dr_index(1, mu, q, k, g);
    let two = T::from_i64(2);
    let d1d1 = apply_dr_index(1, lambda, q, k, &d1g);
    let d2 = apply_dr_index(2, lambda, q, k, g);
    let d1 = apply_dr_index(1, lambda, q, k, g);
    d1d1 - two.mul_ref(&d2) - two.mul_ref(&d1) + T::from_i64(n).mul_ref(&g(lambda))
}

/// Coefficient of `T_{q²,I}` in the conjugated operator `D̃^r`:
/// `∏_{i∈I, j∉I, i>j} [d+k]_q [d−k+1]_q / ([d]_q [d+1]_q)` with
/// `d = λ_i − λ_j + k(j−i)`. Zero when `λ + 1_I` is not a partition.
pub fn conjugated_dr_coefficient<T: Scalar>(lambda: &[i64], subset: &[usize], q: &T, k: i64) -> T {
    let next = shifted(lambda, subset, 1);
    if next.windows(2).any(|w| w[0] < w[1]) {
        return T::zero();
    }
    let mut num_args = Vec::new();
    let mut den_args = Vec::new();
    for &i in subset {
        for j in (0..i).filter(|j| !subset.contains(j)) {
            let d = lambda[i] - lambda[j] + k * (j as i64 - i as i64);
            num_args.extend([d + k, d - k + 1]);
            den_args.extend([d, d + 1]);
        }
    }
    // Cancel coinciding q-numbers first; at k = 1 every factor is 1 and
    // some of them are formally 0/0.
    let mut i = 0;
    while i < num_args.len() {
        if let Some(pos) = den_args.iter().position(|&d| d == num_args[i]) {
            den_args.swap_remove(pos);
            num_args.swap_remove(i);
        } else {
            i += 1;
        }
    }
    let num = num_args.iter().fold(T::one(), |acc, &a| acc.mul_ref(&qnum(a, q)));
    let den = den_args.iter().fold(T::one(), |acc, &a| acc.mul_ref(&qnum(a, q)));
    num / den
}

/// Checks `D̃^r P_λ(x) = e_r(x) P_λ(x)` as an identity of polynomials in `x`,
/// with `D̃^r` acting on the index and `t = q^k`.
pub fn conjugated_dr_check(lambda: &[i32], r: usize, q: &Rational, k: i64, n: usize) -> Result<bool> {
    let params = MacParams::with_k(q.clone(), k)?;
    let vars = var_names("x", n);
    let idx: Vec<usize> = (0..n).collect();
    let base = macdonald_poly(lambda, &params, n)?;
    let lam: Vec<i64> = base.lambda.iter().map(|&v| v as i64).collect();
    let mut left = crate::algebra::SparsePoly::zero(&vars);
    for subset in subsets(n, r) {
        let c: Rational = conjugated_dr_coefficient(&lam, &subset, q, k);
        if Scalar::is_zero(&c) {
            continue;
        }
        let next: Vec<i32> = shifted(&lam, &subset, 1).iter().map(|&v| v as i32).collect();
        let p = macdonald_poly(&next, &params, n)?;
        left = left + p.to_poly(&vars).scale(&c);
    }
    let right = &elementary::<Rational>(&vars, &idx, r) * &base.to_poly(&vars);
    Ok(left == right)
}
