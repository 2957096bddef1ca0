//! Symmetric-function building blocks and partition combinatorics.

use crate::algebra::poly::SparsePoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `∏_{i<j} (x_i − x_j)` over the given variable indices.
pub fn vandermonde<C: Scalar>(vars: &[String], idx: &[usize]) -> Result<SparsePoly<C>> {
    let mut acc = SparsePoly::one(vars);
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            acc = &acc * &SparsePoly::difference(vars, i, j)?;
        }
    }
    Ok(acc)
}

/// `∏_{i,j} (x_i − y_j)` with `x` and `y` given as variable index lists.
pub fn cross_delta<C: Scalar>(vars: &[String], xs: &[usize], ys: &[usize]) -> Result<SparsePoly<C>> {
    let mut acc = SparsePoly::one(vars);
    for &i in xs {
        for &j in ys {
            acc = &acc * &SparsePoly::difference(vars, i, j)?;
        }
    }
    Ok(acc)
}

/// Elementary symmetric polynomial `e_r` in the variables `idx`.
pub fn elementary<C: Scalar>(vars: &[String], idx: &[usize], r: usize) -> SparsePoly<C> {
    let mut out = SparsePoly::zero(vars);
    for subset in subsets(idx.len(), r) {
        let mut e = vec![0; vars.len()];
        for s in subset {
            e[idx[s]] = 1;
        }
        out.add_term(e, C::one());
    }
    out
}

/// Power sum `p_a` in the variables `idx`.
pub fn power_sum<C: Scalar>(vars: &[String], idx: &[usize], a: i32) -> SparsePoly<C> {
    let mut out = SparsePoly::zero(vars);
    for &i in idx {
        let mut e = vec![0; vars.len()];
        e[i] = a;
        out.add_term(e, C::one());
    }
    out
}

/// Monomial symmetric polynomial `m_λ` in the variables `idx`; zero when
/// `λ` has more parts than there are variables.
pub fn monomial_symmetric<C: Scalar>(vars: &[String], idx: &[usize], lambda: &[i32]) -> SparsePoly<C> {
    let mut out = SparsePoly::zero(vars);
    let parts: Vec<i32> = lambda.iter().copied().filter(|&p| p != 0).collect();
    if parts.len() > idx.len() {
        return out;
    }
    let mut padded = parts;
    padded.resize(idx.len(), 0);
    for perm in distinct_permutations(&padded) {
        let mut e = vec![0; vars.len()];
        for (slot, &p) in idx.iter().zip(&perm) {
            e[*slot] = p;
        }
        out.add_term(e, C::one());
    }
    out
}

/// All `r`-element subsets of `0..n`, each sorted ascending, in
/// lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Distinct rearrangements of a multiset, in lexicographic order.
pub fn distinct_permutations(items: &[i32]) -> Vec<Vec<i32>> {
    let mut cur: Vec<i32> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation walk.
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All permutations of `0..n` paired with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let base: Vec<i32> = (0..n as i32).collect();
    distinct_permutations(&base)
        .into_iter()
        .map(|p| {
            let p: Vec<usize> = p.into_iter().map(|v| v as usize).collect();
            let sign = permutation_sign(&p);
            (p, sign)
        })
        .collect()
}

pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Partitions of `n` with at most `max_parts` parts, each padded with zeros
/// to length `max_parts`, in reverse lexicographic order (largest first).
pub fn partitions(n: i32, max_parts: usize) -> Vec<Vec<i32>> {
    fn rec(rest: i32, max_part: i32, slots: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if rest == 0 {
            let mut p = cur.clone();
            p.resize(p.len() + slots, 0);
            out.push(p);
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Dominance order `μ ≤ λ` for partitions of equal size (padded equally).
pub fn dominated_by(mu: &[i32], lambda: &[i32]) -> bool {
    let (mut a, mut b) = (0, 0);
    for i in 0..mu.len().max(lambda.len()) {
        a += mu.get(i).copied().unwrap_or(0);
        b += lambda.get(i).copied().unwrap_or(0);
        if a > b {
            return false;
        }
    }
    a == b
}

/// Validates a partition (weakly decreasing, nonnegative) and pads it to
/// `n` parts.
pub fn pad_partition(lambda: &[i32], n: usize) -> Result<Vec<i32>> {
    if lambda.iter().any(|&p| p < 0) || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("{lambda:?} is not a partition")));
    }
    let trimmed: Vec<i32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if trimmed.len() > n {
        return Err(Error::InvalidInput(format!("partition {lambda:?} has more than {n} parts")));
    }
    let mut p = trimmed;
    p.resize(n, 0);
    Ok(p)
}
