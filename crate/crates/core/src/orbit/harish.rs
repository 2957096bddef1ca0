use crate::error::{Error, Result};

fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    // Heap's algorithm, tracking the sign of each swap.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![(perm.clone(), 1.0)];
    let mut c = vec![0usize; n];
    let mut sign = 1.0;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `Σ_{w∈S_N} sgn(w) e^{(wλ, s)} / ∏_{i<j}(s_i − s_j)`.
pub fn harish_chandra_rhs(lambda: &[f64], s: &[f64]) -> Result<f64> {
    let n = lambda.len();
    if s.len() != n {
        return Err(Error::InvalidInput(format!("λ has {n} entries but s has {}", s.len())));
    }
    let mut denom = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            let d = s[i] - s[j];
            if d == 0.0 {
                return Err(Error::Degenerate(format!("coincident s entries {i} and {j}")));
            }
            denom *= d;
        }
    }
    // Factor out the largest exponent to keep the alternating sum stable.
    let terms: Vec<(f64, f64)> =
        permutations(n).into_iter().map(|(w, sgn)| (sgn, (0..n).map(|i| lambda[w[i]] * s[i]).sum::<f64>())).collect();
    let top = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|(sgn, e)| sgn * (e - top).exp()).sum();
    Ok(sum * top.exp() / denom)
}
