use crate::scalar::Scalar;

/// `[a]_q = (q^a − q^{−a})/(q − q^{−1})`.
pub fn qnum<T: Scalar>(a: i64, q: &T) -> T {
    let qi = T::one() / q.clone();
    (q.powi(a) - qi.powi(a)) / (q.clone() - qi)
}

/// `[a]_{q,l} = [a]_q [a−1]_q ⋯ [a−l+1]_q`.
pub fn qnum_falling<T: Scalar>(a: i64, l: i64, q: &T) -> T {
    (0..l).fold(T::one(), |acc, j| acc.mul_ref(&qnum(a - j, q)))
}

/// `∏_{i<j} [λ_i − λ_j + k(j−i) + k − 1]_{q,k}`, the normalizer in the
/// symmetry identity.
pub fn qnum_product<T: Scalar>(lambda: &[i64], k: i64, q: &T) -> T {
    let mut acc = T::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            let a = lambda[i] - lambda[j] + k * (j as i64 - i as i64) + k - 1;
            acc = acc.mul_ref(&qnum_falling(a, k, q));
        }
    }
    acc
}
