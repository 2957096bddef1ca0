use crate::scalar::Scalar;

/// Coefficient of `∏_i x_i^{target[i]}` in `∏_j L_j(x)^{powers[j]}`, where
/// `L_j(x) = Σ_i forms[j][i] x_i`.
///
/// Expands one linear factor at a time over a dense table of exponent
/// vectors capped at `target`, so the work is bounded by
/// `∏(target_i + 1) · n · Σ powers`.
pub fn coefficient_of_product<T: Scalar>(forms: &[Vec<T>], powers: &[u32], target: &[u32]) -> T {
    let n = target.len();
    assert!(forms.iter().all(|f| f.len() == n), "form length");
    assert_eq!(forms.len(), powers.len());
    let total: u32 = powers.iter().sum();
    if total != target.iter().sum::<u32>() {
        return T::zero();
    }
    // Mixed-radix strides for the dense table.
    let mut strides = vec![1usize; n];
    for i in 1..n {
        strides[i] = strides[i - 1] * (target[i - 1] as usize + 1);
    }
    let size = if n == 0 { 1 } else { strides[n - 1] * (target[n - 1] as usize + 1) };
    let mut table = vec![T::zero(); size];
    table[0] = T::one();
    let mut digits = vec![0u32; n];
    for (form, &p) in forms.iter().zip(powers) {
        for _ in 0..p {
            let mut next = vec![T::zero(); size];
            for (idx, val) in table.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                decode(idx, target, &mut digits);
                for i in 0..n {
                    if digits[i] < target[i] && !form[i].is_zero() {
                        next[idx + strides[i]].add_assign_ref(&val.mul_ref(&form[i]));
                    }
                }
            }
            table = next;
        }
    }
    table[size - 1].clone()
}

fn decode(mut idx: usize, target: &[u32], digits: &mut [u32]) {
    for (d, &t) in digits.iter_mut().zip(target) {
        let base = t as usize + 1;
        *d = (idx % base) as u32;
        idx /= base;
    }
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rational};

    #[test]
    fn counts_multinomials() {
        // coefficient of x1 x2 x3 in (x1 + x2 + x3)^3 is 3! = 6
        let ones = vec![vec![rat_int(1); 3]];
        let c: Rational = coefficient_of_product(&ones, &[3], &[1, 1, 1]);
        assert_eq!(c, rat_int(6));
        // coefficient of (x1 x2)^2 in (x1 + x2)^4 is C(4,2) = 6
        let c: f64 = coefficient_of_product(&[vec![1.0, 1.0]], &[4], &[2, 2]);
        assert_eq!(c, 6.0);
    }

    #[test]
    fn empty_product_is_one() {
        let c: f64 = coefficient_of_product::<f64>(&[], &[], &[0, 0]);
        assert_eq!(c, 1.0);
    }

    #[test]
    fn mismatched_degree_gives_zero() {
        let c: f64 = coefficient_of_product(&[vec![2.0, 3.0]], &[2], &[1, 0]);
        assert_eq!(c, 0.0);
    }

    #[test]
    fn matches_hand_expansion() {
        // (a x + b y)(c x + d y): coefficient of x y is a d + b c
        let (a, b, c, d) = (2.0, 3.0, 5.0, 7.0);
        let v: f64 = coefficient_of_product(&[vec![a, b], vec![c, d]], &[1, 1], &[1, 1]);
        assert_eq!(v, a * d + b * c);
    }
}
