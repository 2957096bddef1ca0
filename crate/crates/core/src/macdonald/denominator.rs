use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational, Scalar};

fn product_part<T: Scalar>(x: &[T], q: &T, k: i64) -> T {
    let mut acc = T::one();
    let q2 = q.mul_ref(q);
    for a in 1..k {
        let qa = q2.powi(a);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                acc = acc.mul_ref(&(x[i].clone() - qa.mul_ref(&x[j])));
            }
        }
    }
    acc
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `(x_1⋯x_N)^{−(k−1)(N−1)/2} ∏_{a=1}^{k−1} ∏_{i<j} (x_i − q^{2a} x_j)`.
///
/// When the exponent is a half-integer the value is rational only if
/// `x_1⋯x_N` is a square of a positive rational; otherwise this returns
/// [`Error::Unsupported`] and [`ek_denominator_f64`] should be used.
pub fn ek_denominator(x: &[Rational], q: &Rational, k: i64) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
    }
    if x.iter().any(Scalar::is_zero) {
        return Err(Error::InvalidInput("coordinates must be nonzero".into()));
    }
    let n = x.len() as i64;
    let twice_exp = (k - 1) * (n - 1);
    let prod = x.iter().fold(rat_int(1), |p, v| p * v);
    let base = if twice_exp % 2 == 0 {
        prod.powi(-(twice_exp / 2))
    } else {
        let root = match (exact_sqrt(prod.numer()), exact_sqrt(prod.denom())) {
            (Some(a), Some(b)) => Rational::new(a, b),
            _ => return Err(Error::Unsupported(format!("product of coordinates {prod} has no rational square root"))),
        };
        root.powi(-twice_exp)
    };
    Ok(base * product_part(x, q, k))
}

/// Floating-point version; requires a positive coordinate product when the
/// exponent is a half-integer.
pub fn ek_denominator_f64(x: &[f64], q: f64, k: i64) -> f64 {
    let n = x.len() as i64;
    let prod: f64 = x.iter().product();
    prod.powf(-((k - 1) * (n - 1)) as f64 / 2.0) * product_part(x, &q, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn documented_values() {
        assert_eq!(ek_denominator(&[rat(3, 2), rat(-7, 1)], &rat(1, 2), 1).unwrap(), rat_int(1));
        assert_eq!(ek_denominator(&[rat_int(1), rat_int(1)], &rat_int(1), 2).unwrap(), rat_int(0));
        assert_eq!(ek_denominator(&[rat_int(4), rat_int(1)], &rat(1, 2), 2).unwrap(), rat(15, 8));
        assert!((ek_denominator_f64(&[4.0, 1.0], 0.5, 2) - 1.875).abs() < 1e-15);
    }

    #[test]
    fn integral_exponent_needs_no_root() {
        // N = 3, k = 2: exponent −1.
        let x = [rat(2, 1), rat(3, 1), rat(5, 1)];
        let got = ek_denominator(&x, &rat(1, 3), 2).unwrap();
        let q2 = rat(1, 9);
        let expected =
            (rat_int(2) - &q2 * rat_int(3)) * (rat_int(2) - &q2 * rat_int(5)) * (rat_int(3) - &q2 * rat_int(5))
                / rat_int(30);
        assert_eq!(got, expected);
        let xf = [2.0, 3.0, 5.0];
        assert!((ek_denominator_f64(&xf, 1.0 / 3.0, 2) - crate::scalar::rational_to_f64(&expected)).abs() < 1e-14);
    }

    #[test]
    fn irrational_root_is_reported() {
        assert!(matches!(ek_denominator(&[rat_int(2), rat_int(1)], &rat(1, 2), 2), Err(Error::Unsupported(_))));
    }
}
