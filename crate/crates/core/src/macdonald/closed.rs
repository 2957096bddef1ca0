use crate::scalar::Scalar;

/// `P_{(n)}(x_1, x_2; q², t²)` from the two-variable closed form
///
/// `P_(n) = Σ_r c_r c_{n−r} / c_n · x_1^r x_2^{n−r}`,
/// `c_r = ∏_{i<r} (1 − t² q^{2i}) / (1 − q^{2i+2})`.
///
/// Works in any field so the limit suite can run it at several hundred
/// bits. `P_{(a,b)} = (x_1 x_2)^b P_{(a−b)}` covers two-row partitions.
pub fn macdonald_two_var_closed<T: Scalar>(n: usize, q: &T, t: &T, x1: &T, x2: &T) -> T {
    let q2 = q.mul_ref(q);
    let t2 = t.mul_ref(t);
    let mut c = Vec::with_capacity(n + 1);
    c.push(T::one());
    let mut qi = T::one();
    for _ in 0..n {
        let next_q = qi.mul_ref(&q2);
        let ratio = (T::one() - t2.mul_ref(&qi)) / (T::one() - next_q.clone());
        let last = c.last().unwrap().mul_ref(&ratio);
        c.push(last);
        qi = next_q;
    }
    let mut x1_pow = Vec::with_capacity(n + 1);
    let mut x2_pow = Vec::with_capacity(n + 1);
    x1_pow.push(T::one());
    x2_pow.push(T::one());
    for i in 0..n {
        x1_pow.push(x1_pow[i].mul_ref(x1));
        x2_pow.push(x2_pow[i].mul_ref(x2));
    }
    let mut acc = T::zero();
    for r in 0..=n {
        let term = c[r].mul_ref(&c[n - r]).mul_ref(&x1_pow[r]).mul_ref(&x2_pow[n - r]);
        acc.add_assign_ref(&term);
    }
    acc / c[n].clone()
}

/// Two-row version: `P_{(a,b)}(x_1, x_2) = (x_1 x_2)^b P_{(a−b)}(x_1, x_2)`.
pub fn macdonald_two_var_closed_pair<T: Scalar>(a: usize, b: usize, q: &T, t: &T, x1: &T, x2: &T) -> T {
    assert!(a >= b, "({a}, {b}) is not a partition");
    x1.mul_ref(x2).powi(b as i64).mul_ref(&macdonald_two_var_closed(a - b, q, t, x1, x2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::{macdonald_poly, MacParams};
    use crate::scalar::{rat, rat_int, Hp, Rational};

    #[test]
    fn low_degrees() {
        let (q, t, x1, x2) = (rat(1, 3), rat(2, 5), rat(7, 2), rat(-1, 4));
        assert_eq!(macdonald_two_var_closed(0, &q, &t, &x1, &x2), rat_int(1));
        assert_eq!(macdonald_two_var_closed(1, &q, &t, &x1, &x2), &x1 + &x2);
    }

    #[test]
    fn agrees_exactly_with_the_eigen_solver() {
        let cases = [
            (rat(1, 2), rat(2, 3), rat(3, 1), rat(-5, 7)),
            (rat(3, 2), rat(1, 4), rat(2, 9), rat(4, 5)),
            (rat(-2, 5), rat(5, 3), rat(-1, 3), rat(6, 1)),
        ];
        for (q, t, x1, x2) in cases {
            let params = MacParams::new(q.clone(), t.clone()).unwrap();
            for n in 0..=8usize {
                for b in 0..=2usize {
                    let engine = macdonald_poly(&[(n + b) as i32, b as i32], &params, 2).unwrap();
                    let expected = engine.eval(&[x1.clone(), x2.clone()]).unwrap();
                    let got: Rational = macdonald_two_var_closed_pair(n + b, b, &q, &t, &x1, &x2);
                    assert_eq!(got, expected, "n={n} b={b} q={q} t={t}");
                }
            }
        }
    }

    #[test]
    fn high_precision_tracks_rational_value() {
        let (q, t, x1, x2) = (rat(4, 5), rat(3, 5), rat(6, 5), rat(1, 2));
        let exact: Rational = macdonald_two_var_closed(30, &q, &t, &x1, &x2);
        let h = |r: &Rational| Hp::from_rational_prec(r, 256);
        let approx = macdonald_two_var_closed(30, &h(&q), &h(&t), &h(&x1), &h(&x2));
        let diff = (approx - h(&exact)).abs().to_f64();
        assert!(diff <= 1e-60 * crate::scalar::rational_to_f64(&exact).abs(), "{diff}");
    }
}
