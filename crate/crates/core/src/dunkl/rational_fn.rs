use std::collections::BTreeMap;

use crate::algebra::SparsePoly;
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational, Scalar};

/// `numerator / ∏_{a<b} (x_a − x_b)^{e_ab}`.
///
/// The denominator is kept as a factor map and never expanded, so operator
/// identities reduce to polynomial identities after cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunctionPair {
    pub numerator: SparsePoly,
    pub denominator: BTreeMap<(usize, usize), u32>,
}

fn normalize(a: usize, b: usize) -> ((usize, usize), bool) {
    if a < b {
        ((a, b), false)
    } else {
        ((b, a), true)
    }
}

fn factor(vars: &[String], key: (usize, usize)) -> SparsePoly {
    SparsePoly::difference(vars, key.0, key.1).expect("factor indices are validated on insertion")
}

impl RationalFunctionPair {
    pub fn polynomial(p: SparsePoly) -> Self {
        RationalFunctionPair { numerator: p, denominator: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        Self::polynomial(SparsePoly::constant(vars, c))
    }

    pub fn new(numerator: SparsePoly, factors: &[((usize, usize), u32)]) -> Result<Self> {
        let mut out = Self::polynomial(numerator);
        for &((a, b), e) in factors {
            for _ in 0..e {
                out = out.div_by_factor(a, b)?;
            }
        }
        Ok(out)
    }

    pub fn vars(&self) -> &[String] {
        self.numerator.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Divides by `x_a − x_b`.
    pub fn div_by_factor(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.numerator.nvars();
        if a == b || a >= n || b >= n {
            return Err(Error::IndexOutOfRange { index: a.max(b), nvars: n });
        }
        let (key, flip) = normalize(a, b);
        let mut out = self.clone();
        *out.denominator.entry(key).or_insert(0) += 1;
        if flip {
            out.numerator = -out.numerator;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunctionPair { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    /// Multiplies the numerator by the factors needed to reach `target`,
    /// which must contain this denominator.
    fn lift(&self, target: &BTreeMap<(usize, usize), u32>) -> SparsePoly {
        let mut num = self.numerator.clone();
        for (&key, &e) in target {
            let have = self.denominator.get(&key).copied().unwrap_or(0);
            if e > have {
                num = &num * &factor(self.vars(), key).pow(e - have);
            }
        }
        num
    }

    fn union(&self, other: &Self) -> BTreeMap<(usize, usize), u32> {
        let mut den = self.denominator.clone();
        for (&key, &e) in &other.denominator {
            let slot = den.entry(key).or_insert(0);
            *slot = (*slot).max(e);
        }
        den
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.union(other);
        RationalFunctionPair { numerator: self.lift(&den) + other.lift(&den), denominator: den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.denominator.clone();
        for (&key, &e) in &other.denominator {
            *den.entry(key).or_insert(0) += e;
        }
        RationalFunctionPair { numerator: &self.numerator * &other.numerator, denominator: den }
    }

    /// `∂_i` by the quotient rule: only factors involving `x_i` grow.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        let vars = self.vars().to_vec();
        let touching: Vec<((usize, usize), u32)> = self
            .denominator
            .iter()
            .filter(|(&(a, b), &e)| (a == i || b == i) && e > 0)
            .map(|(&k, &e)| (k, e))
            .collect();
        let mut prod_all = SparsePoly::one(&vars);
        for &(key, _) in &touching {
            prod_all = &prod_all * &factor(&vars, key);
        }
        let mut numerator = &self.numerator.derivative(i)? * &prod_all;
        for (idx, &(key, e)) in touching.iter().enumerate() {
            // ∂_i (x_a − x_b) is +1 when i = a and −1 when i = b.
            let sign = if key.0 == i { -(e as i64) } else { e as i64 };
            let mut others = SparsePoly::one(&vars);
            for (jdx, &(k2, _)) in touching.iter().enumerate() {
                if jdx != idx {
                    others = &others * &factor(&vars, k2);
                }
            }
            numerator = numerator + (&self.numerator * &others).scale(&rat_int(sign));
        }
        let mut den = self.denominator.clone();
        for &(key, _) in &touching {
            *den.get_mut(&key).unwrap() += 1;
        }
        Ok(RationalFunctionPair { numerator, denominator: den })
    }

    /// `s_ij` acting on both numerator and denominator.
    pub fn swap(&self, i: usize, j: usize) -> Result<Self> {
        let perm = |v: usize| {
            if v == i {
                j
            } else if v == j {
                i
            } else {
                v
            }
        };
        let mut numerator = self.numerator.apply_transposition(i, j)?;
        let mut den = BTreeMap::new();
        let mut odd = false;
        for (&(a, b), &e) in &self.denominator {
            let (key, flip) = normalize(perm(a), perm(b));
            if flip && e % 2 == 1 {
                odd = !odd;
            }
            *den.entry(key).or_insert(0) += e;
        }
        if odd {
            numerator = -numerator;
        }
        Ok(RationalFunctionPair { numerator, denominator: den })
    }

    /// Cancels every declared factor that divides the numerator.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        let keys: Vec<(usize, usize)> = out.denominator.keys().copied().collect();
        for key in keys {
            while out.denominator[&key] > 0 {
                match out.numerator.div_by_difference(key.0, key.1) {
                    Ok(q) => {
                        out.numerator = q;
                        *out.denominator.get_mut(&key).unwrap() -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        out.denominator.retain(|_, e| *e > 0);
        out
    }

    pub fn eval<T: Scalar>(&self, point: &[T]) -> Result<T> {
        let num = self.numerator.map_coeffs(|c| T::from_rational(c)).eval(point)?;
        let mut den = T::one();
        for (&(a, b), &e) in &self.denominator {
            den = den.mul_ref(&(point[a].clone() - point[b].clone()).powi(e as i64));
        }
        if den.is_zero() {
            return Err(Error::Degenerate(format!("denominator vanishes at the point {point:?}")));
        }
        Ok(num / den)
    }
}

impl PartialEq for RationalFunctionPair {
    /// Exact comparison after bringing both sides over a common denominator.
    fn eq(&self, other: &Self) -> bool {
        let den = self.union(other);
        self.lift(&den) == other.lift(&den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var_names;
    use crate::scalar::rat;

    fn vars() -> Vec<String> {
        var_names("x", 3)
    }

    fn x(i: usize) -> SparsePoly {
        SparsePoly::var(&vars(), i).unwrap()
    }

    #[test]
    fn arithmetic_matches_pointwise_values() {
        let f = RationalFunctionPair::new(&x(0) * &x(1) + x(2), &[((0, 1), 2), ((2, 0), 1)]).unwrap();
        let g = RationalFunctionPair::new(x(1) - x(2).scale(&rat(3, 1)), &[((1, 2), 1), ((0, 1), 1)]).unwrap();
        let p = [rat(2, 1), rat(-1, 3), rat(5, 4)];
        let (fv, gv) = (f.eval(&p).unwrap(), g.eval(&p).unwrap());
        assert_eq!(f.add(&g).eval(&p).unwrap(), &fv + &gv);
        assert_eq!(f.sub(&g).eval(&p).unwrap(), &fv - &gv);
        assert_eq!(f.mul(&g).eval(&p).unwrap(), &fv * &gv);
        assert_eq!(
            f.swap(0, 2).unwrap().eval(&p).unwrap(),
            f.eval(&[p[2].clone(), p[1].clone(), p[0].clone()]).unwrap()
        );
    }

    #[test]
    fn derivative_matches_difference_quotient_limit() {
        // d/dx0 of 1/(x0 − x1)² is −2/(x0 − x1)³.
        let f = RationalFunctionPair::new(SparsePoly::one(&vars()), &[((0, 1), 2)]).unwrap();
        let expected = RationalFunctionPair::new(SparsePoly::constant(&vars(), rat_int(-2)), &[((0, 1), 3)]).unwrap();
        assert_eq!(f.derivative(0).unwrap(), expected);
        // and with respect to x1 the sign flips.
        assert_eq!(f.derivative(1).unwrap(), expected.scale(&rat_int(-1)));
        // x2 does not appear.
        assert!(f.derivative(2).unwrap().is_zero());
    }

    #[test]
    fn reduce_cancels_common_factors() {
        let num = &(x(0) - x(1)) * &(x(1) - x(2));
        let f = RationalFunctionPair::new(num, &[((0, 1), 2), ((1, 2), 1)]).unwrap().reduce();
        assert_eq!(f.numerator, SparsePoly::one(&vars()));
        assert_eq!(f.denominator.into_iter().collect::<Vec<_>>(), vec![((0, 1), 1)]);
    }

    #[test]
    fn equality_ignores_representation() {
        let a = RationalFunctionPair::new(x(0) + x(1), &[((0, 1), 1)]).unwrap();
        let b = RationalFunctionPair::new(&(x(0) + x(1)) * &(x(0) - x(1)), &[((0, 1), 2)]).unwrap();
        let c = RationalFunctionPair::new(x(0) + x(1), &[((1, 0), 1)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, c.scale(&rat_int(-1)));
    }
}
