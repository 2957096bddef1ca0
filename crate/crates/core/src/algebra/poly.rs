use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Exponent vector; negative entries make the polynomial a Laurent one.
pub type Exponents = Vec<i32>;

/// Sparse multivariate Laurent polynomial.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality (for exact coefficient types).
#[derive(Clone, PartialEq)]
pub struct SparsePoly<C: Scalar = Rational> {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Scalar> SparsePoly<C> {
    pub fn zero(vars: &[String]) -> Self {
        SparsePoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: &[String], i: usize) -> Result<Self> {
        check_index(i, vars.len())?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, e, C::one()))
    }

    pub fn monomial(vars: &[String], exps: Exponents, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    /// `x_i - x_j`.
    pub fn difference(vars: &[String], i: usize, j: usize) -> Result<Self> {
        Ok(Self::var(vars, i)? - Self::var(vars, j)?)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Accumulates `c · x^exps`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let shifted = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(shifted, v.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest power of `x_i` that occurs.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    /// `s_ij f`: exchanges variables `i` and `j` in every exponent vector.
    pub fn apply_transposition(&self, i: usize, j: usize) -> Result<Self> {
        check_index(i, self.nvars())?;
        check_index(j, self.nvars())?;
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.terms.insert(e, v.clone());
        }
        Ok(out)
    }

    /// The divided difference `(f − s_ij f)/(x_i − x_j)`.
    ///
    /// Computed monomial by monomial: `x_i^a x_j^b − x_i^b x_j^a` factors as
    /// `(x_i x_j)^min(a,b)` times a geometric sum, so the quotient is exact by
    /// construction, Laurent exponents included.
    pub fn exact_divide_difference(&self, i: usize, j: usize) -> Result<Self> {
        check_index(i, self.nvars())?;
        check_index(j, self.nvars())?;
        if i == j {
            return Err(Error::InvalidInput("divided difference needs i != j".into()));
        }
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let (a, b) = (e[i], e[j]);
            if a == b {
                continue;
            }
            let (lo, gap, coeff) = if a > b { (b, a - b, v.clone()) } else { (a, b - a, -v.clone()) };
            for t in 0..gap {
                let mut m = e.clone();
                m[i] = lo + t;
                m[j] = lo + gap - 1 - t;
                out.add_term(m, coeff.clone());
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> Result<Self> {
        check_index(i, self.nvars())?;
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut m = e.clone();
            m[i] -= 1;
            out.add_term(m, v.mul_ref(&C::from_i64(e[i] as i64)));
        }
        Ok(out)
    }

    /// Euler operator `x_i ∂_i`, i.e. `∂/∂μ_i` when `x_i = e^{μ_i}`.
    pub fn euler(&self, i: usize) -> Result<Self> {
        check_index(i, self.nvars())?;
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul_ref(&C::from_i64(e[i] as i64)));
        }
        Ok(out)
    }

    /// Exact quotient by `x_i − x_j`, failing if there is a remainder.
    ///
    /// Synthetic division in `x_i` with coefficients in the other variables.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        check_index(i, self.nvars())?;
        check_index(j, self.nvars())?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Shift to nonnegative powers of x_i; the shift is undone afterwards.
        let shift = self.min_degree_in(i).unwrap_or(0).min(0);
        let mut groups: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, v) in &self.terms {
            let mut rest = e.clone();
            let d = rest[i] - shift;
            rest[i] = 0;
            groups.entry(d).or_insert_with(|| Self::zero(&self.vars)).add_term(rest, v.clone());
        }
        let top = *groups.keys().next_back().unwrap();
        let mut xj = vec![0; self.nvars()];
        xj[j] = 1;
        let mut quotient = Self::zero(&self.vars);
        let mut carry = Self::zero(&self.vars);
        for d in (0..=top).rev() {
            let c = groups.remove(&d).unwrap_or_else(|| Self::zero(&self.vars));
            let current = c + carry;
            if d == 0 {
                if !current.is_zero() {
                    return Err(Error::NotDivisible(format!(
                        "remainder after dividing by {} - {}",
                        self.vars[i], self.vars[j]
                    )));
                }
                break;
            }
            let mut e = vec![0; self.nvars()];
            e[i] = d - 1 + shift;
            quotient = quotient + current.mul_monomial(&e);
            carry = current.mul_monomial(&xj);
        }
        Ok(quotient)
    }

    /// Renames variables: old variable `v` becomes new variable `map[v]`.
    /// Several old variables may collapse onto one new variable.
    pub fn substitute_vars(&self, new_vars: &[String], map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars() {
            return Err(Error::InvalidInput("substitution map length".into()));
        }
        for &t in map {
            check_index(t, new_vars.len())?;
        }
        let mut out = Self::zero(new_vars);
        for (e, v) in &self.terms {
            let mut m = vec![0; new_vars.len()];
            for (old, &new) in map.iter().enumerate() {
                m[new] += e[old];
            }
            out.add_term(m, v.clone());
        }
        Ok(out)
    }

    /// Replaces variable `i` by a constant, keeping the variable slot (now
    /// absent from every term).
    pub fn specialize(&self, i: usize, value: &C) -> Result<Self> {
        check_index(i, self.nvars())?;
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let mut m = e.clone();
            let p = m[i];
            m[i] = 0;
            out.add_term(m, v.mul_ref(&value.powi(p as i64)));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut acc = C::zero();
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (x, &p) in point.iter().zip(e) {
                if p != 0 {
                    t = t.mul_ref(&x.powi(p as i64));
                }
            }
            acc.add_assign_ref(&t);
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        let mut out = SparsePoly::<D>::zero(&self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }

    /// Invariance under every transposition among `indices`.
    pub fn is_symmetric_in(&self, indices: &[usize]) -> Result<bool> {
        for w in indices.windows(2) {
            if self.apply_transposition(w[0], w[1])? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "{}", Error::VariableMismatch);
    }
}

fn check_index(i: usize, nvars: usize) -> Result<()> {
    if i < nvars {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, nvars })
    }
}

/// Variable names `prefix1, prefix2, …`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<C: Scalar> Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn add(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl<C: Scalar> Add for SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn add(mut self, rhs: SparsePoly<C>) -> SparsePoly<C> {
        self.same_vars(&rhs);
        for (e, v) in rhs.terms {
            self.add_term(e, v);
        }
        self
    }
}

impl<C: Scalar> Neg for SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn neg(mut self) -> SparsePoly<C> {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl<C: Scalar> Sub for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn sub(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        self.same_vars(rhs);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), -v.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn sub(self, rhs: SparsePoly<C>) -> SparsePoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &SparsePoly<C>) -> SparsePoly<C> {
        self.same_vars(rhs);
        let mut out = SparsePoly::zero(&self.vars);
        let mut buf = vec![0; self.nvars()];
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                for ((slot, a), b) in buf.iter_mut().zip(ea).zip(eb) {
                    *slot = a + b;
                }
                out.add_term(buf.clone(), va.mul_ref(vb));
            }
        }
        out
    }
}

impl<C: Scalar> Mul for SparsePoly<C> {
    type Output = SparsePoly<C>;
    fn mul(self, rhs: SparsePoly<C>) -> SparsePoly<C> {
        &self * &rhs
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest-degree terms first reads more naturally.
        for (n, (e, v)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})")?;
            for (name, &p) in self.vars.iter().zip(e) {
                match p {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar + fmt::Display> fmt::Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.vars.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn xy() -> Vec<String> {
        var_names("x", 2)
    }

    fn x(i: usize) -> SparsePoly {
        SparsePoly::var(&xy(), i).unwrap()
    }

    #[test]
    fn transposition_examples() {
        let f = &(&x(0) * &x(0)) * &x(1);
        let g = &(&x(1) * &x(1)) * &x(0);
        assert_eq!(f.apply_transposition(0, 1).unwrap(), g);
        let s = &x(0) + &x(1);
        assert_eq!(s.apply_transposition(0, 1).unwrap(), s);
        let a = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(a.apply_transposition(0, 1).unwrap(), -a.clone());
        assert!(matches!(a.apply_transposition(0, 2), Err(Error::IndexOutOfRange { index: 2, nvars: 2 })));
    }

    #[test]
    fn divided_difference_examples() {
        let sq = &x(0) * &x(0);
        assert_eq!(sq.exact_divide_difference(0, 1).unwrap(), &x(0) + &x(1));
        let sym = &x(0) + &x(1);
        assert!(sym.exact_divide_difference(0, 1).unwrap().is_zero());
        let prod = &x(0) * &x(1);
        assert!(prod.exact_divide_difference(0, 1).unwrap().is_zero());
    }

    #[test]
    fn divided_difference_handles_laurent_monomials() {
        // (x^-1 - y^-1)/(x - y) = -1/(xy)
        let f = SparsePoly::monomial(&xy(), vec![-1, 0], rat_int(1));
        let d = f.exact_divide_difference(0, 1).unwrap();
        assert_eq!(d, SparsePoly::monomial(&xy(), vec![-1, -1], rat_int(-1)));
    }

    #[test]
    fn synthetic_division_recovers_factor_and_detects_remainder() {
        let diff = SparsePoly::difference(&xy(), 0, 1).unwrap();
        let f = &diff * &(&x(0) + &SparsePoly::constant(&xy(), rat(3, 2)));
        let q = f.div_by_difference(0, 1).unwrap();
        assert_eq!(&q * &diff, f);
        assert!(x(0).div_by_difference(0, 1).is_err());
        let laurent = f.mul_monomial(&[-2, 1]);
        let q = laurent.div_by_difference(0, 1).unwrap();
        assert_eq!(&q * &diff, laurent);
    }

    #[test]
    fn evaluation_and_derivative() {
        let f = &(&x(0) * &x(0)) * &x(1) + SparsePoly::constant(&xy(), rat_int(5));
        let v = f.eval(&[rat_int(2), rat(1, 2)]).unwrap();
        assert_eq!(v, rat_int(7));
        let d = f.derivative(0).unwrap();
        assert_eq!(d, (&x(0) * &x(1)).scale(&rat_int(2)));
        assert!(f.eval(&[rat_int(1)]).is_err());
    }

    #[test]
    fn substitution_merges_variables() {
        let f = &x(0) * &x(1);
        let g = f.substitute_vars(&["m".to_string()], &[0, 0]).unwrap();
        assert_eq!(g, SparsePoly::monomial(&["m".to_string()], vec![2], rat_int(1)));
    }
}
