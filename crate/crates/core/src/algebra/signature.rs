use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// A weakly decreasing tuple. Indexes orbits, spectral parameters and
/// Macdonald polynomials alike.
#[derive(Clone, PartialEq)]
pub struct Signature<T = f64>(Vec<T>);

impl<T: PartialOrd + Clone + fmt::Debug> Signature<T> {
    pub fn new(parts: Vec<T>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("signature {parts:?} is not weakly decreasing")));
        }
        Ok(Signature(parts))
    }

    /// Sorts into decreasing order. Returns whether the input was reordered.
    pub fn sorted(mut parts: Vec<T>) -> (Self, bool) {
        let was_sorted = !parts.windows(2).any(|w| w[0] < w[1]);
        if !was_sorted {
            parts.sort_by(|a, b| b.partial_cmp(a).expect("comparable parts"));
        }
        (Signature(parts), !was_sorted)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[T] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<T> {
        self.0
    }

    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Rejects repeated parts; for formulas that degenerate on walls.
    pub fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::Degenerate(format!("{:?}", self.0)))
        }
    }
}

impl Signature<f64> {
    /// The Weyl vector `ρ_i = (N + 1)/2 − i`.
    pub fn rho(n: usize) -> Self {
        Signature((1..=n).map(|i| (n as f64 + 1.0) / 2.0 - i as f64).collect())
    }

    /// `c · ρ`.
    pub fn scaled_rho(n: usize, c: f64) -> Self {
        Signature(Self::rho(n).0.into_iter().map(|r| c * r).collect())
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl Signature<Rational> {
    pub fn rho(n: usize) -> Self {
        Signature((1..=n as i64).map(|i| rat(n as i64 + 1 - 2 * i, 2)).collect())
    }
}

impl<T: fmt::Debug> fmt::Debug for Signature<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl<T> std::ops::Index<usize> for Signature<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// `(ρ, ρ) = (N³ − N)/12`.
pub fn rho_norm_squared(n: usize) -> f64 {
    let n = n as f64;
    (n * n * n - n) / 12.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_is_centered_and_unit_spaced() {
        let r = Signature::<f64>::rho(4);
        assert_eq!(r.parts(), &[1.5, 0.5, -0.5, -1.5]);
        assert_eq!(r.total(), 0.0);
        let exact = Signature::<Rational>::rho(3);
        assert_eq!(exact.parts(), &[rat(1, 1), rat(0, 1), rat(-1, 1)]);
        let sq: f64 = r.parts().iter().map(|x| x * x).sum();
        assert_eq!(sq, rho_norm_squared(4));
    }

    #[test]
    fn ordering_is_enforced() {
        assert!(Signature::new(vec![1.0, 2.0]).is_err());
        let (s, moved) = Signature::sorted(vec![0.0, 2.0, 1.0]);
        assert!(moved);
        assert_eq!(s.parts(), &[2.0, 1.0, 0.0]);
        let s = Signature::new(vec![1.0, 1.0]).unwrap();
        assert!(!s.is_regular());
        assert!(matches!(s.require_regular(), Err(Error::Degenerate(_))));
    }
}
