use std::collections::BTreeMap;

use crate::algebra::symmetric::{distinct_permutations, dominated_by, monomial_symmetric, pad_partition, partitions};
use crate::algebra::{var_names, SparsePoly};
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Rational, Scalar};

use super::operators::{apply_dr, eigenvalue};
use super::MacParams;

/// `P_λ(x; q², t²)` expanded in monomial symmetric functions.
#[derive(Clone, Debug, PartialEq)]
pub struct MacdonaldPoly {
    pub lambda: Vec<i32>,
    pub n: usize,
    pub params: MacParams,
    /// `(μ, a_μ)` over the dominance ideal below `λ`, `λ` first.
    pub coefficients: Vec<(Vec<i32>, Rational)>,
}

impl MacdonaldPoly {
    pub fn coefficient(&self, mu: &[i32]) -> Rational {
        self.coefficients.iter().find(|(m, _)| m.as_slice() == mu).map(|(_, c)| c.clone()).unwrap_or_else(|| rat_int(0))
    }

    pub fn to_poly(&self, vars: &[String]) -> SparsePoly {
        let idx: Vec<usize> = (0..self.n).collect();
        let mut out = SparsePoly::zero(vars);
        for (mu, c) in &self.coefficients {
            out = out + monomial_symmetric::<Rational>(vars, &idx, mu).scale(c);
        }
        out
    }

    /// Evaluates at a point with entries in any field, summing monomials
    /// directly (no polynomial is materialized).
    pub fn eval<T: Scalar>(&self, x: &[T]) -> Result<T> {
        if x.len() != self.n {
            return Err(Error::InvalidInput(format!("point has {} coordinates, expected {}", x.len(), self.n)));
        }
        let mut acc = T::zero();
        for (mu, c) in &self.coefficients {
            let mut m = T::zero();
            for perm in distinct_permutations(mu) {
                let term = perm.iter().zip(x).fold(T::one(), |p, (&e, xi)| p.mul_ref(&xi.powi(e as i64)));
                m.add_assign_ref(&term);
            }
            acc.add_assign_ref(&T::from_rational(c).mul_ref(&m));
        }
        Ok(acc)
    }
}

/// Computes `P_λ` by a triangular solve of the `D^1` eigenproblem on the
/// dominance-ordered monomial basis.
///
/// `D^1` maps `m_μ` into the span of `m_ν` with `ν ≤ μ`, with diagonal entry
/// equal to its eigenvalue on `P_μ`. Writing `P_λ = Σ a_ν m_ν` with
/// `a_λ = 1`, each remaining coefficient follows from those above it as
/// `a_ν (E_λ − E_ν) = Σ_{ν < μ ≤ λ} a_μ [m_ν] D^1 m_μ`.
pub fn macdonald_poly(lambda: &[i32], params: &MacParams, n: usize) -> Result<MacdonaldPoly> {
    let lam = pad_partition(lambda, n)?;
    let size: i32 = lam.iter().sum();
    // Reverse-lexicographic order is a linear extension of dominance.
    let basis: Vec<Vec<i32>> = partitions(size, n).into_iter().filter(|mu| dominated_by(mu, &lam)).collect();
    debug_assert_eq!(basis.first(), Some(&lam));

    let as_i64 = |p: &[i32]| p.iter().map(|&v| v as i64).collect::<Vec<_>>();
    let e_lambda = eigenvalue(1, &as_i64(&lam), params);
    let vars = var_names("x", n);
    let idx: Vec<usize> = (0..n).collect();

    // Row μ of the D^1 matrix: [m_ν] D^1 m_μ for ν in the basis.
    let mut rows: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    for (a, mu) in basis.iter().enumerate() {
        let image = apply_dr(1, params, &monomial_symmetric(&vars, &idx, mu), n)?;
        let row: Vec<Rational> = basis.iter().map(|nu| image.coefficient(nu)).collect();
        let e_mu = eigenvalue(1, &as_i64(mu), params);
        if row[a] != e_mu {
            return Err(Error::Numerical(format!("D^1 diagonal entry at {mu:?} disagrees with its eigenvalue")));
        }
        if a > 0 && e_mu == e_lambda {
            return Err(Error::EigenvalueCollision(format!("{lam:?} vs {mu:?}")));
        }
        rows.insert(a, row);
    }

    let mut coeffs: Vec<Rational> = vec![rat_int(0); basis.len()];
    coeffs[0] = rat_int(1);
    for b in 1..basis.len() {
        let mut acc = rat_int(0);
        for a in 0..b {
            if !Scalar::is_zero(&coeffs[a]) {
                acc += &coeffs[a] * &rows[&a][b];
            }
        }
        coeffs[b] = acc / (&e_lambda - &rows[&b][b]);
    }
    Ok(MacdonaldPoly {
        lambda: lam,
        n,
        params: params.clone(),
        coefficients: basis.into_iter().zip(coeffs).filter(|(_, c)| !Scalar::is_zero(c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn degree_one_and_empty() {
        let p = MacParams::new(rat(1, 3), rat(2, 5)).unwrap();
        for n in 1..4 {
            let vars = var_names("x", n);
            let one = macdonald_poly(&[], &p, n).unwrap();
            assert_eq!(one.to_poly(&vars), SparsePoly::one(&vars));
            let e1 = macdonald_poly(&[1], &p, n).unwrap();
            let idx: Vec<usize> = (0..n).collect();
            assert_eq!(e1.to_poly(&vars), monomial_symmetric(&vars, &idx, &[1]));
        }
    }

    #[test]
    fn two_row_coefficient_matches_independent_solve() {
        // Independent route: solve the 2x2 eigenproblem for λ = (2) by hand.
        // D^1 m_(2) = E_(2) m_(2) + c21 m_(1,1) and D^1 m_(1,1) = E_(1,1) m_(1,1),
        // so a = c21 / (E_(2) − E_(1,1)); its closed form is
        // (1 + q²)(1 − t²)/(1 − q²t²).
        for (q, t) in [(rat(1, 2), rat(1, 4)), (rat(3, 2), rat(2, 7)), (rat(-2, 3), rat(5, 3))] {
            let p = MacParams::new(q.clone(), t.clone()).unwrap();
            let poly = macdonald_poly(&[2], &p, 2).unwrap();
            let q2 = &q * &q;
            let t2 = &t * &t;
            let expected = (rat_int(1) + &q2) * (rat_int(1) - &t2) / (rat_int(1) - &q2 * &t2);
            assert_eq!(poly.coefficient(&[1, 1]), expected);
            assert_eq!(poly.coefficient(&[2, 0]), rat_int(1));
        }
    }

    #[test]
    fn schur_case_when_t_equals_q() {
        // t = q gives Schur functions: s_(2,1) in three variables has
        // coefficient 2 on m_(1,1,1).
        let p = MacParams::new(rat(2, 3), rat(2, 3)).unwrap();
        let poly = macdonald_poly(&[2, 1], &p, 3).unwrap();
        assert_eq!(poly.coefficient(&[1, 1, 1]), rat_int(2));
    }

    #[test]
    fn point_evaluation_matches_expanded_polynomial() {
        let p = MacParams::new(rat(1, 2), rat(3, 4)).unwrap();
        let poly = macdonald_poly(&[3, 1], &p, 3).unwrap();
        let x = [rat(1, 3), rat(-2, 1), rat(5, 7)];
        let direct = poly.to_poly(&var_names("x", 3)).eval(&x).unwrap();
        assert_eq!(poly.eval(&x).unwrap(), direct);
    }

    #[test]
    fn rejects_too_many_parts() {
        let p = MacParams::new(rat(1, 2), rat(3, 4)).unwrap();
        assert!(macdonald_poly(&[1, 1, 1], &p, 2).is_err());
    }

    #[test]
    fn eigenrelation_sweep() {
        let params = [MacParams::new(rat(1, 2), rat(2, 3)).unwrap(), MacParams::new(rat(5, 3), rat(-3, 7)).unwrap()];
        for p in &params {
            for n in 1..=3usize {
                let vars = var_names("x", n);
                for size in 0..=5 {
                    for lambda in partitions(size, n) {
                        let poly = macdonald_poly(&lambda, p, n).unwrap();
                        let f = poly.to_poly(&vars);
                        let lam: Vec<i64> = lambda.iter().map(|&v| v as i64).collect();
                        for r in 1..=n {
                            let image = apply_dr(r, p, &f, n).unwrap();
                            assert_eq!(image, f.scale(&eigenvalue(r, &lam, p)), "λ={lambda:?} r={r}");
                        }
                        assert_eq!(poly.coefficient(&lambda), rat_int(1));
                        assert!(poly.coefficients.iter().all(|(mu, _)| dominated_by(mu, &poly.lambda)));
                    }
                }
            }
        }
    }
}
