//! The rank-change identity relating Dunkl operators in `(N−1)k` variables
//! at coupling `−1/k` with those in `N−1` variables at coupling `−k`, under
//! the collapse `μ_i^j ↦ μ_i`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::symmetric::{monomial_symmetric, partitions};
use crate::algebra::{var_names, SparsePoly};
use crate::error::{Error, Result};
use crate::scalar::{rat, rat_int, Rational, Scalar};

use super::operators::rational_dunkl_apply;

/// The symmetric polynomials `p` for which the identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricTag {
    P1,
    P2,
    P3,
    E2,
}

impl std::str::FromStr for SymmetricTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p1" => Ok(SymmetricTag::P1),
            "p2" => Ok(SymmetricTag::P2),
            "p3" => Ok(SymmetricTag::P3),
            "e2" => Ok(SymmetricTag::E2),
            other => Err(Error::InvalidInput(format!("unknown symmetric polynomial tag {other:?}"))),
        }
    }
}

/// Variables `μ_1^1, …, μ_1^k, …, μ_{N−1}^k`, row-major in `i`.
pub fn expanded_vars(n_mu: usize, k: usize) -> Vec<String> {
    (1..=n_mu).flat_map(|i| (1..=k).map(move |j| format!("m{i}_{j}"))).collect()
}

/// `Res_k`: substitutes `μ_i^j ↦ μ_i`.
pub fn res_k(f: &SparsePoly, n_mu: usize, k: usize) -> Result<SparsePoly> {
    let map: Vec<usize> = (0..n_mu * k).map(|v| v / k).collect();
    f.substitute_vars(&var_names("m", n_mu), &map)
}

fn dunkl_power(f: &SparsePoly, i: usize, c: &Rational, active: &[usize], times: usize) -> Result<SparsePoly> {
    let mut g = f.clone();
    for _ in 0..times {
        g = rational_dunkl_apply(i, c, &g, active)?;
    }
    Ok(g)
}

/// `p(D_1(c), …, D_n(c)) f`, where each variable may stand for several
/// identical arguments: `mult` copies each, and every argument is scaled by
/// `weight`. With `mult = 1, weight = 1` this is the plain symmetric
/// function of the Dunkl operators.
fn apply_symmetric(
    tag: SymmetricTag,
    f: &SparsePoly,
    c: &Rational,
    mult: usize,
    weight: &Rational,
) -> Result<SparsePoly> {
    let n = f.nvars();
    let active: Vec<usize> = (0..n).collect();
    let m = rat_int(mult as i64);
    let power_sum = |a: usize| -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(f.vars());
        for i in 0..n {
            acc = acc + dunkl_power(f, i, c, &active, a)?;
        }
        Ok(acc.scale(&(&m * weight.powi(a as i64))))
    };
    match tag {
        SymmetricTag::P1 => power_sum(1),
        SymmetricTag::P2 => power_sum(2),
        SymmetricTag::P3 => power_sum(3),
        SymmetricTag::E2 => {
            // e_2 of a multiset with each y_i repeated m times:
            // C(m,2) Σ y_i² + m² Σ_{i<i'} y_i y_i'.
            let w2 = weight.powi(2);
            let same = rat_int((mult * mult.saturating_sub(1) / 2) as i64);
            let mut acc = SparsePoly::zero(f.vars());
            for i in 0..n {
                let di = rational_dunkl_apply(i, c, f, &active)?;
                if !Scalar::is_zero(&same) {
                    acc = acc + rational_dunkl_apply(i, c, &di, &active)?.scale(&same);
                }
                for i2 in i + 1..n {
                    acc = acc + rational_dunkl_apply(i2, c, &di, &active)?.scale(&(&m * &m));
                }
            }
            Ok(acc.scale(&w2))
        }
    }
}

/// Both sides of the identity for `f` in [`expanded_vars`]`(N−1, k)`:
/// `Res_k(p(D_{μ_i^j}(−1/k)) f)` and `p((1/k)D_{μ_i}(−k) repeated k times)(Res_k f)`.
pub fn res_k_sides(tag: SymmetricTag, n: usize, k: usize, f: &SparsePoly) -> Result<(SparsePoly, SparsePoly)> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidInput(format!("need N ≥ 2 and k ≥ 1, got N = {n}, k = {k}")));
    }
    let n_mu = n - 1;
    if f.vars() != expanded_vars(n_mu, k).as_slice() {
        return Err(Error::VariableMismatch);
    }
    let kk = k as i64;
    let left = res_k(&apply_symmetric(tag, f, &rat(-1, kk), 1, &rat_int(1))?, n_mu, k)?;
    let right = apply_symmetric(tag, &res_k(f, n_mu, k)?, &rat_int(-kk), k, &rat(1, kk))?;
    Ok((left, right))
}

pub fn res_k_check(tag: SymmetricTag, n: usize, k: usize, f: &SparsePoly) -> Result<bool> {
    let (left, right) = res_k_sides(tag, n, k, f)?;
    Ok(left == right)
}

/// A random symmetric polynomial in `nvars` variables: a small-integer
/// combination of monomial symmetric functions of degree at most
/// `max_degree`.
pub fn random_symmetric(vars: &[String], max_degree: i32, seed: u64) -> SparsePoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<usize> = (0..vars.len()).collect();
    let mut out = SparsePoly::zero(vars);
    for d in 0..=max_degree {
        for lambda in partitions(d, vars.len()) {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                out = out + monomial_symmetric::<Rational>(vars, &idx, &lambda).scale(&rat_int(c));
            }
        }
    }
    out
}
