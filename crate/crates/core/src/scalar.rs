//! Number types shared by every module.
//!
//! Identity checks run over exact [`Rational`]s, quadrature over `f64`, and
//! the limit harness over [`Hp`], a binary float with caller-chosen
//! precision. Code that only needs field operations is written once against
//! [`Scalar`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Field operations plus the few conversions the generic algorithms need.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiply without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self += other` without consuming `other`.
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Scalar for num_complex::Complex64 {
    fn zero() -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        num_complex::Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        num_complex::Complex64::new(v as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        num_complex::Complex64::new(rational_to_f64(r), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn powi(&self, exp: i64) -> Self {
        match i32::try_from(exp) {
            Ok(e) => f64::powi(*self, e),
            Err(_) => f64::powf(*self, exp as f64),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest double to an exact rational, robust to numerators and
/// denominators far outside the `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    Hp::from_rational_prec(r, 64).to_f64()
}

/// Exact conversion; every finite double is a dyadic rational.
pub fn f64_to_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

/// Parses `"p/q"`, an integer, or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim().replace('\u{2212}', "-");
    let bad = || Error::InvalidInput(format!("cannot parse '{text}' as a rational"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{text}'")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(&t) {
        return Ok(Rational::from_integer(n));
    }
    // Decimal literal: read the digits exactly rather than via f64.
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(bad)?;
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(Rational::new(n * sign, d))
}

/// Default significand width for [`Hp`] values created without an explicit
/// precision.
pub const DEFAULT_PRECISION: usize = 128;

type Float = FBig<HalfEven, 2>;

/// Binary floating point with a per-value significand width.
///
/// Binary operations run at the wider of the two operand precisions, so
/// mixing default-precision constants into a 256-bit computation does not
/// degrade it.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Hp(Float);

impl Hp {
    pub fn from_f64(x: f64, precision: usize) -> Self {
        let v = Float::try_from(x).expect("finite f64");
        Hp(v.with_precision(precision).value())
    }

    pub fn from_i64_prec(v: i64, precision: usize) -> Self {
        Hp(Float::from(v).with_precision(precision).value())
    }

    pub fn from_rational_prec(r: &Rational, precision: usize) -> Self {
        let n = Float::from(bigint_to_ibig(r.numer())).with_precision(precision).value();
        let d = Float::from(bigint_to_ibig(r.denom())).with_precision(precision).value();
        Hp(n / d)
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        Hp(self.0.clone().with_precision(precision).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// The exact dyadic rational this float represents.
    pub fn to_rational(&self) -> Rational {
        let repr = self.0.repr();
        let sig = ibig_to_bigint(repr.significand());
        let exp = repr.exponent();
        let two = BigInt::from(2);
        if exp >= 0 {
            Rational::from_integer(sig * num_traits::pow(two, exp as usize))
        } else {
            Rational::new(sig, num_traits::pow(two, (-exp) as usize))
        }
    }

    pub fn exp(&self) -> Self {
        Hp(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        Hp(self.0.ln())
    }

    pub fn sqrt(&self) -> Self {
        Hp(self.0.sqrt())
    }

    pub fn abs(&self) -> Self {
        if self.0 < Float::ZERO {
            Hp(-self.0.clone())
        } else {
            self.clone()
        }
    }
}

fn bigint_to_ibig(v: &BigInt) -> IBig {
    IBig::from_str_radix(&v.to_str_radix(16), 16).expect("hex round trip")
}

fn ibig_to_bigint(v: &IBig) -> BigInt {
    let text = v.in_radix(16).to_string();
    BigInt::parse_bytes(text.as_bytes(), 16).expect("hex round trip")
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({:e}; {} bits)", self.to_f64(), self.precision())
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

macro_rules! hp_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                Hp($trait::$method(self.0, rhs.0))
            }
        }
    };
}
hp_binop!(Add, add);
hp_binop!(Sub, sub);
hp_binop!(Mul, mul);
hp_binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Scalar for Hp {
    fn zero() -> Self {
        Hp::from_i64_prec(0, DEFAULT_PRECISION)
    }
    fn one() -> Self {
        Hp::from_i64_prec(1, DEFAULT_PRECISION)
    }
    fn from_i64(v: i64) -> Self {
        Hp::from_i64_prec(v, DEFAULT_PRECISION)
    }
    fn from_rational(r: &Rational) -> Self {
        Hp::from_rational_prec(r, DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.0 == Float::ZERO
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Hp(&self.0 * &other.0)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.0 = &self.0 + &other.0;
    }
    fn powi(&self, exp: i64) -> Self {
        Hp(self.0.powi(IBig::from(exp)))
    }
}
