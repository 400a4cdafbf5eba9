//! Exact rationals, finite doubles, and the tagged [`Scalar`] used for
//! payoffs.
//!
//! Arithmetic on two exact operands stays exact. As soon as a double is
//! involved the result is a double, and comparisons switch to a relative
//! tolerance of [`APPROX_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance used when comparing values where at least one side is inexact.
pub const APPROX_TOLERANCE: f64 = 1e-9;

/// Number of significant digits used by [`Scalar::to_decimal`].
pub const DISPLAY_DIGITS: usize = 6;

/// Arbitrary precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    /// Exact rational value of a finite double.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x).map(ExactScalar).ok_or(Error::NonFinite)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i8 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        ExactScalar::one().checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Rounds to `places` decimals (half away from zero) and renders the
    /// digits without going through binary floating point.
    pub fn to_fixed(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let twice = r.abs() * 2u32;
        let mut units = q.abs();
        if twice >= *scaled.denom() {
            units += 1u32;
        }
        let negative = self.0.is_negative() && !units.is_zero();
        let digits = units.to_string();
        let body = if places == 0 {
            digits
        } else {
            let padded = format!("{:0>width$}", digits, width = places + 1);
            let (int, frac) = padded.split_at(padded.len() - places);
            format!("{int}.{frac}")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, an integer `p`, or a plain decimal literal such as
/// `-0.75`, which is converted exactly.
impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::InvalidNumber(s.to_string());
        if let Some((p, q)) = text.split_once('/') {
            let p: BigInt = parse_signed_int(p.trim()).ok_or_else(bad)?;
            let q: BigInt = parse_signed_int(q.trim()).ok_or_else(bad)?;
            return ExactScalar::new(p, q);
        }
        if let Some((int, frac)) = text.split_once('.') {
            let (negative, int) = match int.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int.strip_prefix('+').unwrap_or(int)),
            };
            let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
            if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
                return Err(bad());
            }
            let mantissa: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            let denom = BigInt::from(10u32).pow(frac.len() as u32);
            let value = ExactScalar::new(mantissa, denom)?;
            return Ok(if negative { -value } else { value });
        }
        parse_signed_int(text)
            .map(|n| ExactScalar(BigRational::from_integer(n)))
            .ok_or_else(bad)
    }
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('+').unwrap_or(s);
    let digits = body.strip_prefix('-').unwrap_or(body);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    body.parse().ok()
}

macro_rules! exact_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

exact_binop!(Add, add);
exact_binop!(Sub, sub);
exact_binop!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

/// A finite IEEE double.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ApproxScalar(f64);

impl ApproxScalar {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(ApproxScalar(value))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A payoff or model output: exact when every input was exact.
#[derive(Clone)]
pub enum Scalar {
    Exact(ExactScalar),
    Approx(ApproxScalar),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(ExactScalar::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(ExactScalar::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Exact(ExactScalar::from_integer(n))
    }

    pub fn approx(x: f64) -> Result<Self> {
        ApproxScalar::new(x).map(Scalar::Approx)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => x.to_f64(),
            Scalar::Approx(x) => x.value(),
        }
    }

    /// Exact rational value; for doubles this is the binary value itself.
    pub fn to_exact(&self) -> ExactScalar {
        match self {
            Scalar::Exact(x) => x.clone(),
            Scalar::Approx(x) => ExactScalar::from_f64(x.value()).unwrap_or_default(),
        }
    }

    /// Three-way comparison; exact when both sides are exact, otherwise
    /// equal within a relative [`APPROX_TOLERANCE`].
    pub fn compare(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                let scale = 1f64.max(a.abs()).max(b.abs());
                if (a - b).abs() <= APPROX_TOLERANCE * scale {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.compare(&Scalar::zero()) == Ordering::Equal
    }

    pub fn signum(&self) -> i8 {
        match self.compare(&Scalar::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.checked_div(b).map(Scalar::Exact),
            _ => {
                if rhs.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Scalar::approx(self.to_f64() / rhs.to_f64())
            }
        }
    }

    /// Decimal rendering with [`DISPLAY_DIGITS`] significant digits and
    /// trailing zeros trimmed.
    pub fn to_decimal(&self) -> String {
        let x = self.to_f64();
        if x == 0.0 {
            return "0".to_string();
        }
        let magnitude = x.abs().log10().floor() as i64;
        let places = (DISPLAY_DIGITS as i64 - 1 - magnitude).max(0) as usize;
        trim_zeros(&self.to_fixed(places))
    }

    /// Decimal rendering with a fixed number of places.
    pub fn to_fixed(&self, places: usize) -> String {
        match self {
            Scalar::Exact(x) => x.to_fixed(places),
            Scalar::Approx(x) => {
                let s = format!("{:.*}", places, x.value());
                if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
                    s[1..].to_string()
                } else {
                    s
                }
            }
        }
    }

    fn lift(self, rhs: Scalar, exact: fn(&ExactScalar, &ExactScalar) -> ExactScalar, approx: fn(f64, f64) -> f64) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => {
                let v = approx(self.to_f64(), rhs.to_f64());
                debug_assert!(v.is_finite());
                Scalar::Approx(ApproxScalar(v))
            }
        }
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

impl From<ExactScalar> for Scalar {
    fn from(x: ExactScalar) -> Self {
        Scalar::Exact(x)
    }
}

impl From<ApproxScalar> for Scalar {
    fn from(x: ApproxScalar) -> Self {
        Scalar::Approx(x)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Approx(x) => write!(f, "~{x}"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.lift(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.clone() * rhs.clone()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(-x),
            Scalar::Approx(x) => Scalar::Approx(ApproxScalar(-x.0)),
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
