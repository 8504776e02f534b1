//! Edge weights and distance values.
//!
//! Float spaces (Euclidean, Hamming, explicit tables) measure distances in
//! `f64`; the counterexample family measures them as exact big rationals.
//! Every algorithm in the crate is generic over [`Weight`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serializer;

/// Exact rational distance used by the counterexample family.
pub type Rational = BigRational;

pub trait Weight:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Zero
    + One
{
    /// Whether comparisons are exact (no rounding anywhere).
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;

    /// Absolute slack granted to metric-axiom comparisons.
    fn tolerance() -> Self;

    fn to_f64(&self) -> f64;

    /// Parse the text form produced by [`Weight::to_exact_string`].
    fn parse_weight(s: &str) -> Option<Self>;

    /// Lossless text form: shortest round-trip decimal for floats, `p/q` for rationals.
    fn to_exact_string(&self) -> String;

    /// JSON form: a number for floats, a `p/q` string for rationals.
    fn serialize_weight<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error>;

    fn is_nan(&self) -> bool {
        false
    }

    /// Total order; weights never hold NaN.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("distance values are never NaN")
    }
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn tolerance() -> Self {
        1e-9
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_weight(s: &str) -> Option<Self> {
        s.trim().parse::<f64>().ok().filter(|x| x.is_finite())
    }

    fn to_exact_string(&self) -> String {
        format!("{self:?}")
    }

    fn serialize_weight<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(*self)
    }

    fn is_nan(&self) -> bool {
        f64::is_nan(*self)
    }
}

impl Weight for Rational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn tolerance() -> Self {
        Zero::zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_weight(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn serialize_weight<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_exact_string())
    }
}

/// `p/q` (p may be signed) or a plain integer.
fn parse_fraction(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

/// Parses `p/q`, an integer, or a finite decimal such as `3.1` or `-2.5e-3`
/// into an exact rational. Decimals are read digit by digit, not via `f64`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if s.contains('/') {
        return parse_fraction(s);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let numer: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// `n/d` as a rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Serde adapter for a single weight.
pub(crate) struct AsWeight<'a, W>(pub &'a W);

impl<W: Weight> serde::Serialize for AsWeight<'_, W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize_weight(s)
    }
}

/// Serde adapter for a slice of weights.
pub(crate) struct AsWeights<'a, W>(pub &'a [W]);

impl<W: Weight> serde::Serialize for AsWeights<'_, W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(AsWeight))
    }
}
