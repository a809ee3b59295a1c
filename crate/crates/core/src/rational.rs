//! Exact rational helpers on top of `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

pub type Rational = BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn from_big(value: BigInt) -> Rational {
    BigRational::from_integer(value)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct RationalParseError(pub String);

/// Parses `p`, `p/q`, or a plain decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let bad = || RationalParseError(text.to_string());
    let text = text.trim();
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let joined = format!("{digits}{frac}");
        let mut num = BigInt::from_str(&joined).map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    BigInt::from_str(text).map(from_big).map_err(|_| bad())
}

/// Formats as `p` or `p/q` in lowest terms.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Rational or positive infinity, used where a bound may be absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// Multiplies by a positive rational; infinity stays infinite.
    pub fn scale(&self, factor: &Rational) -> Extended {
        match self {
            Extended::Finite(v) => Extended::Finite(v * factor),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Less,
            (Extended::Infinite, Extended::Finite(_)) => Greater,
            (Extended::Infinite, Extended::Infinite) => Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => f.write_str(&format_rational(v)),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

pub fn parse_extended(text: &str) -> Result<Extended, RationalParseError> {
    match text.trim() {
        "inf" | "+inf" | "infinity" => Ok(Extended::Infinite),
        other => parse_rational(other).map(Extended::Finite),
    }
}

pub fn floor(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

/// Approximate base-2 logarithm, good to a few ulps for huge values too.
pub fn log2_approx(value: &Rational) -> f64 {
    assert!(value.is_positive(), "log2 of non-positive value");
    log2_int(value.numer()) - log2_int(value.denom())
}

fn log2_int(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top: BigInt = value >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).log2() + shift as f64
}

/// Approximate conversion for display only.
pub fn to_f64(value: &Rational) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let sign = if value.is_negative() { -1.0 } else { 1.0 };
    sign * log2_approx(&value.abs()).exp2()
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Product of numerator and denominator, the encoding weight of a value.
pub fn encoding_weight(value: &Rational) -> BigInt {
    (value.numer() * value.denom()).abs()
}

/// Compares `a` with `b * c` by cross multiplication, skipping the gcd
/// reductions a rational product would do.
pub fn cmp_product(a: &Rational, b: &Rational, c: &Rational) -> std::cmp::Ordering {
    (a.numer() * b.denom() * c.denom()).cmp(&(b.numer() * c.numer() * a.denom()))
}

/// Compares `a^(1/p)` with `b^(1/q)` for positive `a`, `b` without roots.
pub fn compare_roots(a: &Rational, p: u32, b: &Rational, q: u32) -> std::cmp::Ordering {
    num_traits::pow(a.clone(), q as usize).cmp(&num_traits::pow(b.clone(), p as usize))
}
