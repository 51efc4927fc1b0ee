//! Exact signed fractions with checked 64-bit storage.
//!
//! Intermediate products are formed in 128 bits and narrowed back after
//! reduction; anything that does not fit is reported as [`Error::Overflow`].
//! Rendering is always `num/den`, including integers (`3/1`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced fraction `num/den` with `den > 0`.
///
/// `num` is never `i64::MIN`, so negation cannot overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// One half, the ubiquitous prefactor of every risk formula.
    pub const HALF: Rational = Rational { num: 1, den: 2 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_wide(num as i128, den as i128)
    }

    pub fn from_int(value: i64) -> Result<Self> {
        Self::from_wide(value as i128, 1)
    }

    /// Reduce a 128-bit fraction and narrow it to 64-bit storage.
    fn from_wide(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let negative = (num < 0) != (den < 0);
        let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd_u128(n, d);
        let (n, d) = (n / g, d / g);
        if n > i64::MAX as u128 || d > i64::MAX as u128 {
            return Err(Error::Overflow);
        }
        let n = n as i64;
        Ok(Rational { num: if negative { -n } else { n }, den: d as i64 })
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        let (a, b) = (self.num as i128, self.den as i128);
        let (c, d) = (rhs.num as i128, rhs.den as i128);
        // a*d and c*b each fit in 126 bits; their sum may not.
        let num = (a * d).checked_add(c * b).ok_or(Error::Overflow)?;
        Self::from_wide(num, b * d)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational> {
        self.checked_add(-rhs)
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational> {
        let num = self.num as i128 * rhs.num as i128;
        let den = self.den as i128 * rhs.den as i128;
        Self::from_wide(num, den)
    }

    pub fn checked_div(self, rhs: Rational) -> Result<Rational> {
        if rhs.num == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = self.num as i128 * rhs.den as i128;
        let den = self.den as i128 * rhs.num as i128;
        Self::from_wide(num, den)
    }

    pub fn abs(self) -> Rational {
        Rational { num: self.num.abs(), den: self.den }
    }

    /// -1, 0 or 1.
    pub fn signum(self) -> i64 {
        self.num.signum()
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `1 - self`, the channel-swap image of a prior.
    pub fn complement(self) -> Result<Rational> {
        Self::ONE.checked_sub(self)
    }

    /// Sum of a sequence, failing on the first overflow.
    pub fn sum<I: IntoIterator<Item = Rational>>(items: I) -> Result<Rational> {
        items.into_iter().try_fold(Rational::ZERO, |acc, x| acc.checked_add(x))
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn parse_error(text: &str, reason: &str) -> Error {
    Error::Parse { text: text.to_string(), reason: reason.to_string() }
}

fn parse_integer(text: &str, part: &str) -> Result<i128> {
    let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(text, "expected an integer"));
    }
    let value: i128 = digits.parse().map_err(|_| parse_error(text, "integer too large"))?;
    Ok(if part.starts_with('-') { -value } else { value })
}

fn parse_decimal(text: &str, body: &str) -> Result<Rational> {
    let (negative, unsigned) = match body.as_bytes().first() {
        Some(b'-') => (true, &body[1..]),
        Some(b'+') => (false, &body[1..]),
        _ => (false, body),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if unsigned.ends_with('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(parse_error(text, "malformed decimal"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(text, "unexpected character"));
    }
    if frac_part.len() > 18 {
        return Err(parse_error(text, "more than 18 fractional digits"));
    }
    let scale = 10i128.pow(frac_part.len() as u32);
    let int_value: i128 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| parse_error(text, "integer part too large"))?
    };
    let frac_value: i128 = if frac_part.is_empty() { 0 } else { frac_part.parse().unwrap() };
    let magnitude = int_value.checked_mul(scale).and_then(|v| v.checked_add(frac_value)).ok_or(Error::Overflow)?;
    Rational::from_wide(if negative { -magnitude } else { magnitude }, scale)
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b`, integers, and finite decimals such as `0.45`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        if body.is_empty() {
            return Err(parse_error(s, "empty string"));
        }
        match body.split_once('/') {
            Some((n, d)) => {
                let num = parse_integer(s, n.trim())?;
                let den = parse_integer(s, d.trim())?;
                Rational::from_wide(num, den)
            }
            None => parse_decimal(s, body),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
