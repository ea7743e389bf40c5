//! Exact rational constants and difference-constraint bounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedNeg, CheckedSub, Signed, Zero};

use crate::error::Error;

/// A normalized fraction with 64-bit components.
///
/// The denominator is always positive and coprime with the numerator.
/// Operator impls panic on overflow instead of wrapping; use the
/// `checked_*` methods where an overflow must be reported as an error.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `num / den`, normalizing sign and gcd. Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0.checked_add(&other.0).map(Rational)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.checked_sub(&other.0).map(Rational)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        self.0.checked_mul(&other.0).map(Rational)
    }

    pub fn checked_neg(&self) -> Option<Self> {
        self.0.numer().checked_neg().map(|n| Rational(Ratio::new_raw(n, *self.0.denom())))
    }

    /// Midpoint of two values.
    pub fn midpoint(&self, other: &Self) -> Self {
        let sum = *self + *other;
        sum.checked_mul(&Rational::new(1, 2)).expect("rational arithmetic overflow")
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(&rhs).expect("rational arithmetic overflow")
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.checked_sub(&rhs).expect("rational arithmetic overflow")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.checked_mul(&rhs).expect("rational arithmetic overflow")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.checked_neg().expect("rational arithmetic overflow")
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"7"`, `"-3"`, `"2.25"` or `"7/2"` exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidNumber(s.to_string());
        let overflow = || Error::Overflow(format!("constant `{s}` does not fit in 64 bits"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = parse_int(n.trim()).ok_or_else(bad)?.map_err(|_| overflow())?;
            let d: i64 = parse_int(d.trim()).ok_or_else(bad)?.map_err(|_| overflow())?;
            if d <= 0 {
                return Err(bad());
            }
            return Ok(Rational::new(n, d));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty()) || !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num: i64 = digits.trim_start_matches('0').parse().or_else(|e: std::num::ParseIntError| {
            if digits.trim_start_matches('0').is_empty() {
                Ok(0)
            } else if matches!(e.kind(), std::num::IntErrorKind::PosOverflow) {
                Err(overflow())
            } else {
                Err(bad())
            }
        })?;
        let den = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(overflow)?;
        let value = Rational::new(num, den);
        Ok(if neg { -value } else { value })
    }
}

fn parse_int(s: &str) -> Option<Result<i64, ()>> {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(s.parse::<i64>().map_err(|_| ()))
}

/// Right-hand side of a difference constraint `x - y <= c` (or `< c` when strict).
///
/// Ordered by tightness: smaller value first, and at equal value the strict
/// bound first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Bound {
    pub value: Rational,
    pub strict: bool,
}

impl Bound {
    pub fn le(value: impl Into<Rational>) -> Self {
        Bound { value: value.into(), strict: false }
    }

    pub fn lt(value: impl Into<Rational>) -> Self {
        Bound { value: value.into(), strict: true }
    }

    /// Zero-weight, non-strict bound (`x - x <= 0`).
    pub fn zero() -> Self {
        Bound::le(Rational::ZERO)
    }

    /// Bound of the complementary constraint read in the opposite direction:
    /// `!(x - y <= c)` is `y - x < -c`, and `!(x - y < c)` is `y - x <= -c`.
    pub fn complement(&self) -> Self {
        Bound { value: -self.value, strict: !self.strict }
    }

    /// Sum of two bounds along a path of constraints.
    pub fn add(&self, other: &Bound) -> Bound {
        Bound { value: self.value + other.value, strict: self.strict || other.strict }
    }

    /// True when the bound is violated by a zero difference (`0 <= c` / `0 < c` fails).
    pub fn is_negative(&self) -> bool {
        self.value.is_negative() || (self.value.is_zero() && self.strict)
    }

    /// Does the difference `d` satisfy this bound?
    pub fn admits(&self, d: Rational) -> bool {
        if self.strict {
            d < self.value
        } else {
            d <= self.value
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value).then_with(|| other.strict.cmp(&self.strict))
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.strict { "<" } else { "<=" }, self.value)
    }
}
