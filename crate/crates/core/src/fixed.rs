//! Fixed-point quantities with 0.1 resolution.
//!
//! Every distance (km) and load (t) is stored as a signed count of tenths,
//! so sums, differences and comparisons are exact. Text parsing rejects any
//! value that cannot be represented without rounding.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("precision exceeds 0.1 in `{0}`")]
    Precision(String),
    #[error("number `{0}` is out of range")]
    Overflow(String),
}

/// Parses a decimal literal into tenths. Trailing zeros past the first
/// fractional digit are accepted (`"1.30"`), any other extra digit is not.
pub fn parse_tenths(text: &str) -> Result<i64, FixedParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(FixedParseError::Empty);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty())
        || !all_digits(int_part)
        || !all_digits(frac_part)
        || (body.contains('.') && frac_part.is_empty())
    {
        return Err(FixedParseError::Invalid(s.to_string()));
    }
    if frac_part.len() > 1 && frac_part[1..].bytes().any(|b| b != b'0') {
        return Err(FixedParseError::Precision(s.to_string()));
    }

    let overflow = || FixedParseError::Overflow(s.to_string());
    let whole: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| overflow())?
    };
    let tenth = frac_part.bytes().next().map_or(0, |b| i64::from(b - b'0'));
    let magnitude = whole
        .checked_mul(10)
        .and_then(|v| v.checked_add(tenth))
        .ok_or_else(overflow)?;
    Ok(if negative { -magnitude } else { magnitude })
}

fn fmt_tenths(tenths: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let sign = if tenths < 0 { "-" } else { "" };
    let abs = tenths.unsigned_abs();
    write!(f, "{sign}{}.{}", abs / 10, abs % 10)
}

macro_rules! tenths_quantity {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(i64);

        impl $name {
            pub const ZERO: Self = Self(0);

            pub const fn from_tenths(tenths: i64) -> Self {
                Self(tenths)
            }

            /// Whole units, e.g. `from_units(8)` is 8.0.
            pub const fn from_units(units: i64) -> Self {
                Self(units * 10)
            }

            pub const fn tenths(self) -> i64 {
                self.0
            }

            pub const fn is_negative(self) -> bool {
                self.0 < 0
            }

            pub const fn is_positive(self) -> bool {
                self.0 > 0
            }

            pub fn abs(self) -> Self {
                Self(self.0.abs())
            }

            pub fn as_f64(self) -> f64 {
                self.0 as f64 / 10.0
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self(self.0 + rhs.0)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 - rhs.0)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self(-self.0)
            }
        }

        impl Mul<i64> for $name {
            type Output = Self;
            fn mul(self, rhs: i64) -> Self {
                Self(self.0 * rhs)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                self.0 += rhs.0;
            }
        }

        impl SubAssign for $name {
            fn sub_assign(&mut self, rhs: Self) {
                self.0 -= rhs.0;
            }
        }

        impl Sum for $name {
            fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
                Self(iter.map(|v| v.0).sum())
            }
        }

        impl<'a> Sum<&'a $name> for $name {
            fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
                Self(iter.map(|v| v.0).sum())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_tenths(self.0, f)
            }
        }

        impl FromStr for $name {
            type Err = FixedParseError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                parse_tenths(s).map(Self)
            }
        }

        // JSON carries these as plain numbers with one decimal; reading one
        // back must land on an exact tenth.
        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_f64(self.as_f64())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let value = f64::deserialize(deserializer)?;
                let scaled = value * 10.0;
                let rounded = scaled.round();
                if !scaled.is_finite() || (scaled - rounded).abs() > 1e-6 {
                    return Err(de::Error::custom(format!(
                        "{value} is not a multiple of 0.1"
                    )));
                }
                Ok(Self(rounded as i64))
            }
        }
    };
}

tenths_quantity!(
    /// Kilometres in tenths. Matrix entries are non-negative; derived
    /// quantities such as savings may be negative.
    Distance
);

tenths_quantity!(
    /// Tons in tenths.
    Load
);
