//! Numeric fields used by the evaluation backends.
//!
//! Two carriers are supported: exact rationals (`BigRational`) and double
//! precision complex numbers (`Complex64`). Everything downstream of
//! [`crate::scalar::Scalar::eval`] is generic over [`Field`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic in this carrier is exact.
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn magnitude(&self) -> f64;

    /// Principal square root, when the carrier has one.
    fn sqrt(&self) -> Option<Self>;

    fn to_complex(&self) -> Complex64;

    /// Converts a user-supplied number; `None` when the carrier cannot hold it.
    fn from_number(n: &Number) -> Option<Self>;

    fn render(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Some(acc)
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_number(n: &Number) -> Option<Self> {
        match n {
            Number::Rational(r) => Some(r.clone()),
            Number::Complex(_) => None,
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_number(n: &Number) -> Option<Self> {
        Some(n.to_complex())
    }

    fn render(&self) -> String {
        Number::Complex(*self).to_string()
    }
}

/// A number as written by a user: an exact rational or a complex float.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Number {
    Rational(BigRational),
    Complex(Complex64),
}

impl Number {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Number::Rational(r) => r.to_complex(),
            Number::Complex(c) => *c,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_zero(),
            Number::Complex(c) => c.is_zero(),
        }
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Complex(Complex64::new(x, 0.0))
    }
}

impl From<Complex64> for Number {
    fn from(c: Complex64) -> Self {
        Number::Complex(c)
    }
}

impl From<BigRational> for Number {
    fn from(r: BigRational) -> Self {
        Number::Rational(r)
    }
}

impl std::fmt::Display for Number {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Number::Rational(r) => write!(f, "{r}"),
            Number::Complex(c) if c.im == 0.0 => write!(f, "{:?}", c.re),
            Number::Complex(c) => {
                let sign = if c.im < 0.0 { '-' } else { '+' };
                write!(f, "{:?}{}{:?}i", c.re, sign, c.im.abs())
            }
        }
    }
}

impl From<Number> for String {
    fn from(n: Number) -> String {
        n.to_string()
    }
}

impl TryFrom<String> for Number {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Accepted forms: `3`, `-3/2`, `0.8`, `1e-3`, `0.9+0.3i`, `-0.2i`.
impl FromStr for Number {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a number: {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(body) = s.strip_suffix('i') {
            // split at the last sign that is not an exponent sign or the leading sign
            let bytes = body.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                    split = Some(i);
                    break;
                }
            }
            let (re, im) = match split {
                Some(i) => (body[..i].parse::<f64>().map_err(|_| bad())?, &body[i..]),
                None => (0.0, body),
            };
            let im = match im {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other.parse::<f64>().map_err(|_| bad())?,
            };
            return Ok(Number::Complex(Complex64::new(re, im)));
        }
        if s.contains(['.', 'e', 'E']) {
            return s.parse::<f64>().map(Number::from).map_err(|_| bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Number::Rational(BigRational::new(n, d)));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Number::Rational(BigRational::from_integer(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_numbers() {
        assert_eq!(
            "3/2".parse::<Number>().unwrap(),
            Number::Rational(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!("0.8".parse::<Number>().unwrap(), Number::from(0.8));
        assert_eq!(
            "0.9+0.3i".parse::<Number>().unwrap(),
            Number::Complex(Complex64::new(0.9, 0.3))
        );
        assert_eq!(
            "1e-3-2i".parse::<Number>().unwrap(),
            Number::Complex(Complex64::new(1e-3, -2.0))
        );
        assert_eq!(
            "-i".parse::<Number>().unwrap(),
            Number::Complex(Complex64::new(0.0, -1.0))
        );
        assert!("1/0".parse::<Number>().is_err());
        assert!("abc".parse::<Number>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["3/2", "-7", "0.8", "0.9+0.3i", "0.5-1.25i"] {
            let n: Number = s.parse().unwrap();
            assert_eq!(n.to_string().parse::<Number>().unwrap(), n);
        }
    }

    #[test]
    fn rational_sqrt_only_for_squares() {
        let r = BigRational::new(9.into(), 4.into());
        assert_eq!(Field::sqrt(&r), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(Field::sqrt(&BigRational::from_integer(2.into())), None);
    }

    #[test]
    fn powi_handles_negative_exponents() {
        let q = BigRational::new(3.into(), 2.into());
        assert_eq!(q.powi(-2).unwrap(), BigRational::new(4.into(), 9.into()));
        assert_eq!(BigRational::zero().powi(-1), None);
    }
}
