//! Exact scalars: big rationals, rational functions in the spectral
//! variables λ with factored linear denominators, and dual numbers.

mod dual;
mod poly;
mod ratfun;

pub use dual::Dual;
pub use poly::{Monomial, Poly};
pub use ratfun::{LinearForm, RatFun};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point: {0} vanishes")]
    Pole(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Ring operations needed by the contraction engine.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(r: &Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

pub fn rational_to_json(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(format_rational(r))
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational, ScalarError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(ScalarError::Parse(other.to_string())),
    }
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, ScalarError> {
    if b.is_zero() {
        Err(ScalarError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational("-2/3").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(checked_div(&int(1), &int(0)), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn json_roundtrip() {
        let r = rat(3, -9);
        let v = rational_to_json(&r);
        assert_eq!(v, serde_json::json!("-1/3"));
        assert_eq!(rational_from_json(&v).unwrap(), r);
        assert_eq!(rational_from_json(&serde_json::json!(4)).unwrap(), int(4));
    }
}
