//! Exact scalar fields.
//!
//! All dynamics in this crate runs over one of two exact ordered fields:
//! the rationals ([`Rational`]) and real quadratic extensions
//! `Q(sqrt(d))` ([`QuadraticReal`]). Both are backed by arbitrary-precision
//! integers, so long orbits and deep renormalization towers never round.
//!
//! Canonical text forms are `p/q` and `p/q+r/s*sqrt(d)`; both parse into
//! either type where the value fits.

mod quadratic;
mod rational;

pub use quadratic::QuadraticReal;
pub(crate) use rational::ratio_to_f64;
pub use rational::Rational;

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field mismatch: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An exact ordered field element.
///
/// Arithmetic through the operator traits panics on a field mismatch
/// (two quadratic values with different radicands); use
/// [`Scalar::try_cmp`] and [`QuadraticReal::checked_add`] and friends when
/// the operands come from untrusted input.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = ScalarError>
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: BigRational) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn is_zero(&self) -> bool;

    /// Exact sign: `Less` for negative values.
    fn sign(&self) -> Ordering;

    /// Exact comparison that reports incompatible field instances instead
    /// of panicking.
    fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError>;

    /// Largest integer not exceeding `self`.
    fn floor(&self) -> BigInt;

    /// Approximate value; for display and float-mode numerics only.
    fn to_f64(&self) -> f64;

    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Square-free `d` with `self ∈ Q(sqrt(d))`; `1` for rational values.
    fn field_radicand(&self) -> u64 {
        1
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// `floor(x / y)` for `y > 0`.
pub fn floor_div<S: Scalar>(x: &S, y: &S) -> Result<BigInt, ScalarError> {
    if !y.is_positive() {
        return Err(ScalarError::Domain(format!("floor_div by non-positive {y}")));
    }
    x.try_cmp(y)?;
    Ok((x.clone() / y).floor())
}

/// Canonical `p/q` rendering of a rational, denominator always present.
pub(crate) fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_ratio(s: &str) -> Result<BigRational, ScalarError> {
    let err = |reason: &str| ScalarError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
            let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
            if q == BigInt::from(0) {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| err("bad integer"))?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Serde adapter writing any scalar as its canonical string.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Scalar, Ser: Serializer>(v: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Same as [`as_string`] for vectors of scalars.
pub mod vec_as_string {
    use super::*;

    pub fn serialize<S: Scalar, Ser: Serializer>(v: &[S], ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        let strings: Vec<String> = v.iter().map(ToString::to_string).collect();
        strings.serialize(ser)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Vec<S>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticReal {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(r("1/3").try_cmp(&r("1/3")).unwrap(), Ordering::Equal);
        assert_eq!(
            q("0/1+1/1*sqrt(5)").try_cmp(&q("2/1")).unwrap(),
            Ordering::Greater
        );
        let golden = q("-1/2+1/2*sqrt(5)");
        assert!(golden > q("61803/100000"));
        assert!(golden < q("61804/100000"));
    }

    #[test]
    fn compare_mismatched_fields_errors() {
        let a = q("1/1*sqrt(2)");
        let b = q("1/1*sqrt(3)");
        assert!(matches!(a.try_cmp(&b), Err(ScalarError::FieldMismatch { .. })));
        // Rationals embed in every quadratic field.
        assert!(q("1/2").try_cmp(&b).is_ok());
    }

    #[test]
    fn floor_div_examples() {
        assert_eq!(floor_div(&r("7/3"), &r("1/2")).unwrap(), BigInt::from(4));
        assert_eq!(floor_div(&r("0"), &r("1")).unwrap(), BigInt::from(0));
        assert_eq!(floor_div(&q("1/1*sqrt(5)"), &q("1")).unwrap(), BigInt::from(2));
        assert_eq!(floor_div(&r("-1/2"), &r("1")).unwrap(), BigInt::from(-1));
        assert!(matches!(floor_div(&r("1"), &r("0")), Err(ScalarError::Domain(_))));
        assert!(floor_div(&r("1"), &r("-1/2")).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1+sqrt(5)".parse::<Rational>().is_err());
        assert!("1/2+1/2*sqrt(x)".parse::<QuadraticReal>().is_err());
    }
}
