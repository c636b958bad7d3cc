use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::ratio_to_f64;
use super::{fmt_ratio, parse_ratio, Scalar, ScalarError};

/// An element `a + b*sqrt(d)` of the real quadratic field `Q(sqrt(d))`.
///
/// `d` is square-free. Values with `b = 0` are rationals and combine with
/// any field instance; they are stored with `d = 1`.
#[derive(Clone, Debug)]
pub struct QuadraticReal {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn square_free_split(d: u64) -> (u64, u64) {
    // d = k^2 * m with m square-free
    let mut m = d;
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        while m.is_multiple_of(p * p) {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, m)
}

impl QuadraticReal {
    /// Builds `a + b*sqrt(d)`, pulling square factors out of `d`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, ScalarError> {
        if d == 0 {
            return Err(ScalarError::Domain("radicand must be positive".into()));
        }
        let (k, m) = square_free_split(d);
        let b = b * BigRational::from_integer(BigInt::from(k));
        if m == 1 {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d: m }.normalized())
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self, ScalarError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand; `1` for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    fn join(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => Ok(other.d),
            (_, true) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(ScalarError::FieldMismatch {
                left: self.d,
                right: other.d,
            }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.join(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        }
        .normalized())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.join(other)?;
        Ok(Self {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d,
        }
        .normalized())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.join(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self { a, b, d }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.join(other)?;
        if other.is_zero() {
            return Err(ScalarError::Domain("division by zero".into()));
        }
        if other.b.is_zero() {
            return Ok(Self {
                a: &self.a / &other.a,
                b: &self.b / &other.a,
                d,
            }
            .normalized());
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let norm = &other.a * &other.a - &other.b * &other.b * &dd;
        let a = (&self.a * &other.a - &self.b * &other.b * &dd) / &norm;
        let b = (&self.b * &other.a - &self.a * &other.b) / &norm;
        Ok(Self { a, b, d }.normalized())
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    fn sign_of(a: &BigRational, b: &BigRational, d: u64) -> Ordering {
        let sa = rsign(a);
        let sb = rsign(b);
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: the larger of a^2 and b^2 d wins. Equality is
        // impossible because sqrt(d) is irrational.
        let a2 = a * a;
        let b2d = b * b * BigRational::from_integer(BigInt::from(d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }
}

fn rsign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl PartialEq for QuadraticReal {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticReal {}

impl Hash for QuadraticReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.d.hash(state);
    }
}

impl PartialOrd for QuadraticReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticReal {
    /// Panics on a field mismatch; see [`Scalar::try_cmp`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparison across quadratic fields")
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_ratio(&self.a));
        }
        let sep = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            fmt_ratio(&self.a),
            sep,
            fmt_ratio(&self.b.abs()),
            self.d
        )
    }
}

impl FromStr for QuadraticReal {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let Some(pos) = t.find("sqrt(") else {
            return parse_ratio(&t).map(Self::rational);
        };
        let tail = &t[pos + 5..];
        let radicand = tail.strip_suffix(')').ok_or_else(|| err("unterminated sqrt("))?;
        let d: u64 = radicand.parse().map_err(|_| err("bad radicand"))?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split "A(+|-)B" at the last sign that is not leading.
        let split = head
            .char_indices()
            .rfind(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() {
            BigRational::zero()
        } else {
            parse_ratio(a_str)?
        };
        let b = match b_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_ratio(other.strip_prefix('+').unwrap_or(other))?,
        };
        Self::new(a, b, d)
    }
}

macro_rules! quad_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for QuadraticReal {
            type Output = QuadraticReal;
            fn $method(self, rhs: QuadraticReal) -> QuadraticReal {
                self.$checked(&rhs).expect("quadratic field mismatch")
            }
        }
        impl<'a> $tr<&'a QuadraticReal> for QuadraticReal {
            type Output = QuadraticReal;
            fn $method(self, rhs: &'a QuadraticReal) -> QuadraticReal {
                self.$checked(rhs).expect("quadratic field mismatch")
            }
        }
        impl<'a, 'b> $tr<&'b QuadraticReal> for &'a QuadraticReal {
            type Output = QuadraticReal;
            fn $method(self, rhs: &'b QuadraticReal) -> QuadraticReal {
                self.$checked(rhs).expect("quadratic field mismatch")
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);

impl Neg for QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Scalar for QuadraticReal {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    fn one() -> Self {
        Self::rational(BigRational::one())
    }

    fn from_rational(r: BigRational) -> Self {
        Self::rational(r)
    }

    fn field_radicand(&self) -> u64 {
        self.d
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn sign(&self) -> Ordering {
        Self::sign_of(&self.a, &self.b, self.d)
    }

    fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        let d = self.join(other)?;
        if self.b == other.b {
            return Ok(self.a.cmp(&other.a));
        }
        Ok(Self::sign_of(&(&self.a - &other.a), &(&self.b - &other.b), d))
    }

    fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // t = b*sqrt(d) = sign(b) * sqrt(b^2 d); floor(sqrt(x)) = isqrt(floor(x)).
        let x = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        let root = x.floor().to_integer().sqrt();
        // floor(t) when b > 0; for b < 0, t = -sqrt(x) and sqrt(x) is irrational.
        let t_floor = if self.b.is_positive() { root } else { -root - 1 };
        let base = (self.a.clone() + BigRational::from_integer(t_floor))
            .floor()
            .to_integer();
        let next = Self::rational(BigRational::from_integer(&base + 1));
        if *self >= next {
            base + 1
        } else {
            base
        }
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticReal {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["1/2+3/4*sqrt(5)", "-1/2-1/2*sqrt(5)", "0/1+1/1*sqrt(2)", "7/3"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("sqrt(8)").to_string(), "0/1+2/1*sqrt(2)");
        assert_eq!(q("3*sqrt(4)").to_string(), "6/1");
        assert_eq!(q("1-sqrt(5)").to_string(), "1/1-1/1*sqrt(5)");
    }

    #[test]
    fn golden_identity() {
        let alpha = q("-1/2+1/2*sqrt(5)");
        // alpha^2 + alpha - 1 = 0
        let z = alpha.clone() * &alpha + &alpha - QuadraticReal::one();
        assert!(z.is_zero());
        assert_eq!(z.radicand(), 1);
    }

    #[test]
    fn floor_of_negative_surd() {
        assert_eq!(q("-1/1*sqrt(5)").floor(), BigInt::from(-3));
        assert_eq!(q("1/2-1/2*sqrt(5)").floor(), BigInt::from(-1));
        assert_eq!(q("10/1-1/1*sqrt(2)").floor(), BigInt::from(8));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = q("3/7-2/5*sqrt(11)");
        let y = q("-1/3+4/9*sqrt(11)");
        assert_eq!((x.clone() * &y) / &y, x);
    }
}
