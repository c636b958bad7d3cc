use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::transfer::Ring;
use crate::scalar::fmt_ratio;

/// A univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::scalar::ratio_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Positive rescaling to integer coefficients with unit content; keeps
    /// remainder sequences from growing without changing any sign.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Negated-remainder sequence of `p` and `p'`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-r.primitive());
        }
        seq
    }

    /// A power of two strictly above every root's absolute value.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        let mut b = BigRational::one();
        let limit = m + BigRational::one();
        while b <= limit {
            b *= BigRational::from_integer(2.into());
        }
        b
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                fmt_ratio(&a)
            };
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "E")?,
                (1, false) => write!(f, "{coef}*E")?,
                (_, true) => write!(f, "E^{i}")?,
                (_, false) => write!(f, "{coef}*E^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (a, b) in long.coeffs.iter_mut().zip(short.coeffs) {
            *a += b;
        }
        Poly::new(long.coeffs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Ring for Poly {
    fn ring_zero() -> Self {
        Poly::new(Vec::new())
    }
    fn ring_one() -> Self {
        Poly::from_ints(&[1])
    }
}

/// Fast exact evaluation: integer coefficients over a common denominator.
#[derive(Clone, Debug)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl IntPoly {
    pub fn new(p: &Poly) -> Self {
        let den = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let coeffs = p.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        Self { coeffs, den }
    }

    /// `p(x)` as an unreduced fraction `(num, den)` with `den > 0`.
    pub fn eval_parts(&self, x: &BigRational) -> (BigInt, BigInt) {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        // acc = Σ c_j a^j b^(deg - j); bpow overshoots by one factor of b
        let den = &self.den * (bpow / b);
        (acc, den)
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval_parts(x).0.sign_ord()
    }

    /// Compares `|p(x)|` with the integer `c`.
    pub fn cmp_abs(&self, x: &BigRational, c: i64) -> Ordering {
        let (num, den) = self.eval_parts(x);
        num.abs().cmp(&(den * c))
    }

    /// `p(x)` exactly.
    #[cfg(test)]
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (num, den) = self.eval_parts(x);
        BigRational::new(num, den)
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Sturm sequence with fast evaluators.
pub(crate) struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        Self {
            seq: p.sturm_sequence().iter().map(IntPoly::new).collect(),
        }
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut n = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }

    pub fn root_at(&self, x: &BigRational) -> bool {
        self.seq[0].sign_at(x) == Ordering::Equal
    }
}

/// Isolating intervals `(lo, hi]` of the distinct real roots of `p`, sorted,
/// each holding exactly one root; `lo == hi` marks an exact root.
pub(crate) fn isolate_roots(p: &Poly) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(p);
    let b = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm.count(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if sturm.root_at(&hi) {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}
