use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Potential, SpectralError};
use crate::iet::Symbol;
use crate::scalar::Scalar;

/// The commutative ring operations transfer products need.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
}

impl<S: Scalar> Ring for S {
    fn ring_zero() -> Self {
        S::zero()
    }
    fn ring_one() -> Self {
        S::one()
    }
}

impl Ring for f64 {
    fn ring_zero() -> Self {
        0.0
    }
    fn ring_one() -> Self {
        1.0
    }
}

impl Ring for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> TransferMatrix<T> {
    pub fn identity() -> Self {
        Self {
            a: T::ring_one(),
            b: T::ring_zero(),
            c: T::ring_zero(),
            d: T::ring_one(),
        }
    }

    /// The companion form `[[t, -1], [1, 0]]` for a diagonal entry `t = E - v`.
    pub fn companion(t: T) -> Self {
        Self {
            a: t,
            b: -T::ring_one(),
            c: T::ring_one(),
            d: T::ring_zero(),
        }
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            a: self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            b: self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            c: self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            d: self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        }
    }

    /// `companion(t) · self` without building the companion matrix.
    pub(crate) fn push_companion(&self, t: &T) -> Self {
        Self {
            a: t.clone() * self.a.clone() - self.c.clone(),
            b: t.clone() * self.b.clone() - self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }

    pub fn apply(&self, v: (T, T)) -> (T, T) {
        (
            self.a.clone() * v.0.clone() + self.b.clone() * v.1.clone(),
            self.c.clone() * v.0 + self.d.clone() * v.1,
        )
    }
}

impl TransferMatrix<f64> {
    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }

    pub fn frobenius(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }
}

/// One step of `ψ_{j+1} = (E - v) ψ_j - ψ_{j-1}`, acting on `(ψ_j, ψ_{j-1})`.
pub fn transfer<S: Scalar>(e: &S, v: &S) -> TransferMatrix<S> {
    TransferMatrix::companion(e.clone() - v)
}

pub fn transfer_f64(e: f64, v: f64) -> TransferMatrix<f64> {
    TransferMatrix::companion(e - v)
}

/// `T(V(ω_q)) ⋯ T(V(ω_1))`, so that the product over `w1·w2` is
/// `word_transfer(w2) · word_transfer(w1)`.
pub fn word_transfer<S: Scalar>(
    e: &S,
    word: &[Symbol],
    v: &Potential<S>,
) -> Result<TransferMatrix<S>, SpectralError> {
    if word.is_empty() {
        return Err(SpectralError::EmptyWord);
    }
    let vals = v.effective_values();
    let diag: Vec<S> = vals.iter().map(|x| e.clone() - x).collect();
    let mut m = TransferMatrix::identity();
    for &s in word {
        let t = diag
            .get((s as usize).wrapping_sub(1))
            .ok_or(SpectralError::UnknownSymbol(s))?;
        m = m.push_companion(t);
    }
    Ok(m)
}

pub fn word_transfer_f64<S: Scalar>(
    e: f64,
    word: &[Symbol],
    v: &Potential<S>,
) -> Result<TransferMatrix<f64>, SpectralError> {
    if word.is_empty() {
        return Err(SpectralError::EmptyWord);
    }
    let vals = v.f64_lookup(word)?;
    Ok(trace_walk(e, &vals))
}

/// Float product over precomputed potential values.
pub(crate) fn trace_walk(e: f64, vals: &[f64]) -> TransferMatrix<f64> {
    let mut m = TransferMatrix::<f64>::identity();
    for &v in vals {
        m = m.push_companion(&(e - v));
    }
    m
}

/// A solution `(ψ_{j+1}, ψ_j)` evolved site by site, with its norm history.
#[derive(Clone, Debug)]
pub struct SolutionVector<T> {
    pub index: i64,
    pub state: (T, T),
    pub norms: Vec<f64>,
}

impl SolutionVector<f64> {
    /// Starts from `(ψ_1, ψ_0)`.
    pub fn new(psi1: f64, psi0: f64) -> Self {
        Self {
            index: 0,
            state: (psi1, psi0),
            norms: vec![psi1.hypot(psi0)],
        }
    }

    pub fn step(&mut self, m: &TransferMatrix<f64>) {
        self.state = m.apply(self.state);
        self.index += 1;
        self.norms.push(self.state.0.hypot(self.state.1));
    }
}
