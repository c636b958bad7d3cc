use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};

/// Half-open interval `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Interval<S> {
    #[serde(with = "scalar::as_string")]
    pub lo: S,
    #[serde(with = "scalar::as_string")]
    pub hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Self {
        Self { lo, hi }
    }

    pub fn length(&self) -> S {
        self.hi.clone() - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(&self, x: &S) -> bool {
        &self.lo <= x && x < &self.hi
    }

    /// `other ⊆ self`; empty intervals are contained everywhere.
    pub fn contains_interval(&self, other: &Interval<S>) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn intersect(&self, other: &Interval<S>) -> Interval<S> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        Interval::new(lo.clone(), hi.clone())
    }

    pub fn translate(&self, by: &S) -> Interval<S> {
        Interval::new(self.lo.clone() + by, self.hi.clone() + by)
    }

    pub fn midpoint(&self) -> S {
        (self.lo.clone() + &self.hi) / S::from_integer(2)
    }
}

impl<S: fmt::Display> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Total length of a list of pairwise disjoint intervals.
pub fn total_length<S: Scalar>(parts: &[Interval<S>]) -> S {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .fold(S::zero(), |acc, p| acc + p.length())
}

/// Pairwise intersection of two lists of disjoint intervals.
pub fn intersect_all<S: Scalar>(a: &[Interval<S>], b: &[Interval<S>]) -> Vec<Interval<S>> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let z = x.intersect(y);
            if !z.is_empty() {
                out.push(z);
            }
        }
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    out
}

/// Sorts and merges abutting or overlapping pieces.
pub fn normalize<S: Scalar>(mut parts: Vec<Interval<S>>) -> Vec<Interval<S>> {
    parts.retain(|p| !p.is_empty());
    parts.sort_by(|p, q| p.lo.cmp(&q.lo));
    let mut out: Vec<Interval<S>> = Vec::with_capacity(parts.len());
    for p in parts {
        match out.last_mut() {
            Some(last) if p.lo <= last.hi => {
                if p.hi > last.hi {
                    last.hi = p.hi;
                }
            }
            _ => out.push(p),
        }
    }
    out
}
