use std::fmt;

use serde::{Deserialize, Serialize};

use super::IetError;

/// A permutation of `{1, ..., n}` in one-line notation: the interval in
/// position `i` is sent to position `apply(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    // zero-based images
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-based images `π(1), ..., π(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self, IetError> {
        let n = images.len();
        if n == 0 {
            return Err(IetError::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(IetError::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|v| v - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The order-reversing permutation `(n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Self {
            images: (0..n).rev().collect(),
        }
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Self { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// One-based images.
    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    /// `π({1..k}) != {1..k}` for every `k < n`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n();
        let mut max = 0;
        for k in 0..n.saturating_sub(1) {
            max = max.max(self.images[k]);
            if max == k {
                return false;
            }
        }
        true
    }

    /// Cycle decomposition with one-based entries, each cycle starting at its
    /// smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = IetError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.to_vec()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
