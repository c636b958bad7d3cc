use num_integer::Integer;
use serde::Serialize;

use super::RauzyError;
use crate::iet::{ExchangeLengths, Iet, Permutation};
use crate::scalar::{Rational, Scalar};

/// The exchange `P` with equal lengths `(1/n, ..., 1/n)`; it permutes the
/// intervals `I*_k = [(k-1)/n, k/n)`, sending `I*_k` onto `I*_{π(k)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicIetSpec {
    pub perm: Permutation,
    pub iet: Iet<Rational>,
    /// `l_k`, minimal with `P^{l_k + 1}(I*_k) = I*_k` (one-based `k`).
    pub cycle_lengths: Vec<usize>,
    /// `N`, the least common multiple of the cycle lengths; `P^N = id`.
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicSummary {
    pub n: usize,
    pub perm: Vec<usize>,
    pub cycle_lengths: Vec<usize>,
    pub period: usize,
}

impl PeriodicIetSpec {
    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn summary(&self) -> PeriodicSummary {
        PeriodicSummary {
            n: self.n(),
            perm: self.perm.to_vec(),
            cycle_lengths: self.cycle_lengths.clone(),
            period: self.period,
        }
    }
}

pub fn periodic_iet(perm: &Permutation) -> Result<PeriodicIetSpec, RauzyError> {
    if !perm.is_irreducible() {
        return Err(RauzyError::InvalidPermutation(perm.to_string()));
    }
    let n = perm.n();
    let lambda = vec![Rational::one() / Rational::from(n as i64); n];
    let iet = Iet::new(perm.clone(), ExchangeLengths::new(lambda)?, Rational::zero())?;
    let mut cycle_lengths = vec![0; n];
    let mut period = 1usize;
    for cycle in perm.cycles() {
        period = period.lcm(&cycle.len());
        for &k in &cycle {
            cycle_lengths[k - 1] = cycle.len() - 1;
        }
    }
    Ok(PeriodicIetSpec {
        perm: perm.clone(),
        iet,
        cycle_lengths,
        period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::Interval;

    #[test]
    fn two_cycle() {
        let p = periodic_iet(&Permutation::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(p.cycle_lengths, vec![1, 1]);
        assert_eq!(p.period, 2);
    }

    #[test]
    fn three_cycle_and_identity_power() {
        let p = periodic_iet(&Permutation::new(vec![2, 3, 1]).unwrap()).unwrap();
        assert_eq!(p.period, 3);
        assert_eq!(p.cycle_lengths, vec![2, 2, 2]);
        let mut q = p.iet.clone();
        for _ in 1..p.period {
            q = q.compose(&p.iet).unwrap();
        }
        assert!(q.displacements().iter().all(|d| d.is_zero()));
        // P sends I*_k onto I*_{π(k)}
        for k in 1..=3 {
            let img = p.iet.image_of(&p.iet.interval(k));
            assert_eq!(img, vec![p.iet.interval(p.perm.apply(k))]);
        }
        let _ = Interval::new(Rational::zero(), Rational::one());
    }

    #[test]
    fn mixed_cycles() {
        let p = periodic_iet(&Permutation::new(vec![4, 5, 3, 1, 2]).unwrap());
        // (1 4)(2 5)(3) is reducible? π({1,2,3}) = {4,5,3} != {1,2,3}: irreducible
        let p = p.unwrap();
        assert_eq!(p.cycle_lengths, vec![1, 1, 0, 1, 1]);
        assert_eq!(p.period, 2);
        assert!(periodic_iet(&Permutation::identity(3)).is_err());
    }
}
