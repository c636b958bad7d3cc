use serde::Serialize;

use super::RauzyError;
use crate::iet::{ExchangeLengths, Iet, Interval, Permutation};
use crate::scalar::Scalar;

/// Which of the two competing last intervals was shorter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepType {
    /// `λ_n < λ_{π⁻¹(n)}`: the last interval of the domain is cut off.
    LastShorter,
    /// `λ_n > λ_{π⁻¹(n)}`: the interval landing last is cut off.
    LastLonger,
}

impl StepType {
    pub const BOTH: [StepType; 2] = [StepType::LastShorter, StepType::LastLonger];
}

/// One application of Rauzy induction to a normalized exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyStep<S> {
    pub before: Iet<S>,
    pub after: Iet<S>,
    pub nu: S,
    pub step_type: StepType,
    /// `1 / (1 - ν)`.
    pub scale: S,
}

/// The permutation produced by a step of the given type. Depends only on
/// the combinatorics.
pub fn rauzy_permutation(perm: &Permutation, step_type: StepType) -> Permutation {
    let (order, _) = relabel(perm, step_type);
    let images = order.iter().map(|&(_, pos)| pos).collect();
    Permutation::new(images).expect("Rauzy move keeps a bijection")
}

// New domain order as (old label, new image position), both one-based.
fn relabel(perm: &Permutation, step_type: StepType) -> (Vec<(usize, usize)>, usize) {
    let n = perm.n();
    let m = perm.inverse().apply(n);
    match step_type {
        StepType::LastLonger => {
            // bottom row: label m moves to just after label n
            let target = perm.apply(n) + 1;
            let order = (1..=n)
                .map(|i| {
                    let p = perm.apply(i);
                    let q = if i == m {
                        target
                    } else if p >= target {
                        p + 1
                    } else {
                        p
                    };
                    (i, q)
                })
                .collect();
            (order, m)
        }
        StepType::LastShorter => {
            // top row: label n moves to just after label m
            let mut labels: Vec<usize> = (1..n).collect();
            let at = labels.iter().position(|&l| l == m).expect("m < n") + 1;
            labels.insert(at, n);
            let order = labels.into_iter().map(|l| (l, perm.apply(l))).collect();
            (order, m)
        }
    }
}

/// The Rauzy step type of a normalized exchange, or an error on a tie or a
/// reducible permutation.
pub fn step_type_of<S: Scalar>(iet: &Iet<S>) -> Result<StepType, RauzyError> {
    let perm = iet.permutation();
    if !perm.is_irreducible() {
        return Err(RauzyError::InvalidPermutation(perm.to_string()));
    }
    let n = perm.n();
    let m = perm.inverse().apply(n);
    let last = &iet.lambda()[n - 1];
    let landing = &iet.lambda()[m - 1];
    match last.cmp(landing) {
        std::cmp::Ordering::Less => Ok(StepType::LastShorter),
        std::cmp::Ordering::Greater => Ok(StepType::LastLonger),
        std::cmp::Ordering::Equal => Err(RauzyError::UndefinedStep(format!("λ_{n} = λ_{m} = {last}"))),
    }
}

fn require_normalized<S: Scalar>(iet: &Iet<S>) -> Result<(), RauzyError> {
    if iet.is_normalized() {
        Ok(())
    } else {
        Err(RauzyError::NotNormalized(iet.domain().to_string()))
    }
}

/// Rauzy induction by the combinatorial rules.
pub fn rauzy_step<S: Scalar>(iet: &Iet<S>) -> Result<RauzyStep<S>, RauzyError> {
    require_normalized(iet)?;
    let step_type = step_type_of(iet)?;
    let perm = iet.permutation();
    let n = perm.n();
    let (order, m) = relabel(perm, step_type);
    let lambda = iet.lambda();
    let (nu, cut, shrunk) = match step_type {
        StepType::LastLonger => (lambda[m - 1].clone(), m, n),
        StepType::LastShorter => (lambda[n - 1].clone(), n, m),
    };
    let scale = S::one() / (S::one() - &nu);
    let new_lambda: Vec<S> = order
        .iter()
        .map(|&(label, _)| {
            let l = if label == shrunk {
                lambda[shrunk - 1].clone() - &lambda[cut - 1]
            } else {
                lambda[label - 1].clone()
            };
            l * &scale
        })
        .collect();
    let new_perm = Permutation::new(order.iter().map(|&(_, q)| q).collect())
        .map_err(|e| RauzyError::InvalidPermutation(e.to_string()))?;
    let after = Iet::new(new_perm, ExchangeLengths::new(new_lambda)?, S::zero())?;
    Ok(RauzyStep {
        before: iet.clone(),
        after,
        nu,
        step_type,
        scale,
    })
}

/// Rauzy induction computed from scratch: first return to `[0, 1 - ν)`
/// followed by rescaling. Reference for [`rauzy_step`].
pub fn rauzy_step_via_induce<S: Scalar>(iet: &Iet<S>) -> Result<RauzyStep<S>, RauzyError> {
    require_normalized(iet)?;
    let step_type = step_type_of(iet)?;
    let n = iet.n();
    let m = iet.permutation().inverse().apply(n);
    let nu = std::cmp::min(&iet.lambda()[n - 1], &iet.lambda()[m - 1]).clone();
    let j = Interval::new(S::zero(), S::one() - &nu);
    let induced = iet.induce(&j)?;
    let after = induced.induced.normalized();
    Ok(RauzyStep {
        before: iet.clone(),
        after,
        scale: S::one() / (S::one() - &nu),
        nu,
        step_type,
    })
}
