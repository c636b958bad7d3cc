use super::{Iet, IetError, Interval, Symbol};
use crate::scalar::Scalar;

/// Step budget per piece used when callers do not pass one.
pub const DEFAULT_STEP_CAP: usize = 10_000_000;

/// First-return map of an exchange to a subinterval `J`.
///
/// `return_times[k]` counts the steps the `k`-th continuity interval of the
/// induced map spends outside `J` before coming back, so the first return
/// happens after `return_times[k] + 1` applications of the parent map.
/// `return_words[k]` lists the symbols visited along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSystem<S> {
    pub parent: Iet<S>,
    pub interval: Interval<S>,
    pub induced: Iet<S>,
    pub return_times: Vec<usize>,
    pub return_words: Vec<Vec<Symbol>>,
}

impl<S: Scalar> InducedSystem<S> {
    /// `Σ (r_k + 1) |I_k|`, the measure swept by the return towers.
    pub fn tower_measure(&self) -> S {
        self.induced
            .intervals()
            .iter()
            .zip(&self.return_times)
            .fold(S::zero(), |acc, (iv, &r)| {
                acc + iv.length() * S::from_integer(r as i64 + 1)
            })
    }

    /// True when the return towers exactly fill the parent domain, as they
    /// must for a minimal parent.
    pub fn towers_tile_domain(&self) -> bool {
        self.tower_measure() == self.parent.domain().length()
    }

    /// The first `len` parent symbols of the forward orbit of `x ∈ J`,
    /// assembled from return words.
    pub fn symbols_via_returns(&self, x: &S, len: usize) -> Result<Vec<Symbol>, IetError> {
        if !self.interval.contains(x) {
            return Err(IetError::OutOfDomain(x.to_string()));
        }
        let mut out = Vec::with_capacity(len + 8);
        let mut y = x.clone();
        while out.len() < len {
            let (k, next) = self.induced.step(&y);
            out.extend_from_slice(&self.return_words[k]);
            y = next;
        }
        out.truncate(len);
        Ok(out)
    }
}

struct Pending<S> {
    source: Interval<S>,
    image: Interval<S>,
    word: Vec<Symbol>,
}

impl<S: Scalar> Iet<S> {
    /// First-return map to `j` with the default step budget.
    pub fn induce(&self, j: &Interval<S>) -> Result<InducedSystem<S>, IetError> {
        self.induce_with_cap(j, DEFAULT_STEP_CAP)
    }

    /// First-return map to `j`. Fails with [`IetError::NonReturn`] if some
    /// piece has not come back within `step_cap` steps.
    pub fn induce_with_cap(&self, j: &Interval<S>, step_cap: usize) -> Result<InducedSystem<S>, IetError> {
        if j.is_empty() || !self.domain().contains_interval(j) {
            return Err(IetError::InvalidInterval(format!(
                "{j} is not a non-empty subinterval of {}",
                self.domain()
            )));
        }
        let mut stack: Vec<Pending<S>> = self
            .split(j)
            .into_iter()
            .map(|(p, i)| Pending {
                image: p.translate(&self.displacements()[i]),
                source: p,
                word: vec![(i + 1) as Symbol],
            })
            .collect();
        let mut done: Vec<(Interval<S>, S, Vec<Symbol>)> = Vec::new();
        let left = Interval::new(self.origin().clone(), j.lo.clone());
        let right = Interval::new(j.hi.clone(), self.domain().hi);

        while let Some(item) = stack.pop() {
            let shift = item.source.lo.clone() - &item.image.lo;
            let inside = item.image.intersect(j);
            if !inside.is_empty() {
                let t = shift.clone();
                done.push((inside.translate(&t), -t, item.word.clone()));
            }
            for outside in [item.image.intersect(&left), item.image.intersect(&right)] {
                if outside.is_empty() {
                    continue;
                }
                if item.word.len() > step_cap {
                    return Err(IetError::NonReturn {
                        cap: step_cap,
                        piece: outside.translate(&shift).to_string(),
                    });
                }
                for (sub, i) in self.split(&outside) {
                    let mut word = item.word.clone();
                    word.push((i + 1) as Symbol);
                    stack.push(Pending {
                        source: sub.translate(&shift),
                        image: sub.translate(&self.displacements()[i]),
                        word,
                    });
                }
            }
        }

        done.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
        let pieces: Vec<(Interval<S>, S)> = done.iter().map(|(iv, t, _)| (iv.clone(), t.clone())).collect();
        let induced = Iet::from_pieces(&pieces)?;
        let return_words: Vec<Vec<Symbol>> = done.into_iter().map(|(_, _, w)| w).collect();
        let return_times = return_words.iter().map(|w| w.len() - 1).collect();
        Ok(InducedSystem {
            parent: self.clone(),
            interval: j.clone(),
            induced,
            return_times,
            return_words,
        })
    }
}
