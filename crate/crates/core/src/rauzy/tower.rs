use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{rauzy_step, RauzyError};
use crate::iet::{Iet, IetDescription, InducedSystem, Interval, DEFAULT_STEP_CAP};
use crate::scalar::Scalar;

/// Default Rauzy step budget per tower level.
pub const DEFAULT_LEVEL_CAP: usize = 100_000;

/// `δ_m = min(1/(4n), 2^{-m}/n)`.
pub fn default_delta(n: usize, m: usize) -> BigRational {
    let n = BigInt::from(n);
    let a = BigRational::new(BigInt::from(1), BigInt::from(4) * &n);
    let b = BigRational::new(BigInt::from(1), (BigInt::from(1) << m) * &n);
    a.min(b)
}

/// `max_i |λ_i - 1/n|`, the distance to the equal-length exchange.
pub fn proximity<S: Scalar>(iet: &Iet<S>) -> S {
    let n = iet.n() as i64;
    let center = S::one() / S::from_integer(n);
    iet.lambda()
        .iter()
        .map(|l| (l.clone() - &center).abs())
        .max()
        .unwrap_or_else(S::zero)
}

#[derive(Clone, Debug)]
pub struct TowerConfig {
    pub levels: usize,
    /// Explicit `δ_1, δ_2, ...`; levels beyond the list use [`default_delta`].
    pub deltas: Vec<BigRational>,
    pub level_cap: usize,
    pub induce_cap: usize,
}

impl Default for TowerConfig {
    fn default() -> Self {
        Self {
            levels: 3,
            deltas: Vec::new(),
            level_cap: DEFAULT_LEVEL_CAP,
            induce_cap: DEFAULT_STEP_CAP,
        }
    }
}

impl TowerConfig {
    pub fn with_levels(levels: usize) -> Self {
        Self {
            levels,
            ..Self::default()
        }
    }

    pub fn delta(&self, n: usize, m: usize) -> BigRational {
        self.deltas
            .get(m - 1)
            .cloned()
            .unwrap_or_else(|| default_delta(n, m))
    }
}

/// Level `m` of a renormalization tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel<S> {
    pub level: usize,
    /// `N_m`, the number of Rauzy steps from the base.
    pub steps: usize,
    pub delta: S,
    pub proximity: S,
    /// `J_m` in base coordinates; always `[0, |J_m|)`.
    pub interval: Interval<S>,
    /// `E_m`, the normalized exchange at this level.
    pub map: Iet<S>,
    /// First return of the base to `J_m`.
    pub induced: InducedSystem<S>,
}

impl<S: Scalar> TowerLevel<S> {
    pub fn scale(&self) -> S {
        self.interval.length()
    }

    /// `H_m`: base coordinates on `J_m` to `[0, 1)`.
    pub fn to_level(&self, x: &S) -> S {
        x.clone() / self.scale()
    }

    /// `H_m⁻¹`.
    pub fn to_base(&self, x: &S) -> S {
        x.clone() * self.scale()
    }

    pub fn interval_to_base(&self, iv: &Interval<S>) -> Interval<S> {
        Interval::new(self.to_base(&iv.lo), self.to_base(&iv.hi))
    }

    /// Return times to `J_m` (in base steps) of the continuity intervals of
    /// `E_m`.
    pub fn return_times(&self) -> &[usize] {
        &self.induced.return_times
    }

    /// Checks `E_m = H_m ∘ E_{J_m} ∘ H_m⁻¹` at every continuity-interval
    /// endpoint, plus field-by-field equality.
    pub fn conjugacy_holds(&self) -> bool {
        if self.induced.induced.normalized() != self.map {
            return false;
        }
        self.map.breakpoints()[..self.map.n()].iter().all(|x| {
            let lhs = self.map.step(x).1;
            let y = self.induced.induced.step(&self.to_base(x)).1;
            lhs == self.to_level(&y)
        })
    }

    pub fn report(&self) -> TowerLevelReport {
        TowerLevelReport {
            level: self.level,
            steps: self.steps,
            delta: self.delta.to_string(),
            proximity: self.proximity.to_string(),
            proximity_approx: self.proximity.to_f64(),
            interval_hi: self.interval.hi.to_string(),
            interval_hi_approx: self.interval.hi.to_f64(),
            map: self.map.describe(),
            return_times: self.return_times().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerLevelReport {
    pub level: usize,
    pub steps: usize,
    pub delta: String,
    pub proximity: String,
    pub proximity_approx: f64,
    pub interval_hi: String,
    pub interval_hi_approx: f64,
    pub map: IetDescription,
    pub return_times: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenormalizationTower<S> {
    pub base: Iet<S>,
    pub levels: Vec<TowerLevel<S>>,
}

impl<S: Scalar> RenormalizationTower<S> {
    pub fn level(&self, m: usize) -> Option<&TowerLevel<S>> {
        m.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn report(&self) -> Vec<TowerLevelReport> {
        self.levels.iter().map(TowerLevel::report).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TowerFailure {
    /// A Rauzy step was undefined or the first-return map could not be
    /// computed.
    Aborted {
        level: usize,
        steps: usize,
        reason: String,
    },
    /// No iterate within the per-level budget was close enough.
    NotFound { level: usize, cap: usize },
    /// The normalized Rauzy orbit came back to an earlier state (after
    /// `period` more steps) without getting close enough, so no later
    /// iterate can.
    Periodic {
        level: usize,
        steps: usize,
        period: usize,
    },
}

impl fmt::Display for TowerFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerFailure::Aborted { level, steps, reason } => {
                write!(f, "tower aborted at level {level} after {steps} steps: {reason}")
            }
            TowerFailure::NotFound { level, cap } => {
                write!(f, "level {level} not reached within {cap} Rauzy steps")
            }
            TowerFailure::Periodic { level, steps, period } => write!(
                f,
                "level {level} unreachable: the Rauzy orbit repeats with period {period} after {steps} steps"
            ),
        }
    }
}

/// Tower construction failure, carrying the levels built so far.
#[derive(Clone, Debug)]
pub struct TowerError<S> {
    pub failure: TowerFailure,
    pub partial: RenormalizationTower<S>,
}

impl<S: fmt::Debug> fmt::Display for TowerError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} levels built)", self.failure, self.partial.levels.len())
    }
}

impl<S: fmt::Debug> std::error::Error for TowerError<S> {}

impl<S> TowerError<S> {
    pub fn into_partial(self) -> RenormalizationTower<S> {
        self.partial
    }
}

/// Tower or, on failure, whatever was built; the failure is returned
/// alongside.
pub fn tower_or_partial<S>(
    r: Result<RenormalizationTower<S>, TowerError<S>>,
) -> (RenormalizationTower<S>, Option<TowerFailure>) {
    match r {
        Ok(t) => (t, None),
        Err(e) => (e.partial, Some(e.failure)),
    }
}

/// Builds levels `1..=config.levels`. Level `m` sits at the first Rauzy
/// iterate after level `m - 1` whose lengths are within `δ_m` of
/// `(1/n, ..., 1/n)`; level 1 may be the base itself. The base is
/// normalized first.
#[allow(clippy::result_large_err)] // the partial tower is the point of the error
pub fn build_tower<S: Scalar>(
    e: &Iet<S>,
    config: &TowerConfig,
) -> Result<RenormalizationTower<S>, TowerError<S>> {
    let base = e.normalized();
    let n = base.n();
    let mut tower = RenormalizationTower {
        base: base.clone(),
        levels: Vec::new(),
    };
    let mut cur = base.clone();
    let mut steps = 0usize;
    let mut scale = S::one();
    let fail = |tower: RenormalizationTower<S>, failure| {
        Err(TowerError {
            failure,
            partial: tower,
        })
    };

    for m in 1..=config.levels {
        let delta = S::from_rational(config.delta(n, m));
        let level_start = steps;
        let mut seen: HashMap<(Vec<usize>, Vec<S>), usize> = HashMap::new();
        loop {
            let fresh = m == 1 || steps > level_start;
            if fresh {
                let p = proximity(&cur);
                if p < delta {
                    break;
                }
            }
            let state = (cur.permutation().to_vec(), cur.lambda().to_vec());
            if let Some(&first) = seen.get(&state) {
                let period = steps - first;
                return fail(
                    tower,
                    TowerFailure::Periodic {
                        level: m,
                        steps,
                        period,
                    },
                );
            }
            seen.insert(state, steps);
            if steps - level_start >= config.level_cap {
                return fail(
                    tower,
                    TowerFailure::NotFound {
                        level: m,
                        cap: config.level_cap,
                    },
                );
            }
            match rauzy_step(&cur) {
                Ok(st) => {
                    scale = scale * (S::one() - &st.nu);
                    cur = st.after;
                    steps += 1;
                }
                Err(err) => {
                    let reason = err.to_string();
                    return fail(
                        tower,
                        TowerFailure::Aborted {
                            level: m,
                            steps,
                            reason,
                        },
                    );
                }
            }
        }
        let interval = Interval::new(S::zero(), scale.clone());
        let induced = match base.induce_with_cap(&interval, config.induce_cap) {
            Ok(ind) => ind,
            Err(err) => {
                let reason = err.to_string();
                return fail(
                    tower,
                    TowerFailure::Aborted {
                        level: m,
                        steps,
                        reason,
                    },
                );
            }
        };
        let level = TowerLevel {
            level: m,
            steps,
            proximity: proximity(&cur),
            delta,
            interval,
            map: cur.clone(),
            induced,
        };
        if !level.conjugacy_holds() {
            let reason = RauzyError::Inconsistent(format!("level {m}")).to_string();
            return fail(
                tower,
                TowerFailure::Aborted {
                    level: m,
                    steps,
                    reason,
                },
            );
        }
        log::debug!("tower level {m} at N = {steps}, |J| ~ {:.3e}", scale.to_f64());
        tower.levels.push(level);
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadraticReal, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn golden() -> Iet<QuadraticReal> {
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap()
    }

    #[test]
    fn default_schedule() {
        assert_eq!(default_delta(2, 1), BigRational::new(1.into(), 8.into()));
        assert_eq!(default_delta(2, 3), BigRational::new(1.into(), 16.into()));
        assert_eq!(default_delta(5, 1), BigRational::new(1.into(), 20.into()));
    }

    #[test]
    fn golden_orbit_stays_at_fixed_distance() {
        // every Rauzy iterate of the golden rotation is (1-a, a) or (a, 1-a),
        // at distance a - 1/2 ~ 0.118 from (1/2, 1/2)
        let cfg = TowerConfig {
            levels: 3,
            deltas: ["1/5", "1/10", "1/20"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
            level_cap: 50,
            ..TowerConfig::default()
        };
        let err = build_tower(&golden(), &cfg).unwrap_err();
        assert_eq!(
            err.failure,
            TowerFailure::Periodic {
                level: 2,
                steps: 2,
                period: 2
            }
        );
        assert_eq!(err.partial.levels.len(), 1);
    }

    #[test]
    fn golden_default_schedule() {
        let err = build_tower(&golden(), &TowerConfig::default()).unwrap_err();
        assert!(matches!(err.failure, TowerFailure::Periodic { level: 3, .. }));
        let t = err.partial;
        assert_eq!(t.levels.len(), 2);
        assert_eq!(t.levels[0].steps, 0);
        assert_eq!(t.levels[1].steps, 1);
        for lv in &t.levels {
            assert!(lv.conjugacy_holds());
            assert!(lv.induced.towers_tile_domain());
        }
    }

    #[test]
    fn level_budget_runs_out() {
        // 1/sqrt(2) rotation: the orbit is not periodic, and one step is too few
        let a: QuadraticReal = "0/1+1/2*sqrt(2)".parse().unwrap();
        let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &a, a]).unwrap();
        let cfg = TowerConfig {
            levels: 2,
            deltas: ["1", "1/1000000"].iter().map(|s| s.parse().unwrap()).collect(),
            level_cap: 1,
            ..TowerConfig::default()
        };
        let err = build_tower(&e, &cfg).unwrap_err();
        assert_eq!(err.failure, TowerFailure::NotFound { level: 2, cap: 1 });
    }

    #[test]
    fn rational_rotation_aborts() {
        let e = Iet::from_parts(vec![2, 1], vec![r("1/3"), r("2/3")]).unwrap();
        let err = build_tower(&e, &TowerConfig::default()).unwrap_err();
        assert!(matches!(
            err.failure,
            TowerFailure::Aborted {
                level: 2,
                steps: 1,
                ..
            }
        ));
        assert_eq!(err.partial.levels.len(), 1);
        assert_eq!(err.partial.levels[0].map.lambda(), &[r("1/2"), r("1/2")]);
    }

    #[test]
    fn vacuous_proximity_gives_level_zero() {
        let e = Iet::from_parts(vec![3, 2, 1], vec![r("1/10"), r("3/5"), r("3/10")]).unwrap();
        let cfg = TowerConfig {
            levels: 1,
            deltas: vec![BigRational::from_integer(1.into())],
            ..TowerConfig::default()
        };
        assert_eq!(build_tower(&e, &cfg).unwrap().levels[0].steps, 0);
    }
}
