use serde::Serialize;

use super::{RauzyError, RenormalizationTower, TowerLevel};
use crate::iet::{Iet, Interval};
use crate::scalar::Scalar;
use crate::symbolic::is_gordon_triple;

/// Candidate construction on one continuity interval `I_k` of `E_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord<S> {
    /// One-based index of `I_k`.
    pub k: usize,
    /// `I_k` in level coordinates.
    pub interval: Interval<S>,
    /// Return time of `I_k` to `J_m` under the base map (steps outside).
    pub return_time: usize,
    /// `L`: a continuity interval of the first return `F` of `E_m` to
    /// `I_k` on which `F⁻¹` and `F⁻²` are also translations.
    pub l: Interval<S>,
    /// `M_k = F⁻²(L) ∩ F⁻¹(L) ∩ L ∩ F(L)`; `None` when empty.
    pub m: Option<Interval<S>>,
    /// Base-map length of the return of `L` to `I_k`, the repetition length
    /// carried by points of the tower over `M_k`.
    pub period: usize,
    /// `|M_k| / |I_k|`.
    pub fraction: S,
    /// Gordon triple check at the midpoint of `M_k` (in base coordinates).
    pub certified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport<S> {
    pub level: usize,
    pub epsilon: S,
    /// `1 - ε / 2^m`.
    pub bound: S,
    pub records: Vec<CandidateRecord<S>>,
    /// `Σ_k (r_k + 1) |M_k| |J_m|`: measure of the base-map towers over
    /// the `M_k`, a lower bound for the candidate set.
    pub covered_measure: S,
}

impl<S: Scalar> CandidateReport<S> {
    pub fn meets_bound(&self) -> bool {
        self.records.iter().all(|r| r.fraction >= self.bound)
    }

    /// Indices `k` with empty `M_k`.
    pub fn missing(&self) -> Vec<usize> {
        self.records
            .iter()
            .filter(|r| r.m.is_none())
            .map(|r| r.k)
            .collect()
    }

    /// Fails with the first `k` whose `M_k` is empty.
    pub fn require_all(&self) -> Result<(), RauzyError> {
        match self.missing().first() {
            Some(&k) => Err(RauzyError::NoCandidate { level: self.level, k }),
            None => Ok(()),
        }
    }

    pub fn summary(&self) -> CandidateSummary {
        CandidateSummary {
            level: self.level,
            epsilon: self.epsilon.to_string(),
            bound: self.bound.to_string(),
            bound_approx: self.bound.to_f64(),
            covered_measure: self.covered_measure.to_string(),
            covered_measure_approx: self.covered_measure.to_f64(),
            meets_bound: self.meets_bound(),
            records: self
                .records
                .iter()
                .map(|r| CandidateRecordSummary {
                    k: r.k,
                    interval: [r.interval.lo.to_string(), r.interval.hi.to_string()],
                    l: [r.l.lo.to_string(), r.l.hi.to_string()],
                    m: r.m.as_ref().map(|m| [m.lo.to_string(), m.hi.to_string()]),
                    return_time: r.return_time,
                    period: r.period,
                    fraction: r.fraction.to_string(),
                    fraction_approx: r.fraction.to_f64(),
                    certified: r.certified,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateRecordSummary {
    pub k: usize,
    pub interval: [String; 2],
    pub l: [String; 2],
    pub m: Option<[String; 2]>,
    pub return_time: usize,
    pub period: usize,
    pub fraction: String,
    pub fraction_approx: f64,
    pub certified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateSummary {
    pub level: usize,
    pub epsilon: String,
    pub bound: String,
    pub bound_approx: f64,
    pub covered_measure: String,
    pub covered_measure_approx: f64,
    pub meets_bound: bool,
    pub records: Vec<CandidateRecordSummary>,
}

// the longest continuity interval, leftmost on ties (zero-based index)
fn longest<S: Scalar>(f: &Iet<S>) -> usize {
    let lambda = f.lambda();
    let mut best = 0;
    for (i, l) in lambda.iter().enumerate() {
        if l > &lambda[best] {
            best = i;
        }
    }
    best
}

fn single<S: Scalar>(mut parts: Vec<Interval<S>>) -> Result<Interval<S>, RauzyError> {
    if parts.len() != 1 {
        return Err(RauzyError::Inconsistent(format!(
            "expected one image interval, got {}",
            parts.len()
        )));
    }
    Ok(parts.remove(0))
}

fn record<S: Scalar>(
    base: &Iet<S>,
    level: &TowerLevel<S>,
    k: usize,
) -> Result<CandidateRecord<S>, RauzyError> {
    let interval = level.map.interval(k);
    let f = level.map.induce(&interval)?;
    let fmap = &f.induced;
    let best = longest(fmap);
    let l0 = fmap.interval(best + 1);
    let finv = fmap.inverse();
    let finv2 = finv.compose(&finv)?;
    // shorten L0 so that F⁻¹ and F⁻² are translations on it
    let l = finv2
        .split(&l0)
        .into_iter()
        .map(|(p, _)| p)
        .reduce(|a, b| if b.length() > a.length() { b } else { a })
        .expect("L0 is non-empty");
    let image = l.translate(&fmap.displacements()[best]);
    let pre1 = single(finv.image_of(&l))?;
    let pre2 = single(finv2.image_of(&l))?;
    let m = pre2.intersect(&pre1).intersect(&l).intersect(&image);
    let m = (!m.is_empty()).then_some(m);

    // the E_m-word of L's return to I_k, each symbol weighted by the base
    // return time of that level interval
    let times = level.return_times();
    let period: usize = f.return_words[best]
        .iter()
        .map(|&s| times[s as usize - 1] + 1)
        .sum();
    let fraction = m
        .as_ref()
        .map_or_else(S::zero, |m| m.length() / interval.length());
    let certified = match &m {
        Some(m) => {
            let z = level.to_base(&m.midpoint());
            let p = period as i64;
            let itin = base.orbit_symbols(&z, -p, 2 * p)?;
            Some(is_gordon_triple(&itin, period).map_err(|e| RauzyError::Inconsistent(e.to_string()))?)
        }
        None => None,
    };
    Ok(CandidateRecord {
        k,
        return_time: times[k - 1],
        interval,
        l,
        m,
        period,
        fraction,
        certified,
    })
}

/// Candidate sets `M_k` for every continuity interval of level `level`.
pub fn candidate_report<S: Scalar>(
    tower: &RenormalizationTower<S>,
    level: usize,
    epsilon: &S,
) -> Result<CandidateReport<S>, RauzyError> {
    let lv = tower.level(level).ok_or(RauzyError::MissingLevel {
        level,
        built: tower.levels.len(),
    })?;
    let records = (1..=lv.map.n())
        .map(|k| record(&tower.base, lv, k))
        .collect::<Result<Vec<_>, _>>()?;
    let covered_measure = records
        .iter()
        .filter_map(|r| {
            r.m.as_ref()
                .map(|m| m.length() * S::from_integer(r.return_time as i64 + 1))
        })
        .fold(S::zero(), |a, b| a + b)
        * lv.scale();
    let two_m = S::from_rational(num_rational::BigRational::from_integer(
        num_bigint::BigInt::from(1) << level,
    ));
    Ok(CandidateReport {
        level,
        bound: S::one() - epsilon.clone() / two_m,
        epsilon: epsilon.clone(),
        records,
        covered_measure,
    })
}

/// A length emitted for a point captured by a tower level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLength {
    pub level: usize,
    pub k: usize,
    /// `j` with `E^{-j}(x) ∈ M_k` (base coordinates).
    pub offset: usize,
    pub length: usize,
}

/// Repetition lengths for `x` read off the tower: at each level, `x` is
/// captured when `E^{-j}(x)` lies in some `M_k` for `0 <= j < period`.
/// Lengths are kept strictly increasing across levels.
pub fn gordon_lengths_via_tower<S: Scalar>(
    tower: &RenormalizationTower<S>,
    reports: &[CandidateReport<S>],
    x: &S,
) -> Result<Vec<TowerLength>, RauzyError> {
    if !tower.base.contains(x) {
        return Err(RauzyError::Iet(crate::iet::IetError::OutOfDomain(x.to_string())));
    }
    let inv = tower.base.inverse();
    let mut out: Vec<TowerLength> = Vec::new();
    for rep in reports {
        let lv = tower.level(rep.level).ok_or(RauzyError::MissingLevel {
            level: rep.level,
            built: tower.levels.len(),
        })?;
        let mut best: Option<TowerLength> = None;
        for r in &rep.records {
            let Some(m) = &r.m else { continue };
            let mb = lv.interval_to_base(m);
            let mut y = x.clone();
            for j in 0..r.period {
                if mb.contains(&y) {
                    if best.as_ref().is_none_or(|b| r.period < b.length) {
                        best = Some(TowerLength {
                            level: rep.level,
                            k: r.k,
                            offset: j,
                            length: r.period,
                        });
                    }
                    break;
                }
                y = inv.evaluate(&y)?;
            }
        }
        if let Some(b) = best {
            if out.last().is_none_or(|last| b.length > last.length) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rauzy::{build_tower, tower_or_partial, TowerConfig};
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn near_periodic_rotation_has_large_candidates() {
        let e = Iet::from_parts(vec![2, 1], vec![r("501/1000"), r("499/1000")]).unwrap();
        let cfg = TowerConfig {
            levels: 1,
            deltas: vec![r("1/100").into_ratio()],
            ..TowerConfig::default()
        };
        let tower = build_tower(&e, &cfg).unwrap();
        let rep = candidate_report(&tower, 1, &r("1/2")).unwrap();
        assert!(rep.missing().is_empty());
        for rec in &rep.records {
            assert_eq!(rec.certified, Some(true));
            assert!(rec.fraction > r("9/10"), "{}", rec.fraction);
        }
        // every captured point really carries the triple
        for i in 0..40 {
            let x = Rational::new(2 * i + 1, 80);
            let lens = gordon_lengths_via_tower(&tower, std::slice::from_ref(&rep), &x).unwrap();
            for t in lens {
                let p = t.length as i64;
                let itin = e.orbit_symbols(&x, -p, 2 * p).unwrap();
                assert!(is_gordon_triple(&itin, t.length).unwrap());
            }
        }
    }

    #[test]
    fn far_exchange_lacks_candidates() {
        let e = Iet::from_parts(vec![3, 2, 1], vec![r("1/10"), r("7/10"), r("1/5")]).unwrap();
        let cfg = TowerConfig {
            levels: 1,
            deltas: vec![r("1").into_ratio()],
            ..TowerConfig::default()
        };
        let (tower, _) = tower_or_partial(build_tower(&e, &cfg));
        let rep = candidate_report(&tower, 1, &r("1/2")).unwrap();
        assert!(!rep.meets_bound());
        assert_eq!(rep.covered_measure, r("1/5"));
        assert_eq!(rep.missing(), vec![3]);
        assert!(matches!(
            rep.require_all(),
            Err(RauzyError::NoCandidate { level: 1, k: 3 })
        ));
    }

    #[test]
    fn periodic_exchange_is_fully_covered() {
        let spec = crate::rauzy::periodic_iet(&crate::iet::Permutation::new(vec![2, 3, 1]).unwrap()).unwrap();
        let cfg = TowerConfig::with_levels(1);
        let (tower, _) = tower_or_partial(build_tower(&spec.iet, &cfg));
        let rep = candidate_report(&tower, 1, &r("1/2")).unwrap();
        eprintln!("{}", serde_json::to_string(&rep.summary()).unwrap());
        assert!(rep.missing().is_empty());
        assert!(rep.records.iter().all(|rec| rec.fraction == r("1")));
        assert_eq!(rep.covered_measure, r("1"));
        assert!(rep.meets_bound());
    }

    #[test]
    fn golden_rotation_has_no_quadruple_overlap() {
        use crate::scalar::QuadraticReal;
        let r_q = |s: &str| s.parse::<QuadraticReal>().unwrap();
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap();
        let (tower, _) = tower_or_partial(build_tower(&e, &TowerConfig::default()));
        assert_eq!(tower.levels.len(), 2);
        for level in 1..=2 {
            let rep = candidate_report(&tower, level, &r_q("1/2")).unwrap();
            assert_eq!(rep.missing(), vec![1, 2], "level {level}");
            assert!(rep.covered_measure.is_zero());
            assert!(!rep.meets_bound());
        }
    }

    #[test]
    fn missing_level() {
        let e = Iet::from_parts(vec![2, 1], vec![r("1/3"), r("2/3")]).unwrap();
        let (tower, _) = tower_or_partial(build_tower(&e, &TowerConfig::default()));
        assert!(matches!(
            candidate_report(&tower, 5, &r("1/2")),
            Err(RauzyError::MissingLevel { level: 5, built: 1 })
        ));
    }
}
