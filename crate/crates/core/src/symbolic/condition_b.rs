use std::io::Write;

use serde::Serialize;

use super::{CylinderTree, SymbolicError};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreRow<S> {
    pub n: usize,
    pub eta: S,
    /// `n · η(n)`.
    pub score: S,
}

/// Boshernitzan scores `n · η(n)` with finite-horizon summaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionBReport<S> {
    pub rows: Vec<ScoreRow<S>>,
    /// `T(n) = max{m · η(m) : ceil(n/2) <= m <= n}`, the tail maximum
    /// standing in for the limsup at horizon `n`.
    pub tail_max: Vec<S>,
    /// `min_n T(n)`.
    pub min_tail_max: S,
    /// `min_n n · η(n)`.
    pub min_score: S,
    /// Whether `min_tail_max` is at least the requested threshold.
    pub above_threshold: Option<bool>,
    /// Set when a discontinuity orbit collided within the depth; lengths
    /// are then not guaranteed to be the measures of the cylinders.
    pub caveat: bool,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    eta: &'a str,
    eta_approx: f64,
    score: &'a str,
    score_approx: f64,
}

pub fn condition_b_scores<S: Scalar>(tree: &CylinderTree<S>, threshold: Option<&S>) -> ConditionBReport<S> {
    let rows: Vec<ScoreRow<S>> = tree
        .etas()
        .iter()
        .enumerate()
        .map(|(i, eta)| ScoreRow {
            n: i + 1,
            eta: eta.clone(),
            score: eta.clone() * S::from_integer(i as i64 + 1),
        })
        .collect();
    let tail_max: Vec<S> = (1..=rows.len())
        .map(|n| {
            rows[n.div_ceil(2) - 1..n]
                .iter()
                .map(|r| &r.score)
                .max()
                .expect("non-empty window")
                .clone()
        })
        .collect();
    let min_tail_max = tail_max.iter().min().expect("depth >= 1").clone();
    let min_score = rows.iter().map(|r| &r.score).min().expect("depth >= 1").clone();
    ConditionBReport {
        above_threshold: threshold.map(|t| &min_tail_max >= t),
        rows,
        tail_max,
        min_tail_max,
        min_score,
        caveat: tree.has_collision(),
    }
}

impl<S: Scalar> ConditionBReport<S> {
    /// Columns `n, eta, eta_approx, score, score_approx`; exact values are
    /// canonical scalar strings.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), SymbolicError> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            let eta = r.eta.to_string();
            let score = r.score.to_string();
            w.serialize(CsvRow {
                n: r.n,
                eta: &eta,
                eta_approx: r.eta.to_f64(),
                score: &score,
                score_approx: r.score.to_f64(),
            })
            .map_err(|e| SymbolicError::Output(e.to_string()))?;
        }
        w.flush().map_err(|e| SymbolicError::Output(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "n": r.n,
                "eta": r.eta.to_string(),
                "eta_approx": r.eta.to_f64(),
                "score": r.score.to_string(),
                "score_approx": r.score.to_f64(),
            })).collect::<Vec<_>>(),
            "min_score": self.min_score.to_string(),
            "min_score_approx": self.min_score.to_f64(),
            "min_tail_max": self.min_tail_max.to_string(),
            "min_tail_max_approx": self.min_tail_max.to_f64(),
            "above_threshold": self.above_threshold,
            "caveat": self.caveat,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::Iet;
    use crate::scalar::{QuadraticReal, Rational};
    use crate::symbolic::build_cylinders;

    #[test]
    fn identity_scores_grow() {
        let e = Iet::from_parts(vec![1, 2, 3], vec![Rational::new(1, 3); 3]).unwrap();
        let rep = condition_b_scores(&build_cylinders(&e, 5).unwrap(), None);
        assert!(rep.rows.iter().all(|r| r.eta == Rational::new(1, 3)));
        assert_eq!(rep.rows[4].score, Rational::new(5, 3));
        assert!(rep.caveat);
    }

    #[test]
    fn golden_scores_bounded_below() {
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap();
        let tree = build_cylinders(&e, 300).unwrap();
        let threshold: QuadraticReal = "1/4".parse().unwrap();
        let rep = condition_b_scores(&tree, Some(&threshold));
        assert!(rep.min_score.is_positive());
        assert_eq!(rep.above_threshold, Some(true));
        assert!(!rep.caveat);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,eta,eta_approx,score,score_approx\n1,"));
        assert_eq!(text.lines().count(), 301);
    }
}
