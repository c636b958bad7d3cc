//! Built-in property checks with known outcomes, including negative
//! controls that must fail in a specific way.

use serde::Serialize;

use crate::iet::{Iet, Permutation};
use crate::rauzy::{rauzy_class, rauzy_step, rauzy_step_via_induce, RauzyError};
use crate::scalar::{QuadraticReal, Rational, Scalar};
use crate::spectral::{
    default_potential, fibonacci_trace_check, fibonacci_word, gordon_nondecay_check, hull_invariance_check,
    SpectrumOptions,
};
use crate::symbolic::gordon_scan;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<VerifyLine>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// One `PASS name: detail` or `FAIL name: detail` line per check.
    pub fn lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect()
    }
}

fn line(name: &'static str, outcome: Result<(bool, String), String>) -> VerifyLine {
    match outcome {
        Ok((passed, detail)) => VerifyLine { name, passed, detail },
        Err(detail) => VerifyLine {
            name,
            passed: false,
            detail,
        },
    }
}

fn q(s: &str) -> QuadraticReal {
    s.parse().expect("literal parses")
}

fn golden() -> Iet<QuadraticReal> {
    let alpha = q("-1/2+1/2*sqrt(5)");
    Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).expect("golden rotation")
}

fn samples() -> Vec<Iet<QuadraticReal>> {
    vec![
        golden(),
        Iet::from_parts(vec![3, 2, 1], vec![q("1/5"), q("1/3"), q("7/15")]).expect("3-IET"),
        Iet::from_parts(
            vec![4, 3, 2, 1],
            vec![q("-1/2+1/2*sqrt(2)"), q("1/7"), q("81/70-1/2*sqrt(2)"), q("1/5")],
        )
        .expect("4-IET"),
    ]
}

fn rauzy_matches_induce() -> Result<(bool, String), String> {
    let mut steps = 0;
    for e in samples() {
        let mut cur = e.normalized();
        for _ in 0..6 {
            let (a, b) = match (rauzy_step(&cur), rauzy_step_via_induce(&cur)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(x), Err(y)) if x == y => break,
                (x, y) => {
                    return Ok((
                        false,
                        format!("disagree on definedness: {:?} vs {:?}", x.err(), y.err()),
                    ))
                }
            };
            if a != b {
                return Ok((false, format!("mismatch at {}", cur.permutation())));
            }
            steps += 1;
            cur = a.after;
        }
    }
    Ok((true, format!("{steps} steps agree")))
}

fn tiling() -> Result<(bool, String), String> {
    let all = samples();
    let ok = all
        .iter()
        .all(|e| e.images_tile_domain() && e.inverse().images_tile_domain());
    Ok((ok, format!("{} exchanges and inverses", all.len())))
}

fn trace_map() -> Result<(bool, String), String> {
    let energies: Vec<Rational> = (-4..=4).map(|k| Rational::new(2 * k + 1, 3)).collect();
    let rep =
        fibonacci_trace_check(&energies, 3, 12, &Rational::from_integer(2)).map_err(|e| e.to_string())?;
    Ok((
        rep.passed(),
        format!("{} energies, orders 3..=12", energies.len()),
    ))
}

fn hull() -> Result<(bool, String), String> {
    let v = default_potential(2, Rational::from_integer(2)).map_err(|e| e.to_string())?;
    let rep = hull_invariance_check(&fibonacci_word(5), &v, &SpectrumOptions::default())
        .map_err(|e| e.to_string())?;
    Ok((
        rep.holds(),
        format!("{} rotations, {} bands", rep.rotations, rep.band_count),
    ))
}

fn gordon_containment() -> Result<(bool, String), String> {
    let e = golden();
    let max_k = 150;
    let itin = e
        .orbit_symbols(&QuadraticReal::zero(), -(max_k as i64), 2 * max_k as i64)
        .map_err(|e| e.to_string())?;
    let cert = gordon_scan(&itin, max_k).map_err(|e| e.to_string())?;
    if cert.lengths.is_empty() {
        return Ok((false, "no repetition lengths found".into()));
    }
    let v = default_potential(2, QuadraticReal::from_integer(2)).map_err(|e| e.to_string())?;
    let energies: Vec<f64> = (0..25).map(|i| -2.0 + 0.25 * i as f64).collect();
    let rep = gordon_nondecay_check(&energies, &cert, &v).map_err(|e| e.to_string())?;
    Ok((
        rep.passed(),
        format!(
            "lengths {:?}, {} checks, {} violations",
            cert.lengths,
            rep.checks,
            rep.violations.len()
        ),
    ))
}

fn rejects_reducible() -> Result<(bool, String), String> {
    let p = Permutation::new(vec![2, 1, 3]).map_err(|e| e.to_string())?;
    Ok(match rauzy_class(&p) {
        Err(RauzyError::InvalidPermutation(s)) => (true, format!("{s} rejected")),
        other => (false, format!("expected InvalidPermutation, got {other:?}")),
    })
}

fn rejects_tie() -> Result<(bool, String), String> {
    let e = Iet::from_parts(vec![2, 1], vec![q("1/2"), q("1/2")]).map_err(|e| e.to_string())?;
    Ok(match rauzy_step(&e) {
        Err(RauzyError::UndefinedStep(_)) => (true, "equal competing lengths rejected".into()),
        other => (
            false,
            format!("expected UndefinedStep, got {:?}", other.map(|s| s.step_type)),
        ),
    })
}

/// Runs every built-in check.
pub fn verify_suite() -> VerifyReport {
    VerifyReport {
        checks: vec![
            line("rauzy-step-matches-induction", rauzy_matches_induce()),
            line("images-tile-domain", tiling()),
            line("fibonacci-trace-map", trace_map()),
            line("hull-rotation-invariance", hull()),
            line("gordon-nondecay", gordon_containment()),
            line("negative-reducible-permutation", rejects_reducible()),
            line("negative-length-tie", rejects_tie()),
        ],
    }
}
