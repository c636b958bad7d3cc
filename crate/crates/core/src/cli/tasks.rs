use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CliError, Output, RunSpec, Task, TaskParams};
use crate::iet::{AnyIet, Iet, Symbol};
use crate::rauzy::{
    build_tower, candidate_report, gordon_lengths_via_tower, rauzy_class, rauzy_step, tower_or_partial,
    CandidateReport, RenormalizationTower, TowerConfig, TowerFailure,
};
use crate::scalar::{QuadraticReal, Rational, Scalar};
use crate::spectral::{
    band_spectrum, default_potential, fibonacci_trace_check, fibonacci_word, finite_box_eigenvalues,
    gordon_nondecay_check, hull_invariance_check, lyapunov_estimate, prefix_approximant, trace_polynomial,
    NumericMode, Potential, SpectrumOptions, DEFAULT_COUPLING, DEFAULT_EIGEN_TOL,
};
use crate::symbolic::{aperiodicity_check, build_cylinders, condition_b_scores, gordon_scan};

/// Random sample points are multiples of `2^-SAMPLE_BITS` of the domain.
const SAMPLE_BITS: u32 = 20;
/// Spectrum output includes the trace polynomial up to this degree.
const POLY_PRINT_LIMIT: usize = 64;

macro_rules! on_iet {
    ($spec:expr, $f:ident $(, $arg:expr)*) => {
        match iet_of($spec)? {
            AnyIet::Rational(e) => $f(&e $(, $arg)*),
            AnyIet::Quadratic(e) => $f(&e $(, $arg)*),
        }
    };
}

pub(crate) fn dispatch(spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    match spec.task {
        Task::RauzyOrbit => on_iet!(spec, rauzy_orbit, p, out),
        Task::Classes => on_iet!(spec, classes, out),
        Task::Tower => on_iet!(spec, tower, p, out),
        Task::Candidates => on_iet!(spec, candidates, p, out),
        Task::Itinerary => on_iet!(spec, itinerary, spec, out),
        Task::Cylinders => on_iet!(spec, cylinders, p, out),
        Task::ConditionB => on_iet!(spec, condition_b, p, out),
        Task::GordonScan => on_iet!(spec, gordon_scan_task, spec, out),
        Task::GordonTower => on_iet!(spec, gordon_tower, spec, out),
        Task::Spectrum => spectrum(spec, out),
        Task::Eigenbox => eigenbox(spec, out),
        Task::Lyapunov => on_iet!(spec, lyapunov, spec, out),
        Task::HullCheck => hull_check(spec, out),
        Task::FibonacciCheck => fibonacci_check(p, out),
        Task::Verify => {
            let report = super::verify_suite();
            out.stdout = Some(report.lines());
            out.json("verify.json", &report);
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::Math {
                    module: "verify",
                    name: "PropertyFailed".into(),
                    message: format!("{} properties failed", report.failures()),
                })
            }
        }
    }
}

fn iet_of(spec: &RunSpec) -> Result<AnyIet, CliError> {
    let desc = spec
        .config
        .iet
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing \"iet\" description".into()))?;
    Ok(desc.to_iet()?)
}

fn parse<S: Scalar>(s: &str) -> Result<S, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

fn parse_ratio(s: &str) -> Result<BigRational, CliError> {
    parse::<Rational>(s).map(Rational::into_ratio)
}

/// Explicit points, else `samples` seeded random points, else the origin.
fn points<S: Scalar>(e: &Iet<S>, spec: &RunSpec) -> Result<Vec<S>, CliError> {
    let p = &spec.config.params;
    if let Some(list) = &p.points {
        return list.iter().map(|s| parse(s)).collect();
    }
    let Some(n) = p.samples else {
        return Ok(vec![e.origin().clone()]);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.config.seed);
    let len = e.domain().length();
    let den = S::from_rational(BigRational::from_integer(BigInt::from(1u64 << SAMPLE_BITS)));
    Ok((0..n)
        .map(|_| {
            let u: u64 = rng.gen_range(0..1u64 << SAMPLE_BITS);
            e.origin().clone() + len.clone() * S::from_integer(u as i64) / &den
        })
        .collect())
}

fn tower_config(p: &TaskParams) -> Result<TowerConfig, CliError> {
    let mut cfg = TowerConfig::with_levels(p.levels.unwrap_or(3));
    if let Some(d) = &p.deltas {
        cfg.deltas = d.iter().map(|s| parse_ratio(s)).collect::<Result<_, _>>()?;
    }
    if let Some(cap) = p.level_cap {
        cfg.level_cap = cap;
    }
    Ok(cfg)
}

fn potential<S: Scalar>(p: &TaskParams, alphabet: usize) -> Result<Potential<S>, CliError> {
    let coupling = p.coupling.as_deref().map(parse::<S>).transpose()?;
    match &p.potential {
        Some(vals) => {
            let values = vals.iter().map(|s| parse(s)).collect::<Result<Vec<S>, _>>()?;
            Ok(Potential::new(values, coupling)?)
        }
        None => Ok(default_potential(
            alphabet.max(1),
            coupling.unwrap_or_else(|| S::from_integer(DEFAULT_COUPLING)),
        )?),
    }
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn exact_mode_only(spec: &RunSpec, out: &mut Output) {
    if spec.mode == Some(NumericMode::Float) {
        out.notes.push(format!(
            "{} runs in exact arithmetic only; --mode float ignored",
            spec.task.name()
        ));
    }
    out.mode = Some(NumericMode::Exact);
}

#[derive(Serialize)]
struct OrbitRow {
    step: usize,
    step_type: crate::rauzy::StepType,
    nu: String,
    nu_approx: f64,
    perm: Vec<usize>,
    lambda: Vec<String>,
}

fn rauzy_orbit<S: Scalar>(e: &Iet<S>, p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let mut cur = e.normalized();
    let mut rows = Vec::new();
    let mut failure = None;
    for step in 1..=p.steps.unwrap_or(20) {
        match rauzy_step(&cur) {
            Ok(st) => {
                rows.push(OrbitRow {
                    step,
                    step_type: st.step_type,
                    nu: st.nu.to_string(),
                    nu_approx: st.nu.to_f64(),
                    perm: st.after.permutation().to_vec(),
                    lambda: st.after.lambda().iter().map(ToString::to_string).collect(),
                });
                cur = st.after;
            }
            Err(err) => {
                failure = Some(err);
                break;
            }
        }
    }
    out.json(
        "rauzy_orbit.json",
        &serde_json::json!({
            "start": e.normalized().describe(),
            "steps": rows,
            "stopped": failure.as_ref().map(ToString::to_string),
        }),
    );
    match failure {
        Some(err) => Err(err.into()),
        None => Ok(()),
    }
}

fn classes<S: Scalar>(e: &Iet<S>, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let class = rauzy_class(e.permutation())?;
    let edges: Vec<serde_json::Value> = class
        .edges
        .iter()
        .map(
            |((from, ty), to)| serde_json::json!({"from": from.to_vec(), "step_type": ty, "to": to.to_vec()}),
        )
        .collect();
    out.json(
        "classes.json",
        &serde_json::json!({
            "start": e.permutation().to_vec(),
            "size": class.len(),
            "members": class.members.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
            "edges": edges,
        }),
    );
    Ok(())
}

fn failure_value(f: &Option<TowerFailure>) -> serde_json::Value {
    serde_json::to_value(f).expect("failure serializes")
}

fn tower<S: Scalar>(e: &Iet<S>, p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let (t, failure) = tower_or_partial(build_tower(e, &tower_config(p)?));
    out.json(
        "tower.json",
        &serde_json::json!({"levels": t.report(), "failure": failure_value(&failure)}),
    );
    match failure {
        Some(f) => Err(CliError::math("RauzyError", f)),
        None => Ok(()),
    }
}

type TowerRun<S> = (
    RenormalizationTower<S>,
    Vec<CandidateReport<S>>,
    Option<TowerFailure>,
);

/// Candidate reports on every constructed level; a tower failure only
/// limits the levels reported.
fn tower_candidates<S: Scalar>(
    e: &Iet<S>,
    p: &TaskParams,
    out: &mut Output,
) -> Result<TowerRun<S>, CliError> {
    let (t, failure) = tower_or_partial(build_tower(e, &tower_config(p)?));
    if let Some(f) = &failure {
        out.notes.push(format!("tower stopped early: {f}"));
    }
    let eps: S = parse(p.epsilon.as_deref().unwrap_or("1/2"))?;
    let reports = (1..=t.levels.len())
        .map(|m| candidate_report(&t, m, &eps))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((t, reports, failure))
}

fn candidates<S: Scalar>(e: &Iet<S>, p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let (t, reports, failure) = tower_candidates(e, p, out)?;
    out.json(
        "candidates.json",
        &serde_json::json!({
            "tower": t.report(),
            "tower_failure": failure_value(&failure),
            "levels": reports.iter().map(CandidateReport::summary).collect::<Vec<_>>(),
        }),
    );
    Ok(())
}

fn symbols_text(s: &[Symbol]) -> String {
    crate::spectral::word_label(s)
}

fn itinerary<S: Scalar>(e: &Iet<S>, spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    exact_mode_only(spec, out);
    let p = &spec.config.params;
    let (lo, hi) = p.window.unwrap_or((0, 99));
    let mut rows = Vec::new();
    for x in points(e, spec)? {
        let itin = e.orbit_symbols(&x, lo, hi)?;
        rows.push(serde_json::json!({
            "point": x.to_string(),
            "point_approx": x.to_f64(),
            "first_index": itin.first_index(),
            "symbols": symbols_text(&itin.symbols),
        }));
    }
    let keane = p.horizon.map(|h| e.keane_check(h));
    out.json(
        "itinerary.json",
        &serde_json::json!({"window": [lo, hi], "orbits": rows, "keane": keane}),
    );
    Ok(())
}

#[derive(Serialize)]
struct CylinderRow {
    n: usize,
    words: usize,
    eta: String,
    eta_approx: f64,
}

fn cylinders<S: Scalar>(e: &Iet<S>, p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let tree = build_cylinders(e, p.depth.unwrap_or(100))?;
    let rows: Vec<CylinderRow> = tree
        .etas()
        .iter()
        .zip(tree.complexity())
        .enumerate()
        .map(|(i, (eta, &w))| CylinderRow {
            n: i + 1,
            words: w,
            eta: eta.to_string(),
            eta_approx: eta.to_f64(),
        })
        .collect();
    out.csv("cylinders.csv", csv_bytes(&rows)?);
    out.json(
        "cylinders.json",
        &serde_json::json!({
            "depth": tree.depth(),
            "collision": tree.has_collision(),
            "complexity_strictly_increasing": aperiodicity_check(&tree),
            "complexity": tree.complexity(),
        }),
    );
    Ok(())
}

fn condition_b<S: Scalar>(e: &Iet<S>, p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let tree = build_cylinders(e, p.depth.unwrap_or(500))?;
    let threshold = p.threshold.as_deref().map(parse::<S>).transpose()?;
    let report = condition_b_scores(&tree, threshold.as_ref());
    let mut bytes = Vec::new();
    report.write_csv(&mut bytes)?;
    out.csv("condition_b.csv", bytes);
    out.json("condition_b.json", &report.to_json());
    Ok(())
}

fn gordon_scan_task<S: Scalar>(e: &Iet<S>, spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    let max_k = p.max_k.unwrap_or(1000);
    let (lo, hi) = p.window.unwrap_or((-(max_k as i64), 2 * max_k as i64));
    let grid = p.grid.as_ref().map(|g| g.points());
    out.mode = Some(if grid.is_some() {
        NumericMode::Float
    } else {
        NumericMode::Exact
    });
    let pot = potential::<S>(p, e.n())?;
    let mut summaries = Vec::new();
    let mut rows = Vec::new();
    let mut nondecay = Vec::new();
    for x in points(e, spec)? {
        let itin = e.orbit_symbols(&x, lo, hi)?;
        let cert = gordon_scan(&itin, max_k)?;
        for &k in &cert.lengths {
            rows.push(GordonRow {
                point: x.to_string(),
                k,
            });
        }
        if let Some(g) = &grid {
            nondecay.push(gordon_nondecay_check(g, &cert, &pot)?);
        }
        summaries.push(cert.summary());
    }
    out.csv("gordon_scan.csv", csv_bytes(&rows)?);
    out.json("gordon_scan.json", &summaries);
    if grid.is_some() {
        out.json("nondecay.json", &nondecay);
    }
    Ok(())
}

#[derive(Serialize)]
struct GordonRow {
    point: String,
    k: usize,
}

fn gordon_tower<S: Scalar>(e: &Iet<S>, spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    exact_mode_only(spec, out);
    let (t, reports, failure) = tower_candidates(e, &spec.config.params, out)?;
    let mut rows = Vec::new();
    for x in points(e, spec)? {
        let lengths = gordon_lengths_via_tower(&t, &reports, &x)?;
        rows.push(
            serde_json::json!({"point": x.to_string(), "point_approx": x.to_f64(), "lengths": lengths}),
        );
    }
    out.json(
        "gordon_tower.json",
        &serde_json::json!({"levels": t.levels.len(), "tower_failure": failure_value(&failure), "points": rows}),
    );
    Ok(())
}

/// The word named by `word`, `fibonacci_order` or `prefix`.
fn chosen_word(spec: &RunSpec) -> Result<Vec<Symbol>, CliError> {
    let p = &spec.config.params;
    if let Some(w) = &p.word {
        return w.symbols();
    }
    if let Some(k) = p.fibonacci_order {
        return Ok(fibonacci_word(k));
    }
    if let Some(q) = p.prefix {
        let e = iet_of(spec)?;
        let syms = match e {
            AnyIet::Rational(e) => prefix_symbols(&e, spec, q)?,
            AnyIet::Quadratic(e) => prefix_symbols(&e, spec, q)?,
        };
        return Ok(prefix_approximant(&syms, q)?);
    }
    Err(CliError::Usage(
        "give one of \"word\", \"fibonacci_order\" or \"prefix\"".into(),
    ))
}

fn prefix_symbols<S: Scalar>(e: &Iet<S>, spec: &RunSpec, q: usize) -> Result<Vec<Symbol>, CliError> {
    let x = points(e, spec)?.into_iter().next().expect("at least one point");
    Ok(e.orbit_symbols(&x, 0, q as i64 - 1)?.symbols)
}

fn alphabet(word: &[Symbol]) -> usize {
    word.iter().copied().max().unwrap_or(1) as usize
}

fn spectrum(spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    let word = chosen_word(spec)?;
    let v = potential::<QuadraticReal>(p, alphabet(&word))?;
    let mut opts = match spec.mode.unwrap_or(NumericMode::Exact) {
        NumericMode::Exact => SpectrumOptions::default(),
        NumericMode::Float => SpectrumOptions::float(),
    };
    if let Some(b) = p.grid_bits {
        opts.grid_bits = b;
    }
    if let Some(t) = p.tolerance {
        opts.float_tol = t;
    }
    out.mode = Some(opts.mode);
    out.notes.push(
        "periodic approximants are a modelling choice (explicit word, Fibonacci word, or orbit prefix)"
            .into(),
    );
    let est = band_spectrum(&word, &v, &opts)?;
    let poly = (opts.mode == NumericMode::Exact && word.len() <= POLY_PRINT_LIMIT)
        .then(|| trace_polynomial(&word, &v).map(|q| q.to_string()))
        .transpose()?;
    let mut bytes = Vec::new();
    est.write_csv_to(&mut bytes)?;
    out.csv("spectrum.csv", bytes);
    out.json(
        "spectrum.json",
        &serde_json::json!({"spectrum": est.summary(), "trace_polynomial": poly}),
    );
    Ok(())
}

#[derive(Serialize)]
struct EigenRow {
    index: usize,
    eigenvalue: f64,
}

fn eigenbox(spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    out.mode = Some(NumericMode::Float);
    let word = chosen_word(spec)?;
    let v = potential::<QuadraticReal>(p, alphabet(&word))?;
    let q = p.size.unwrap_or(word.len());
    let tol = p.tolerance.unwrap_or(DEFAULT_EIGEN_TOL);
    let eig = finite_box_eigenvalues(&word, &v, q, tol)?;
    let rows: Vec<EigenRow> = eig
        .iter()
        .enumerate()
        .map(|(i, &x)| EigenRow {
            index: i + 1,
            eigenvalue: x,
        })
        .collect();
    out.csv("eigenvalues.csv", csv_bytes(&rows)?);
    out.json(
        "eigenbox.json",
        &serde_json::json!({"size": q, "tolerance": tol, "eigenvalues": eig}),
    );
    Ok(())
}

fn lyapunov<S: Scalar>(e: &Iet<S>, spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    out.mode = Some(NumericMode::Float);
    let v = potential::<S>(p, e.n())?;
    let x = points(e, spec)?.into_iter().next().expect("at least one point");
    let grid = p.grid.clone().unwrap_or(super::Grid {
        lo: -3.0,
        hi: 5.0,
        count: 81,
    });
    let length = p.length.unwrap_or(10_000);
    let rows = grid
        .points()
        .into_iter()
        .map(|en| lyapunov_estimate(en, e, &x, &v, length))
        .collect::<Result<Vec<_>, _>>()?;
    out.csv("lyapunov.csv", csv_bytes(&rows)?);
    Ok(())
}

fn hull_check(spec: &RunSpec, out: &mut Output) -> Result<(), CliError> {
    let p = &spec.config.params;
    let word = chosen_word(spec)?;
    let v = potential::<QuadraticReal>(p, alphabet(&word))?;
    let opts = match spec.mode.unwrap_or(NumericMode::Exact) {
        NumericMode::Exact => SpectrumOptions::default(),
        NumericMode::Float => SpectrumOptions::float(),
    };
    out.mode = Some(opts.mode);
    let rep = hull_invariance_check(&word, &v, &opts)?;
    out.json("hull.json", &rep);
    Ok(())
}

fn fibonacci_check(p: &TaskParams, out: &mut Output) -> Result<(), CliError> {
    out.mode = Some(NumericMode::Exact);
    let (lo, hi) = p.orders.unwrap_or((3, 15));
    let c: Rational = parse(p.coupling.as_deref().unwrap_or("2"))?;
    let energies: Vec<Rational> = match &p.energies {
        Some(list) => list.iter().map(|s| parse(s)).collect::<Result<_, _>>()?,
        None => (-10..10).map(|k| Rational::new(3 * k + 1, 7)).collect(),
    };
    let rep = fibonacci_trace_check(&energies, lo, hi, &c)?;
    out.json(
        "trace_map.json",
        &serde_json::json!({"passed": rep.passed(), "report": rep}),
    );
    Ok(())
}
