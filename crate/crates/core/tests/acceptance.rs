//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs with `cargo test --test acceptance`; it uses its own harness so the
//! lines always reach the terminal.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iet_cantor::iet::{Iet, Interval, Permutation};
use iet_cantor::rauzy::{
    build_tower, candidate_report, gordon_lengths_via_tower, rauzy_step, rauzy_step_via_induce,
    tower_or_partial, TowerConfig,
};
use iet_cantor::scalar::{QuadraticReal, Rational, Scalar};
use iet_cantor::spectral::{
    band_spectrum, default_potential, fibonacci_trace_check, fibonacci_word, finite_box_eigenvalues,
    gordon_nondecay_check, hull_invariance_check, word_transfer, Potential, SpectrumOptions,
};
use iet_cantor::symbolic::{build_cylinders, condition_b_scores, gordon_scan, GordonCertificate};

type Outcome = Result<String, String>;

fn q(s: &str) -> QuadraticReal {
    s.parse().unwrap()
}

fn golden() -> Iet<QuadraticReal> {
    let alpha = q("-1/2+1/2*sqrt(5)");
    Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap()
}

fn dyadic<S: Scalar>(u: u64, bits: u32) -> S {
    S::from_rational(BigRational::new(BigInt::from(u), BigInt::from(1u64 << bits)))
}

fn random_rational_iet(rng: &mut ChaCha8Rng) -> Iet<Rational> {
    let n = rng.gen_range(2..=5);
    let perm = loop {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        let p = Permutation::new(images).unwrap();
        if p.is_irreducible() {
            break p;
        }
    };
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
    let total: i64 = weights.iter().sum();
    let lambda = weights.iter().map(|&w| Rational::new(w, total)).collect();
    Iet::from_parts(perm.to_vec(), lambda).unwrap()
}

fn c1_rauzy_vs_induce() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut done = 0;
    let mut ties = 0;
    while done < 200 {
        let e = random_rational_iet(&mut rng);
        let combinatorial = match rauzy_step(&e) {
            Ok(s) => s,
            Err(_) => {
                ties += 1;
                continue;
            }
        };
        let induced = rauzy_step_via_induce(&e)
            .map_err(|err| format!("induce failed on {}: {err}", e.permutation()))?;
        if combinatorial != induced {
            return Err(format!("mismatch for {} {:?}", e.permutation(), e.lambda()));
        }
        done += 1;
    }
    Ok(format!(
        "200 random exchanges agree field by field ({ties} tied draws skipped)"
    ))
}

fn c2_tiling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 25 {
        let e = random_rational_iet(&mut rng);
        let Ok(step) = rauzy_step(&e) else { continue };
        let j = Interval::new(Rational::zero(), Rational::one() - &step.nu);
        let sys = e.induce(&j).map_err(|err| err.to_string())?;
        if !sys.towers_tile_domain() {
            return Err(format!(
                "Rauzy sub-interval of {} misses: {}",
                e.permutation(),
                sys.tower_measure()
            ));
        }
        checked += 1;
    }
    let g = golden();
    for _ in 0..25 {
        let a: u64 = rng.gen_range(0..1 << 16);
        let b: u64 = rng.gen_range(a + 1..=1 << 16);
        let j = Interval::new(dyadic::<QuadraticReal>(a, 16), dyadic(b, 16));
        let sys = g.induce(&j).map_err(|err| err.to_string())?;
        if !sys.towers_tile_domain() {
            return Err(format!(
                "golden sub-interval {j:?} misses: {}",
                sys.tower_measure()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} induced systems tile exactly"))
}

fn c3_condition_b() -> Outcome {
    let tree = build_cylinders(&golden(), 2000).map_err(|e| e.to_string())?;
    let rep = condition_b_scores(&tree, None);
    let floor = rep.rows[..50].iter().map(|r| &r.score).min().unwrap().clone();
    let half = floor.clone() / QuadraticReal::from_integer(2);
    if let Some(r) = rep.rows.iter().find(|r| !r.score.is_positive()) {
        return Err(format!("n = {} has score {}", r.n, r.score));
    }
    if let Some(r) = rep.rows.iter().find(|r| r.score < half) {
        return Err(format!(
            "n = {} has score {} below half of {}",
            r.n, r.score, floor
        ));
    }
    Ok(format!(
        "min over n <= 50 is {} (~{:.4}), min over n <= 2000 is ~{:.4}",
        floor,
        floor.to_f64(),
        rep.min_score.to_f64()
    ))
}

const WINDOW_K: usize = 100_000;

/// The 20 sample points and their certificates, shared by criteria 4 and 10.
fn golden_certificates() -> Vec<GordonCertificate<QuadraticReal>> {
    let g = golden();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let points: Vec<QuadraticReal> = (0..20).map(|_| dyadic(rng.gen_range(0..1 << 20), 20)).collect();
    points
        .iter()
        .map(|x| {
            let itin = g
                .orbit_symbols(x, -(WINDOW_K as i64), 2 * WINDOW_K as i64)
                .unwrap();
            gordon_scan(&itin, WINDOW_K).unwrap()
        })
        .collect()
}

fn c4_gordon_certificate(certs: &[GordonCertificate<QuadraticReal>]) -> Outcome {
    let g = golden();
    let rich = certs.iter().filter(|c| c.lengths.len() >= 3).count();
    let counts: Vec<usize> = certs.iter().map(|c| c.lengths.len()).collect();
    let (tower, failure) = tower_or_partial(build_tower(&g, &TowerConfig::default()));
    let reports = (1..=tower.levels.len())
        .map(|m| candidate_report(&tower, m, &q("1/2")))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut tower_lengths = 0;
    for c in certs {
        let lens =
            gordon_lengths_via_tower(&tower, &reports, &c.itinerary.base).map_err(|e| e.to_string())?;
        for t in lens {
            tower_lengths += 1;
            if t.length <= WINDOW_K && !c.lengths.contains(&t.length) {
                return Err(format!(
                    "tower length {} at {} missing from scan",
                    t.length, c.itinerary.base
                ));
            }
        }
    }
    let detail = format!(
        "{rich}/20 points with >= 3 lengths (counts {counts:?}); {tower_lengths} tower-derived lengths from {} levels{}",
        tower.levels.len(),
        failure.map(|f| format!(", tower stopped: {f}")).unwrap_or_default()
    );
    if rich >= 18 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c5_candidate_bound() -> Outcome {
    let (tower, failure) = tower_or_partial(build_tower(&golden(), &TowerConfig::default()));
    let mut lines = Vec::new();
    let mut ok = true;
    for m in 1..=tower.levels.len() {
        let rep = candidate_report(&tower, m, &q("1/2")).map_err(|e| e.to_string())?;
        let fractions: Vec<String> = rep.records.iter().map(|r| r.fraction.to_string()).collect();
        let certified = rep.records.iter().all(|r| r.certified != Some(false));
        ok &= rep.meets_bound() && certified;
        lines.push(format!(
            "level {m}: bound {} fractions {:?} missing M_k {:?}",
            rep.bound,
            fractions,
            rep.missing()
        ));
    }
    let detail = format!(
        "{}{}",
        lines.join("; "),
        failure
            .map(|f| format!("; tower stopped: {f}"))
            .unwrap_or_default()
    );
    if ok && !tower.levels.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c6_spectral_exactness() -> Outcome {
    let free = Potential::new(vec![Rational::zero()], None).map_err(|e| e.to_string())?;
    let est = band_spectrum(&[1], &free, &SpectrumOptions::default()).map_err(|e| e.to_string())?;
    let two = BigRational::from_integer(BigInt::from(2));
    let b = &est.bands[..];
    if b.len() != 1
        || !b[0].lo.is_exact()
        || !b[0].hi.is_exact()
        || b[0].lo.lo != -two.clone()
        || b[0].hi.lo != two
    {
        return Err(format!("free band is {:?}", est.summary()));
    }
    let eig = finite_box_eigenvalues(&[1; 50], &free, 50, 1e-12).map_err(|e| e.to_string())?;
    let mut expected: Vec<f64> = (1..=50)
        .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 51.0).cos())
        .collect();
    expected.sort_by(f64::total_cmp);
    let err = eig
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if err > 1e-10 {
        return Err(format!("box eigenvalues off by {err:e}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let v = default_potential(3, Rational::from_integer(2)).map_err(|e| e.to_string())?;
    for _ in 0..100 {
        let len = rng.gen_range(1..=40);
        let word: Vec<u16> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
        let e = Rational::new(rng.gen_range(-400..=400), rng.gen_range(1..=97));
        let m = word_transfer(&e, &word, &v).map_err(|e| e.to_string())?;
        if m.det() != Rational::one() {
            return Err(format!("det {} for word {word:?}", m.det()));
        }
    }
    Ok(format!(
        "free band [-2, 2] exact; box eigenvalues within {err:.1e}; 100 determinants equal 1"
    ))
}

fn c7_trace_map() -> Outcome {
    let energies: Vec<Rational> = (0..20).map(|i| Rational::new(7 * i - 66, 13)).collect();
    let rep =
        fibonacci_trace_check(&energies, 3, 15, &Rational::from_integer(2)).map_err(|e| e.to_string())?;
    let detail = format!("20 energies, orders 3..=15, invariant {}", rep.expected_invariant);
    if rep.passed() && rep.expected_invariant == "1/1" {
        Ok(detail)
    } else {
        Err(format!(
            "{detail}: rows {:?}",
            rep.rows
                .iter()
                .filter(|r| !r.recursion_holds || !r.invariant_constant)
                .map(|r| &r.energy)
                .collect::<Vec<_>>()
        ))
    }
}

fn c8_measure_decay() -> Outcome {
    let v = default_potential(2, Rational::from_integer(2)).map_err(|e| e.to_string())?;
    let opts = SpectrumOptions::default();
    let spectra = (5..=12)
        .map(|k| band_spectrum(&fibonacci_word(k), &v, &opts))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let approx: Vec<String> = spectra
        .iter()
        .map(|s| format!("{:.5}", s.measure_approx()))
        .collect();
    for (k, pair) in (5..).zip(spectra.windows(2)) {
        if pair[1].measure_upper >= pair[0].measure_lower {
            return Err(format!(
                "order {} not certified below order {k}: measures {approx:?}",
                k + 1
            ));
        }
    }
    let ratio = spectra[7].measure_approx() / spectra[0].measure_approx();
    let half = spectra[0].measure_lower.clone() / BigRational::from_integer(BigInt::from(2));
    let detail = format!("measures {approx:?}, ratio order 12 / order 5 = {ratio:.4}");
    if spectra[7].measure_upper < half {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c9_hull() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let v = default_potential(4, Rational::from_integer(2)).map_err(|e| e.to_string())?;
    for _ in 0..50 {
        let len = rng.gen_range(2..=10);
        let word: Vec<u16> = (0..len).map(|_| rng.gen_range(1..=4)).collect();
        let rep = hull_invariance_check(&word, &v, &SpectrumOptions::default()).map_err(|e| e.to_string())?;
        if !rep.holds() {
            return Err(format!("rotations of {} disagree", rep.word));
        }
    }
    Ok("50 random words, every rotation has identical bands".into())
}

fn c10_nondecay(certs: &[GordonCertificate<QuadraticReal>]) -> Outcome {
    let v = default_potential(2, QuadraticReal::from_integer(2)).map_err(|e| e.to_string())?;
    let energies: Vec<f64> = (0..100).map(|i| -3.0 + 8.0 * i as f64 / 99.0).collect();
    let mut checks = 0;
    let mut min_ratio = f64::INFINITY;
    for c in certs {
        let rep = gordon_nondecay_check(&energies, c, &v).map_err(|e| e.to_string())?;
        if let Some(bad) = rep.violations.first() {
            return Err(format!(
                "violation at E = {} k = {} ratio {}",
                bad.energy, bad.k, bad.ratio
            ));
        }
        checks += rep.checks;
        if let Some(r) = rep.min_ratio {
            min_ratio = min_ratio.min(r);
        }
    }
    Ok(format!(
        "{checks} checks over 100 energies in [-3, 5], smallest ratio {min_ratio:.3}"
    ))
}

fn report(n: usize, name: &str, target: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let slow = if took > target {
        format!(" [over the {}s target]", target.as_secs())
    } else {
        String::new()
    };
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!(
        "criterion {n:>2} {tag} {name} ({:.1}s{slow}): {detail}",
        took.as_secs_f64()
    );
    ok
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let wanted = |n: usize| filter.is_empty() || filter.iter().any(|f| f == &n.to_string());
    let s = Duration::from_secs;
    let mut results = Vec::new();
    let mut run = |n: usize, name: &str, target: Duration, f: &mut dyn FnMut() -> Outcome| {
        if wanted(n) {
            results.push(report(n, name, target, f));
        }
    };
    run(1, "rauzy-vs-induce", s(60), &mut c1_rauzy_vs_induce);
    run(2, "tiling-identity", s(30), &mut c2_tiling);
    run(3, "condition-b", s(120), &mut c3_condition_b);
    let certs = if wanted(4) || wanted(10) {
        let start = Instant::now();
        let c = golden_certificates();
        println!(
            "             (golden scans over a 3e5 window: {:.1}s)",
            start.elapsed().as_secs_f64()
        );
        c
    } else {
        Vec::new()
    };
    run(4, "gordon-certificate", s(300), &mut || {
        c4_gordon_certificate(&certs)
    });
    run(5, "candidate-bound", s(120), &mut c5_candidate_bound);
    run(6, "spectral-exactness", s(30), &mut c6_spectral_exactness);
    run(7, "trace-map", s(60), &mut c7_trace_map);
    run(8, "measure-decay", s(600), &mut c8_measure_decay);
    run(9, "hull-invariance", s(60), &mut c9_hull);
    run(10, "gordon-nondecay", s(300), &mut || c10_nondecay(&certs));
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
