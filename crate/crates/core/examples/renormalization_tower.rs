use iet_cantor::iet::Iet;
use iet_cantor::rauzy::{
    build_tower, candidate_report, gordon_lengths_via_tower, tower_or_partial, TowerConfig,
};
use iet_cantor::scalar::Rational;

fn main() {
    // a rotation close to 1/2: one Rauzy level already looks periodic
    let r = |s: &str| s.parse::<Rational>().unwrap();
    let e = Iet::from_parts(vec![2, 1], vec![r("501/1000"), r("499/1000")]).unwrap();
    let cfg = TowerConfig {
        levels: 1,
        deltas: vec![r("1/100").into_ratio()],
        ..TowerConfig::default()
    };
    let (tower, failure) = tower_or_partial(build_tower(&e, &cfg));
    if let Some(f) = failure {
        println!("stopped early: {f}");
    }
    for lvl in &tower.levels {
        println!(
            "level {}: {} Rauzy steps, proximity {}, return times {:?}",
            lvl.level,
            lvl.steps,
            lvl.proximity,
            lvl.return_times()
        );
    }

    let rep = candidate_report(&tower, 1, &r("1/2")).unwrap();
    for rec in &rep.records {
        println!(
            "  M_{}: fraction {} of I_k, period {}",
            rec.k, rec.fraction, rec.period
        );
    }
    println!("bound 1 - eps/2 = {}, met: {}", rep.bound, rep.meets_bound());

    let lens = gordon_lengths_via_tower(&tower, &[rep], &r("1/3")).unwrap();
    println!(
        "tower lengths at 1/3: {:?}",
        lens.iter().map(|t| t.length).collect::<Vec<_>>()
    );
}
