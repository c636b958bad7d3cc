use iet_cantor::iet::{AnyIet, IetDescription};
use iet_cantor::scalar::QuadraticReal;

fn main() {
    let desc = IetDescription::from_json(
        r#"{"n": 2, "perm": [2, 1], "lambda": ["3/2-1/2*sqrt(5)", "-1/2+1/2*sqrt(5)"], "field": {"sqrt": 5}}"#,
    )
    .unwrap();
    let AnyIet::Quadratic(e) = desc.to_iet().unwrap() else {
        unreachable!()
    };
    let x: QuadraticReal = "1/3".parse().unwrap();

    println!("E(1/3) = {}", e.evaluate(&x).unwrap());
    let itin = e.orbit_symbols(&x, -10, 30).unwrap();
    let word: String = itin.symbols.iter().map(|s| s.to_string()).collect();
    println!("symbols on [-10, 30]: {word}");
    println!(
        "inverse undoes E: {}",
        e.inverse().evaluate(&e.evaluate(&x).unwrap()).unwrap() == x
    );

    let keane = e.keane_check(200);
    println!("no discontinuity collisions within 200 steps: {}", keane.passed());
}
