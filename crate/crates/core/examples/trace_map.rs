use iet_cantor::scalar::Rational;
use iet_cantor::spectral::fibonacci_trace_check;

fn main() {
    let energies: Vec<Rational> = ["-1", "0", "1/2", "3"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let rep = fibonacci_trace_check(&energies, 3, 9, &Rational::from(2)).unwrap();
    for row in &rep.rows {
        println!("E = {:>4}: traces {}", row.energy, row.traces.join(", "));
    }
    println!(
        "invariant {} at every order: {}",
        rep.expected_invariant,
        rep.passed()
    );
}
