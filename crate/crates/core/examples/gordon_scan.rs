use iet_cantor::iet::Iet;
use iet_cantor::scalar::{QuadraticReal, Scalar};
use iet_cantor::spectral::{default_potential, gordon_nondecay_check};
use iet_cantor::symbolic::gordon_scan;

fn main() {
    let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
    let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap();
    let max_k = 2000;
    for x in ["0", "1/7", "5/11"] {
        let x: QuadraticReal = x.parse().unwrap();
        let itin = e.orbit_symbols(&x, -(max_k as i64), 2 * max_k as i64).unwrap();
        let cert = gordon_scan(&itin, max_k).unwrap();
        println!("x = {x}: triples at lengths {:?}", cert.lengths);

        let v = default_potential(2, QuadraticReal::from_integer(2)).unwrap();
        let grid: Vec<f64> = (0..41).map(|i| -2.0 + 0.15 * i as f64).collect();
        let rep = gordon_nondecay_check(&grid, &cert, &v).unwrap();
        println!(
            "  {} checks, {} violations, min ratio {:?}",
            rep.checks,
            rep.violations.len(),
            rep.min_ratio
        );
    }
}
