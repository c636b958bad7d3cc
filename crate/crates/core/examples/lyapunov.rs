use iet_cantor::iet::Iet;
use iet_cantor::scalar::{QuadraticReal, Scalar};
use iet_cantor::spectral::{default_potential, lyapunov_estimate};

fn main() {
    let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
    let e = Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap();
    let v = default_potential(2, QuadraticReal::from_integer(2)).unwrap();
    for i in 0..=16 {
        let en = -3.0 + 0.5 * i as f64;
        let est = lyapunov_estimate(en, &e, &QuadraticReal::zero(), &v, 20_000).unwrap();
        println!(
            "E = {en:5.2}  gamma ~ {:.5}  (last quarter {:.5})",
            est.average, est.last_quarter
        );
    }
}
