use iet_cantor::scalar::Rational;
use iet_cantor::spectral::{default_potential, hull_invariance_check, SpectrumOptions};

fn main() {
    let v = default_potential(3, Rational::from(2)).unwrap();
    for word in [
        vec![1, 2],
        vec![1, 1, 2, 3],
        vec![3, 1, 2, 2, 1],
        vec![1, 2, 3, 1, 3, 2, 2],
    ] {
        let rep = hull_invariance_check(&word, &v, &SpectrumOptions::default()).unwrap();
        println!(
            "{:<8} {} rotations, {} bands, rotations identical: {}, reversal identical: {}",
            rep.word, rep.rotations, rep.band_count, rep.rotations_identical, rep.reversal_identical
        );
    }
}
