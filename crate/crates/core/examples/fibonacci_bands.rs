use iet_cantor::scalar::Rational;
use iet_cantor::spectral::{
    band_spectrum, default_potential, fibonacci_word, trace_polynomial, SpectrumOptions,
};

fn main() {
    let v = default_potential(2, Rational::from(2)).unwrap();
    println!(
        "tr M(F_4) = {}",
        trace_polynomial(&fibonacci_word(4), &v).unwrap()
    );
    for k in 3..=10 {
        let w = fibonacci_word(k);
        let est = band_spectrum(&w, &v, &SpectrumOptions::default()).unwrap();
        println!(
            "order {k:>2} (q = {:>3}): {:>3} bands, measure ~ {:.6}",
            w.len(),
            est.bands.len(),
            est.measure_approx()
        );
    }
}
