use serde::Serialize;

use super::{Potential, SpectralError, TransferMatrix};
use crate::iet::{Iet, Symbol};
use crate::scalar::Scalar;

/// Shortest orbit accepted by [`lyapunov_estimate`].
pub const MIN_LYAPUNOV_LENGTH: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub energy: f64,
    pub length: usize,
    /// `(1/N) log ‖T_N ⋯ T_1‖`.
    pub average: f64,
    /// Growth rate over the last quarter of the orbit alone.
    pub last_quarter: f64,
}

/// Growth rate of transfer products along an explicit symbol sequence.
pub fn lyapunov_of_symbols<S: Scalar>(
    e: f64,
    symbols: &[Symbol],
    v: &Potential<S>,
) -> Result<LyapunovEstimate, SpectralError> {
    if symbols.is_empty() {
        return Err(SpectralError::EmptyWord);
    }
    let vals = v.f64_lookup(symbols)?;
    let n = vals.len();
    let quarter_mark = n - n / 4;
    let mut m = TransferMatrix::<f64>::identity();
    let mut log_scale = 0.0;
    let mut at_mark = 0.0;
    for (j, &x) in vals.iter().enumerate() {
        m = m.push_companion(&(e - x));
        let s = m.max_abs();
        if !(1e-64..=1e64).contains(&s) {
            log_scale += s.ln();
            m = m.scale(1.0 / s);
        }
        if j + 1 == quarter_mark {
            at_mark = log_scale + m.frobenius().ln();
        }
    }
    let total = log_scale + m.frobenius().ln();
    let tail = (n - quarter_mark).max(1);
    Ok(LyapunovEstimate {
        energy: e,
        length: n,
        average: total / n as f64,
        last_quarter: (total - at_mark) / tail as f64,
    })
}

/// Growth rate along the forward itinerary of `x` under `iet`.
pub fn lyapunov_estimate<S: Scalar>(
    e: f64,
    iet: &Iet<S>,
    x: &S,
    v: &Potential<S>,
    length: usize,
) -> Result<LyapunovEstimate, SpectralError> {
    if length < MIN_LYAPUNOV_LENGTH {
        return Err(SpectralError::Parameter(format!(
            "orbit length {length} below {MIN_LYAPUNOV_LENGTH}"
        )));
    }
    let itin = iet.orbit_symbols(x, 0, length as i64 - 1)?;
    lyapunov_of_symbols(e, &itin.symbols, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn free() -> Potential<Rational> {
        Potential::new(vec![Rational::zero()], None).unwrap()
    }

    #[test]
    fn free_operator() {
        let word = vec![1; 20_000];
        let inside = lyapunov_of_symbols(0.0, &word, &free()).unwrap();
        assert!(inside.average.abs() < 1e-3);
        let outside = lyapunov_of_symbols(3.0, &word, &free()).unwrap();
        let expected = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((outside.average - expected).abs() < 1e-3);
        assert!((outside.last_quarter - expected).abs() < 1e-3);
    }

    #[test]
    fn along_an_exchange() {
        let iet = Iet::from_parts(vec![2, 1], vec!["1/3".parse().unwrap(), "2/3".parse().unwrap()]).unwrap();
        let v = Potential::new(vec![Rational::zero(), Rational::zero() - Rational::one()], None).unwrap();
        let est = lyapunov_estimate(5.0, &iet, &Rational::zero(), &v, 3000).unwrap();
        assert!(est.average > 1.0);
        assert!(lyapunov_estimate(5.0, &iet, &Rational::zero(), &v, 10).is_err());
    }
}
