use rayon::prelude::*;
use serde::Serialize;

use super::SymbolicError;
use crate::iet::{Itinerary, Symbol};
use crate::scalar::Scalar;

/// `ω_{j-k} = ω_j = ω_{j+k}` for `1 <= j <= k`, i.e. the three blocks at
/// indices `[1-k, 0]`, `[1, k]`, `[k+1, 2k]` coincide. Needs the itinerary
/// to cover `[1-k, 2k]`.
pub fn is_gordon_triple<S>(itin: &Itinerary<S>, k: usize) -> Result<bool, SymbolicError> {
    let k = k as i64;
    if k == 0 {
        return Ok(false);
    }
    if !itin.covers(1 - k, 2 * k) {
        return Err(SymbolicError::InsufficientWindow {
            needed: (1 - k, 2 * k),
            have: (itin.first_index(), itin.last_index()),
        });
    }
    Ok(triple_at(itin.window(1 - k, 2 * k)))
}

// w has length 3k
fn triple_at(w: &[Symbol]) -> bool {
    let k = w.len() / 3;
    w[..k] == w[k..2 * k] && w[k..2 * k] == w[2 * k..]
}

/// All lengths `k <= max_k` for which the itinerary carries a Gordon triple
/// at its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GordonCertificate<S> {
    pub itinerary: Itinerary<S>,
    pub max_k: usize,
    pub lengths: Vec<usize>,
}

impl<S: Scalar> GordonCertificate<S> {
    /// The symbols on `[-k, 2k]` backing length `k`.
    pub fn window(&self, k: usize) -> &[Symbol] {
        let k = k as i64;
        self.itinerary.window(-k, 2 * k)
    }

    /// Re-checks every stored length symbol by symbol.
    pub fn reverify(&self, itin: &Itinerary<S>) -> bool {
        self.lengths
            .iter()
            .all(|&k| matches!(is_gordon_triple(itin, k), Ok(true)))
    }

    pub fn summary(&self) -> GordonSummary {
        GordonSummary {
            base: self.itinerary.base.to_string(),
            base_approx: self.itinerary.base.to_f64(),
            max_k: self.max_k,
            lengths: self.lengths.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GordonSummary {
    pub base: String,
    pub base_approx: f64,
    pub max_k: usize,
    pub lengths: Vec<usize>,
}

/// Brute-force search over `k = 1..=max_k`. The itinerary must cover
/// `[-max_k, 2 max_k]`.
pub fn gordon_scan<S: Scalar>(
    itin: &Itinerary<S>,
    max_k: usize,
) -> Result<GordonCertificate<S>, SymbolicError> {
    let m = max_k as i64;
    if !itin.covers(-m, 2 * m) {
        return Err(SymbolicError::InsufficientWindow {
            needed: (-m, 2 * m),
            have: (itin.first_index(), itin.last_index()),
        });
    }
    let lengths: Vec<usize> = (1..max_k + 1)
        .into_par_iter()
        .with_min_len(1024)
        .filter(|&k| {
            let k = k as i64;
            triple_at(itin.window(1 - k, 2 * k))
        })
        .collect();
    Ok(GordonCertificate {
        itinerary: itin.clone(),
        max_k,
        lengths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::Iet;
    use crate::scalar::Rational;

    fn itin(symbols: Vec<Symbol>, offset: i64) -> Itinerary<Rational> {
        Itinerary {
            symbols,
            base: Rational::from(0),
            offset,
        }
    }

    #[test]
    fn periodic_coding_certifies_multiples() {
        let e = Iet::from_parts(vec![2, 1], vec![Rational::new(1, 3), Rational::new(2, 3)]).unwrap();
        let it = e.orbit_symbols(&Rational::new(1, 7), -30, 60).unwrap();
        let cert = gordon_scan(&it, 30).unwrap();
        assert_eq!(cert.lengths, (1..=10).map(|i| 3 * i).collect::<Vec<_>>());
        assert!(cert.reverify(&it));
        assert_eq!(cert.window(3).len(), 10);
    }

    #[test]
    fn distinct_symbols_give_nothing() {
        let it = itin((1..=31).collect(), -10);
        assert!(gordon_scan(&it, 10).unwrap().lengths.is_empty());
    }

    #[test]
    fn window_checks() {
        let it = itin(vec![1; 10], -2);
        assert!(matches!(
            gordon_scan(&it, 3),
            Err(SymbolicError::InsufficientWindow { .. })
        ));
        assert!(is_gordon_triple(&it, 3).unwrap());
        assert!(is_gordon_triple(&it, 4).is_err());
    }

    #[test]
    fn index_convention() {
        // blocks [1-k,0], [1,k], [k+1,2k] for k = 2: indices -1..=4
        let it = itin(vec![9, 1, 2, 1, 2, 1, 2], -2);
        assert!(is_gordon_triple(&it, 2).unwrap());
        let it = itin(vec![1, 2, 1, 2, 1, 2, 9], -2);
        assert!(!is_gordon_triple(&it, 2).unwrap());
    }
}
