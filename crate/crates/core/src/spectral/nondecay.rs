use rayon::prelude::*;
use serde::Serialize;

use super::{Potential, SpectralError};
use crate::scalar::Scalar;
use crate::symbolic::GordonCertificate;

/// Initial vectors `(ψ_0, ψ_1)` tried at every energy.
const INITIAL: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];

/// Relative slack on the ½ bound, absorbing float rounding.
const SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub energy: f64,
    pub k: usize,
    pub initial: (f64, f64),
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NondecayReport {
    pub energies: usize,
    pub lengths: Vec<usize>,
    pub checks: usize,
    /// Smallest `max(‖Φ_k‖, ‖Φ_2k‖, ‖Φ_-k‖) / ‖Φ_0‖` seen.
    pub min_ratio: Option<f64>,
    pub violations: Vec<Violation>,
    pub note: Option<String>,
}

impl NondecayReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Log-scaled state `(ψ_j, ψ_{j+1})`.
struct Walker {
    x: f64,
    y: f64,
    log_scale: f64,
}

impl Walker {
    fn log_norm(&self) -> f64 {
        self.log_scale + self.x.hypot(self.y).ln()
    }

    fn renormalize(&mut self) {
        let s = self.x.abs().max(self.y.abs());
        if s > 1e100 || (s < 1e-100 && s > 0.0) {
            self.x /= s;
            self.y /= s;
            self.log_scale += s.ln();
        }
    }
}

/// Checks Gordon's ½ bound for every certified length of `cert` at every
/// energy, by direct evolution of `ψ_{j+1} + ψ_{j-1} + V(ω_j) ψ_j = E ψ_j`.
///
/// With `Φ_j = (ψ_j, ψ_{j+1})` the bound reads
/// `max(‖Φ_k‖, ‖Φ_{2k}‖, ‖Φ_{-k}‖) ≥ ½ ‖Φ_0‖`.
pub fn gordon_nondecay_check<S: Scalar>(
    energies: &[f64],
    cert: &GordonCertificate<S>,
    v: &Potential<S>,
) -> Result<NondecayReport, SpectralError> {
    let lengths = cert.lengths.clone();
    let Some(&kmax) = lengths.iter().max() else {
        return Ok(NondecayReport {
            energies: energies.len(),
            lengths,
            checks: 0,
            min_ratio: None,
            violations: Vec::new(),
            note: Some("no lengths to check".into()),
        });
    };
    let itin = &cert.itinerary;
    let kmax = kmax as i64;
    let needed = (1 - kmax, 2 * kmax);
    if !itin.covers(needed.0, needed.1) {
        return Err(SpectralError::InsufficientWindow {
            needed,
            have: (itin.first_index(), itin.last_index()),
        });
    }
    let start = (needed.0 - itin.first_index()) as usize;
    let vals = v.f64_lookup(&itin.symbols[start..start + (3 * kmax) as usize])?;
    // vals[i] is V(ω_{i + 1 - kmax})
    let pot = |j: i64| vals[(j + kmax - 1) as usize];

    let per_energy: Vec<(f64, Vec<Violation>)> = energies
        .par_iter()
        .map(|&e| {
            let mut min_ratio = f64::INFINITY;
            let mut bad = Vec::new();
            for &init in &INITIAL {
                let log0 = init.0.hypot(init.1).ln();
                // forward: Φ_j → Φ_{j+1} uses V(ω_{j+1})
                let mut fwd = vec![0.0; 2 * kmax as usize + 1];
                let mut w = Walker {
                    x: init.0,
                    y: init.1,
                    log_scale: 0.0,
                };
                fwd[0] = w.log_norm();
                for j in 0..2 * kmax {
                    let next = (e - pot(j + 1)) * w.y - w.x;
                    w.x = w.y;
                    w.y = next;
                    w.renormalize();
                    fwd[(j + 1) as usize] = w.log_norm();
                }
                // backward: Φ_j → Φ_{j-1} uses V(ω_j)
                let mut bwd = vec![0.0; kmax as usize + 1];
                let mut w = Walker {
                    x: init.0,
                    y: init.1,
                    log_scale: 0.0,
                };
                bwd[0] = w.log_norm();
                for j in 0..kmax {
                    let prev = (e - pot(-j)) * w.x - w.y;
                    w.y = w.x;
                    w.x = prev;
                    w.renormalize();
                    bwd[(j + 1) as usize] = w.log_norm();
                }
                for &k in &lengths {
                    let m = fwd[k].max(fwd[2 * k]).max(bwd[k]);
                    let ratio = (m - log0).exp();
                    min_ratio = min_ratio.min(ratio);
                    if ratio < 0.5 * (1.0 - SLACK) {
                        bad.push(Violation {
                            energy: e,
                            k,
                            initial: init,
                            ratio,
                        });
                    }
                }
            }
            (min_ratio, bad)
        })
        .collect();

    let min_ratio = per_energy.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    Ok(NondecayReport {
        energies: energies.len(),
        checks: energies.len() * lengths.len() * INITIAL.len(),
        lengths,
        min_ratio: min_ratio.is_finite().then_some(min_ratio),
        violations: per_energy.into_iter().flat_map(|p| p.1).collect(),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::Itinerary;
    use crate::scalar::Rational;
    use crate::symbolic::gordon_scan;

    fn v() -> Potential<Rational> {
        Potential::new(vec![Rational::zero(), Rational::from_integer(2)], None).unwrap()
    }

    fn periodic_itinerary(word: &[u16], reps: usize) -> Itinerary<Rational> {
        let symbols: Vec<u16> = word.iter().copied().cycle().take(word.len() * reps).collect();
        let offset = -((word.len() * reps / 3) as i64 / word.len() as i64 * word.len() as i64);
        Itinerary {
            symbols,
            base: Rational::zero(),
            offset,
        }
    }

    #[test]
    fn periodic_word_never_violates() {
        let itin = periodic_itinerary(&[1, 2, 2], 60);
        let cert = gordon_scan(&itin, 50).unwrap();
        assert!(cert.lengths.contains(&3));
        let grid: Vec<f64> = (0..61).map(|i| -3.0 + 0.1 * i as f64).collect();
        let rep = gordon_nondecay_check(&grid, &cert, &v()).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.min_ratio.unwrap() >= 0.5);
    }

    #[test]
    fn empty_certificate() {
        let itin = Itinerary {
            symbols: vec![1, 2],
            base: Rational::zero(),
            offset: 0,
        };
        let cert = GordonCertificate {
            itinerary: itin,
            max_k: 0,
            lengths: Vec::new(),
        };
        let rep = gordon_nondecay_check(&[0.0], &cert, &v()).unwrap();
        assert_eq!(rep.note.as_deref(), Some("no lengths to check"));
        assert!(rep.passed());
    }

    #[test]
    fn short_window_is_an_error() {
        let itin = periodic_itinerary(&[1, 2], 30);
        let mut cert = gordon_scan(&itin, 5).unwrap();
        cert.lengths.push(500);
        assert!(matches!(
            gordon_nondecay_check(&[0.0], &cert, &v()),
            Err(SpectralError::InsufficientWindow { .. })
        ));
    }
}
