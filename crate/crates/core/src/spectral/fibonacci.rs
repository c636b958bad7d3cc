use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{word_transfer, Potential, SpectralError};
use crate::iet::Symbol;
use crate::scalar::{fmt_ratio, Rational, Scalar};

/// `F_0 = 1`, `F_1 = 2`, `F_{k+1} = F_k F_{k-1}`: prefixes of the Sturmian
/// coding of the golden rotation, in which symbol 2 is the more frequent.
pub fn fibonacci_word(order: usize) -> Vec<Symbol> {
    let (mut prev, mut cur) = (vec![1], vec![2]);
    if order == 0 {
        return prev;
    }
    for _ in 1..order {
        let next: Vec<Symbol> = cur.iter().chain(&prev).copied().collect();
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceMapRow {
    pub energy: String,
    /// Full traces `x_k = tr M(F_k)` for each order, as exact strings.
    pub traces: Vec<String>,
    /// Whether `x_{k+1} = x_k x_{k-1} - x_{k-2}` held at every order.
    pub recursion_holds: bool,
    /// `h_{k+1}² + h_k² + h_{k-1}² - 2 h_{k+1} h_k h_{k-1} - 1` with
    /// half-traces `h = x/2`; one exact value per consecutive triple.
    pub invariants: Vec<String>,
    pub invariant_constant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceMapReport {
    pub orders: (usize, usize),
    pub coupling: String,
    /// `c²/4`, the predicted value of the invariant.
    pub expected_invariant: String,
    pub rows: Vec<TraceMapRow>,
}

impl TraceMapReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.recursion_holds && r.invariant_constant && r.invariants[0] == self.expected_invariant)
    }
}

/// Exact traces of Fibonacci words of orders `lo..=hi` with `V = (0, c)`,
/// checked against the trace-map recursion and its invariant.
pub fn fibonacci_trace_check(
    energies: &[Rational],
    lo: usize,
    hi: usize,
    c: &Rational,
) -> Result<TraceMapReport, SpectralError> {
    if hi < lo + 3 {
        return Err(SpectralError::Parameter(format!(
            "orders {lo}..={hi} give no recursion step"
        )));
    }
    let v = Potential::new(vec![Rational::zero(), c.clone()], None)?;
    let words: Vec<Vec<Symbol>> = (lo..=hi).map(fibonacci_word).collect();
    let rows = energies
        .par_iter()
        .map(|e| {
            let x: Vec<Rational> = words
                .iter()
                .map(|w| word_transfer(e, w, &v).map(|m| m.trace()))
                .collect::<Result<_, _>>()?;
            let recursion_holds = (3..x.len()).all(|k| x[k] == x[k - 1].clone() * &x[k - 2] - &x[k - 3]);
            let half = Rational::new(1, 2);
            let h: Vec<Rational> = x.iter().map(|t| t.clone() * &half).collect();
            let invariants: Vec<Rational> = (2..h.len())
                .map(|k| {
                    let (a, b, d) = (&h[k], &h[k - 1], &h[k - 2]);
                    a.clone() * a + b.clone() * b + d.clone() * d
                        - Rational::from_integer(2) * a.clone() * b * d
                        - Rational::one()
                })
                .collect();
            let invariant_constant = invariants.windows(2).all(|w| w[0] == w[1]);
            Ok(TraceMapRow {
                energy: e.to_string(),
                traces: x.iter().map(ToString::to_string).collect(),
                recursion_holds,
                invariants: invariants.iter().map(ToString::to_string).collect(),
                invariant_constant,
            })
        })
        .collect::<Result<Vec<_>, SpectralError>>()?;
    let expected: BigRational = (c.clone() * c / Rational::from_integer(4)).into_ratio();
    Ok(TraceMapReport {
        orders: (lo, hi),
        coupling: c.to_string(),
        expected_invariant: fmt_ratio(&expected),
        rows,
    })
}
