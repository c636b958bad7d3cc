use std::collections::HashMap;

use serde::Serialize;

use super::Iet;
use crate::scalar::Scalar;

/// Forward orbit of interior breakpoint `from` reaching breakpoint `to`
/// after `steps` applications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscontinuityCollision {
    pub from: usize,
    pub to: usize,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeaneReport {
    pub horizon: usize,
    pub collision: Option<DiscontinuityCollision>,
}

impl KeaneReport {
    /// No collision seen: evidence (not proof) of minimality.
    pub fn passed(&self) -> bool {
        self.collision.is_none()
    }
}

impl<S: Scalar> Iet<S> {
    /// Follows the orbits of the interior breakpoints `a_1..a_{n-1}` for
    /// `horizon` steps looking for `E^m(a_i) = a_j`. Breakpoint indices in
    /// the report are one-based.
    pub fn keane_check(&self, horizon: usize) -> KeaneReport {
        let n = self.n();
        let targets: HashMap<&S, usize> = self.breakpoints()[1..n]
            .iter()
            .enumerate()
            .map(|(k, b)| (b, k + 1))
            .collect();
        let mut earliest: Option<DiscontinuityCollision> = None;
        for (from, b) in self.breakpoints()[1..n].iter().enumerate() {
            let limit = earliest.as_ref().map_or(horizon, |c| c.steps - 1);
            let mut y = b.clone();
            for m in 1..=limit {
                y = self.step(&y).1;
                if let Some(&to) = targets.get(&y) {
                    earliest = Some(DiscontinuityCollision {
                        from: from + 1,
                        to,
                        steps: m,
                    });
                    break;
                }
            }
        }
        KeaneReport {
            horizon,
            collision: earliest,
        }
    }
}
