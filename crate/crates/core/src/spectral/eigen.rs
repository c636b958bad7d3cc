use super::{Potential, SpectralError};
use crate::iet::Symbol;
use crate::scalar::Scalar;

/// Default bisection tolerance for box eigenvalues.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

/// Number of eigenvalues below `x` of the tridiagonal matrix with diagonal
/// `diag` and unit off-diagonal (signs of the LDLᵀ pivots).
pub(crate) fn count_below(diag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut u = 1.0;
    for (j, &d) in diag.iter().enumerate() {
        u = if j == 0 { d - x } else { d - x - 1.0 / u };
        if u == 0.0 {
            u = -f64::EPSILON * (1.0 + x.abs());
        }
        if u < 0.0 {
            count += 1;
        }
    }
    count
}

/// Sorted eigenvalues of a unit off-diagonal tridiagonal matrix.
pub(crate) fn tridiagonal_eigenvalues(diag: &[f64], tol: f64) -> Vec<f64> {
    let q = diag.len();
    if q == 0 {
        return Vec::new();
    }
    let lo0 = diag.iter().copied().fold(f64::INFINITY, f64::min) - 2.0;
    let hi0 = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 2.0;
    (0..q)
        .map(|k| {
            // the (k+1)-th eigenvalue: smallest x with count_below(x) > k
            let (mut lo, mut hi) = (lo0, hi0);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(diag, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Dirichlet eigenvalues of the `q × q` truncation over the first `q`
/// symbols of `window`, each to within `tol`.
pub fn finite_box_eigenvalues<S: Scalar>(
    window: &[Symbol],
    v: &Potential<S>,
    q: usize,
    tol: f64,
) -> Result<Vec<f64>, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::Parameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if q == 0 || window.len() < q {
        return Err(SpectralError::Parameter(format!(
            "box size {q} needs a window of at least {q} symbols, got {}",
            window.len()
        )));
    }
    let diag = v.f64_lookup(&window[..q])?;
    Ok(tridiagonal_eigenvalues(&diag, tol))
}
