use std::cmp::Ordering;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::tridiagonal_eigenvalues;
use super::poly::{isolate_roots, IntPoly, Sturm};
use super::transfer::trace_walk;
use super::{Poly, Potential, SpectralError, TransferMatrix};
use crate::iet::Symbol;
use crate::rauzy::RenormalizationTower;
use crate::scalar::{fmt_ratio, ratio_to_f64, Scalar};

/// Band edges are reported on the dyadic grid `2^-DEFAULT_GRID_BITS`.
pub const DEFAULT_GRID_BITS: u32 = 40;

/// Bisection steps allowed when hunting for a point inside a band.
const INTERIOR_SEARCH_CAP: usize = 4096;

/// Dirichlet boxes tried (one per cyclic rotation) before giving up on
/// separators.
const SEPARATOR_ROTATIONS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Float,
}

/// How the band edges were located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandMethod {
    /// Exact bisection between certified gap points.
    Separators,
    /// Sturm isolation of the square-free parts of `p ∓ 2`.
    Sturm,
    /// Float bisection between Dirichlet eigenvalues; not certified.
    FloatSeparators,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumOptions {
    pub mode: NumericMode,
    /// Exact mode: edges are enclosed in cells of width `2^-grid_bits`.
    pub grid_bits: u32,
    /// Float mode: bracket width for edges.
    pub float_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            mode: NumericMode::Exact,
            grid_bits: DEFAULT_GRID_BITS,
            float_tol: 1e-12,
        }
    }
}

impl SpectrumOptions {
    pub fn float() -> Self {
        Self {
            mode: NumericMode::Float,
            ..Self::default()
        }
    }
}

/// A real root known to lie in `(lo, hi]`; `lo == hi` when it is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootEnclosure {
    pub fn exact(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn approx(&self) -> f64 {
        0.5 * (ratio_to_f64(&self.lo) + ratio_to_f64(&self.hi))
    }
}

/// A closed band `[lo, hi]` with enclosed endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    pub lo: RootEnclosure,
    pub hi: RootEnclosure,
    /// Shares its left edge with the previous band (a closed gap).
    pub touching_left: bool,
    pub touching_right: bool,
}

impl Band {
    /// Outward-rounded endpoints.
    pub fn outer(&self) -> (&BigRational, &BigRational) {
        (&self.lo.lo, &self.hi.hi)
    }

    pub fn width_lower(&self) -> BigRational {
        let w = &self.hi.lo - &self.lo.hi;
        if w.is_negative() {
            BigRational::zero()
        } else {
            w
        }
    }

    pub fn width_upper(&self) -> BigRational {
        &self.hi.hi - &self.lo.lo
    }
}

/// The set `{E : |tr M(E)| ≤ 2}` of a periodic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEstimate {
    pub approximant: Vec<Symbol>,
    pub mode: NumericMode,
    pub method: BandMethod,
    pub bands: Vec<Band>,
    /// Certified bounds on the total band measure (exact mode).
    pub measure_lower: BigRational,
    pub measure_upper: BigRational,
}

impl SpectrumEstimate {
    fn new(approximant: Vec<Symbol>, mode: NumericMode, method: BandMethod, bands: Vec<Band>) -> Self {
        let measure_lower = bands
            .iter()
            .map(Band::width_lower)
            .fold(BigRational::zero(), |a, b| a + b);
        let measure_upper = bands
            .iter()
            .map(Band::width_upper)
            .fold(BigRational::zero(), |a, b| a + b);
        Self {
            approximant,
            mode,
            method,
            bands,
            measure_lower,
            measure_upper,
        }
    }

    /// The total measure when every edge is exact.
    pub fn measure_exact(&self) -> Option<&BigRational> {
        (self.measure_lower == self.measure_upper).then_some(&self.measure_lower)
    }

    pub fn measure_approx(&self) -> f64 {
        0.5 * (ratio_to_f64(&self.measure_lower) + ratio_to_f64(&self.measure_upper))
    }

    /// Same bands and measures, regardless of the word or method used.
    pub fn same_bands(&self, other: &Self) -> bool {
        self.bands == other.bands
            && self.measure_lower == other.measure_lower
            && self.measure_upper == other.measure_upper
    }

    pub fn summary(&self) -> SpectrumSummary {
        let enc = |e: &RootEnclosure| EnclosureSummary {
            lo: fmt_ratio(&e.lo),
            hi: fmt_ratio(&e.hi),
            exact: e.is_exact(),
            approx: e.approx(),
        };
        SpectrumSummary {
            approximant: word_label(&self.approximant),
            length: self.approximant.len(),
            mode: self.mode,
            method: self.method,
            band_count: self.bands.len(),
            bands: self
                .bands
                .iter()
                .map(|b| BandSummary {
                    lo: enc(&b.lo),
                    hi: enc(&b.hi),
                    touching_left: b.touching_left,
                    touching_right: b.touching_right,
                })
                .collect(),
            measure_lower: fmt_ratio(&self.measure_lower),
            measure_upper: fmt_ratio(&self.measure_upper),
            measure_exact: self.measure_exact().map(fmt_ratio),
            measure_approx: self.measure_approx(),
        }
    }

    /// One row per band: outward endpoints and width, exact then approximate.
    pub fn write_csv(&self, path: &Path) -> Result<(), SpectralError> {
        let file = std::fs::File::create(path)
            .map_err(|e| SpectralError::Output(format!("{}: {e}", path.display())))?;
        self.write_csv_to(file)
    }

    /// As [`SpectrumEstimate::write_csv`], into any writer.
    pub fn write_csv_to<W: std::io::Write>(&self, sink: W) -> Result<(), SpectralError> {
        let out = |e: csv::Error| SpectralError::Output(e.to_string());
        let mut w = csv::Writer::from_writer(sink);
        w.write_record([
            "band_lo",
            "band_hi",
            "width",
            "band_lo_approx",
            "band_hi_approx",
            "width_approx",
            "touching_left",
            "touching_right",
        ])
        .map_err(out)?;
        for b in &self.bands {
            let (lo, hi) = b.outer();
            let width = hi - lo;
            w.write_record([
                fmt_ratio(lo),
                fmt_ratio(hi),
                fmt_ratio(&width),
                ratio_to_f64(lo).to_string(),
                ratio_to_f64(hi).to_string(),
                ratio_to_f64(&width).to_string(),
                b.touching_left.to_string(),
                b.touching_right.to_string(),
            ])
            .map_err(out)?;
        }
        w.flush().map_err(|e| SpectralError::Output(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnclosureSummary {
    pub lo: String,
    pub hi: String,
    pub exact: bool,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandSummary {
    pub lo: EnclosureSummary,
    pub hi: EnclosureSummary,
    pub touching_left: bool,
    pub touching_right: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub approximant: String,
    pub length: usize,
    pub mode: NumericMode,
    pub method: BandMethod,
    pub band_count: usize,
    pub bands: Vec<BandSummary>,
    pub measure_lower: String,
    pub measure_upper: String,
    pub measure_exact: Option<String>,
    pub measure_approx: f64,
}

/// `tr M(E)` for the word as a monic polynomial of degree `|word|`.
pub fn trace_polynomial<S: Scalar>(word: &[Symbol], v: &Potential<S>) -> Result<Poly, SpectralError> {
    if word.is_empty() {
        return Err(SpectralError::EmptyWord);
    }
    let vals = v.rational_values()?;
    let diag: Vec<Poly> = vals
        .iter()
        .map(|x| Poly::x() - Poly::constant(x.clone()))
        .collect();
    let mut m = TransferMatrix::<Poly>::identity();
    for &s in word {
        let t = diag
            .get((s as usize).wrapping_sub(1))
            .ok_or(SpectralError::UnknownSymbol(s))?;
        m = m.push_companion(t);
    }
    Ok(m.trace())
}

/// Bands of the periodic operator with period `word`.
///
/// In exact mode every edge is enclosed in a canonical dyadic cell (or
/// given exactly when it lies on the grid), so the result depends only on
/// the trace polynomial.
pub fn band_spectrum<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    opts: &SpectrumOptions,
) -> Result<SpectrumEstimate, SpectralError> {
    if word.is_empty() {
        return Err(SpectralError::EmptyWord);
    }
    match opts.mode {
        NumericMode::Exact => exact_bands(word, v, opts.grid_bits),
        NumericMode::Float => float_bands(word, v, opts.float_tol),
    }
}

fn dyadic(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

fn to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Canonical enclosure of `r` given by an exact value.
fn snap_exact(r: BigRational, bits: u32) -> RootEnclosure {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let scaled = &r * &scale;
    if scaled.is_integer() {
        return RootEnclosure::exact(r);
    }
    let g = scaled.ceil() / &scale;
    RootEnclosure {
        lo: &g - dyadic(bits),
        hi: g,
    }
}

/// Locates the root in `(lo, hi]` to its canonical grid cell. `side(x)`
/// reports how the root compares with `x`.
fn locate_root(
    mut lo: BigRational,
    mut hi: BigRational,
    bits: u32,
    side: impl Fn(&BigRational) -> Ordering,
) -> RootEnclosure {
    let cell = dyadic(bits);
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > cell {
        let m = (&lo + &hi) / &two;
        match side(&m) {
            Ordering::Equal => return snap_exact(m, bits),
            Ordering::Less => hi = m,
            Ordering::Greater => lo = m,
        }
    }
    if lo == hi {
        return snap_exact(lo, bits);
    }
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let mut g = (&lo * &scale).ceil() / &scale;
    if g == lo {
        g = &g + &cell;
    }
    let ord = if g > hi { Ordering::Less } else { side(&g) };
    match ord {
        Ordering::Equal => RootEnclosure::exact(g),
        Ordering::Less => RootEnclosure {
            lo: &g - &cell,
            hi: g,
        },
        Ordering::Greater => RootEnclosure {
            lo: g.clone(),
            hi: g + cell,
        },
    }
}

fn exact_bands<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    bits: u32,
) -> Result<SpectrumEstimate, SpectralError> {
    let p = trace_polynomial(word, v)?;
    let ip = IntPoly::new(&p);
    let vals = v.rational_values()?;
    let vmax = vals
        .iter()
        .map(Signed::abs)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let mut bound = BigRational::from_integer(4.into());
    while bound <= &vmax + BigRational::from_integer(2.into()) {
        bound *= BigRational::from_integer(2.into());
    }
    if let Some(bands) = separator_bands(word, v, &ip, &bound, bits) {
        return Ok(SpectrumEstimate::new(
            word.to_vec(),
            NumericMode::Exact,
            BandMethod::Separators,
            bands,
        ));
    }
    let bands = sturm_bands(&p, &ip, bits)?;
    Ok(SpectrumEstimate::new(
        word.to_vec(),
        NumericMode::Exact,
        BandMethod::Sturm,
        bands,
    ))
}

/// Gap points `s_0 < ⋯ < s_q` with `|p(s_i)| > 2` and alternating signs,
/// taken from Dirichlet eigenvalues, which sit in the closed gaps.
fn exact_separators<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    ip: &IntPoly,
    bound: &BigRational,
) -> Option<Vec<BigRational>> {
    let q = word.len();
    'rot: for rot in 0..q.min(SEPARATOR_ROTATIONS) {
        let rotated: Vec<Symbol> = word[rot..].iter().chain(&word[..rot]).copied().collect();
        let diag = v.f64_lookup(&rotated[..q - 1]).ok()?;
        let mut s = vec![-bound.clone()];
        for mu in tridiagonal_eigenvalues(&diag, 1e-14) {
            s.push(to_rational(mu)?);
        }
        s.push(bound.clone());
        let mut last = Ordering::Equal;
        for (i, x) in s.iter().enumerate() {
            if i > 0 && x <= &s[i - 1] {
                continue 'rot;
            }
            if ip.cmp_abs(x, 2) != Ordering::Greater {
                continue 'rot;
            }
            let sign = ip.sign_at(x);
            if sign == last {
                continue 'rot;
            }
            last = sign;
        }
        return Some(s);
    }
    None
}

fn separator_bands<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    ip: &IntPoly,
    bound: &BigRational,
    bits: u32,
) -> Option<Vec<Band>> {
    let s = exact_separators(word, v, ip, bound)?;
    let two = BigRational::from_integer(2.into());
    let bands: Option<Vec<Band>> = s
        .par_windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            // any point with |p| < 2 between consecutive gap points
            let sa = ip.sign_at(a);
            let (mut lo, mut hi) = (a.clone(), b.clone());
            let mut t = None;
            for _ in 0..INTERIOR_SEARCH_CAP {
                let m = (&lo + &hi) / &two;
                if ip.cmp_abs(&m, 2) == Ordering::Less {
                    t = Some(m);
                    break;
                }
                if ip.sign_at(&m) == sa {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            let t = t?;
            let inside = |x: &BigRational| ip.cmp_abs(x, 2);
            let left = locate_root(a.clone(), t.clone(), bits, |x| match inside(x) {
                Ordering::Less => Ordering::Less,
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => Ordering::Greater,
            });
            let right = locate_root(t, b.clone(), bits, |x| match inside(x) {
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => Ordering::Less,
            });
            Some(Band {
                lo: left,
                hi: right,
                touching_left: false,
                touching_right: false,
            })
        })
        .collect();
    bands
}

struct Isolated<'a> {
    lo: BigRational,
    hi: BigRational,
    sturm: &'a Sturm,
}

impl Isolated<'_> {
    fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let m = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        if self.sturm.root_at(&m) {
            self.lo = m.clone();
            self.hi = m;
        } else if self.sturm.count(&self.lo, &m) == 1 {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    fn side(&self, x: &BigRational) -> Ordering {
        if self.sturm.root_at(x) {
            Ordering::Equal
        } else if self.sturm.count(&self.lo, x) == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

fn sturm_bands(p: &Poly, ip: &IntPoly, bits: u32) -> Result<Vec<Band>, SpectralError> {
    let two = Poly::constant(BigRational::from_integer(2.into()));
    let upper = (p.clone() - two.clone()).square_free();
    let lower = (p.clone() + two).square_free();
    let (su, sl) = (Sturm::new(&upper), Sturm::new(&lower));
    let mut roots: Vec<Isolated> = Vec::new();
    for (f, s) in [(&upper, &su), (&lower, &sl)] {
        for (lo, hi) in isolate_roots(f) {
            roots.push(Isolated { lo, hi, sturm: s });
        }
    }
    // separate the two families; their roots are distinct
    loop {
        roots.sort_by(|a, b| a.hi.cmp(&b.hi));
        let clash: Vec<usize> = (1..roots.len())
            .filter(|&i| roots[i].lo <= roots[i - 1].hi)
            .collect();
        if clash.is_empty() {
            break;
        }
        for i in clash {
            roots[i].refine();
            roots[i - 1].refine();
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let inside: Vec<bool> = (1..roots.len())
        .map(|i| {
            let m = (&roots[i - 1].hi + &roots[i].lo) * &half;
            ip.cmp_abs(&m, 2) == Ordering::Less
        })
        .collect();
    let enclosures: Vec<RootEnclosure> = roots
        .iter()
        .map(|r| locate_root(r.lo.clone(), r.hi.clone(), bits, |x| r.side(x)))
        .collect();
    let mut bands = Vec::new();
    for (i, &ins) in inside.iter().enumerate() {
        if ins {
            bands.push(Band {
                lo: enclosures[i].clone(),
                hi: enclosures[i + 1].clone(),
                touching_left: i > 0 && inside[i - 1],
                touching_right: i + 1 < inside.len() && inside[i + 1],
            });
        }
    }
    if bands.is_empty() {
        return Err(SpectralError::Degeneracy("no band found".into()));
    }
    Ok(bands)
}

fn float_bands<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    tol: f64,
) -> Result<SpectrumEstimate, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::Parameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let vals = v.f64_lookup(word)?;
    let q = word.len();
    let tr = |e: f64| trace_walk(e, &vals).trace();
    let bound = vals.iter().fold(0.0f64, |a, x| a.max(x.abs())) + 3.0;
    let degenerate = || SpectralError::Degeneracy("float separators failed".into());
    let mut seps = None;
    'rot: for rot in 0..q.min(SEPARATOR_ROTATIONS) {
        let rotated: Vec<f64> = vals[rot..].iter().chain(&vals[..rot]).copied().collect();
        let mut s = vec![-bound];
        s.extend(tridiagonal_eigenvalues(&rotated[..q - 1], 1e-14));
        s.push(bound);
        for i in 0..s.len() {
            let t = tr(s[i]);
            if t.abs() <= 2.0 || (i > 0 && (s[i] <= s[i - 1] || t.signum() == tr(s[i - 1]).signum())) {
                continue 'rot;
            }
        }
        seps = Some(s);
        break;
    }
    let s = seps.ok_or_else(degenerate)?;
    let bands: Option<Vec<Band>> = s
        .par_windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let sa = tr(a).signum();
            let (mut lo, mut hi) = (a, b);
            let mut t = None;
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                let x = tr(m);
                if x.abs() < 2.0 {
                    t = Some(m);
                    break;
                }
                if x.signum() == sa {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            let t = t?;
            // brackets (outside, inside) shrunk to tol
            let edge = |mut out: f64, mut ins: f64| {
                while (ins - out).abs() > tol {
                    let m = 0.5 * (out + ins);
                    if m == out || m == ins {
                        break;
                    }
                    if tr(m).abs() <= 2.0 {
                        ins = m;
                    } else {
                        out = m;
                    }
                }
                (out, ins)
            };
            let (l_out, l_in) = edge(a, t);
            let (r_out, r_in) = edge(b, t);
            Some(Band {
                lo: RootEnclosure {
                    lo: to_rational(l_out)?,
                    hi: to_rational(l_in)?,
                },
                hi: RootEnclosure {
                    lo: to_rational(r_in)?,
                    hi: to_rational(r_out)?,
                },
                touching_left: false,
                touching_right: false,
            })
        })
        .collect();
    let bands = bands.ok_or_else(degenerate)?;
    Ok(SpectrumEstimate::new(
        word.to_vec(),
        NumericMode::Float,
        BandMethod::FloatSeparators,
        bands,
    ))
}

/// Outcome of comparing a word's bands with those of its rotations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullReport {
    pub word: String,
    pub rotations: usize,
    pub rotations_identical: bool,
    /// Bonus property: the reversed word has the same bands.
    pub reversal_identical: bool,
    pub band_count: usize,
}

impl HullReport {
    pub fn holds(&self) -> bool {
        self.rotations_identical
    }
}

/// Band spectra of all cyclic rotations (and the reversal) of `word`.
pub fn hull_invariance_check<S: Scalar>(
    word: &[Symbol],
    v: &Potential<S>,
    opts: &SpectrumOptions,
) -> Result<HullReport, SpectralError> {
    if word.len() < 2 {
        return Err(SpectralError::Parameter(
            "hull check needs a word of length at least 2".into(),
        ));
    }
    let q = word.len();
    let spectra: Vec<SpectrumEstimate> = (0..q)
        .into_par_iter()
        .map(|r| {
            let w: Vec<Symbol> = word[r..].iter().chain(&word[..r]).copied().collect();
            band_spectrum(&w, v, opts)
        })
        .collect::<Result<_, _>>()?;
    let reversed: Vec<Symbol> = word.iter().rev().copied().collect();
    let rev = band_spectrum(&reversed, v, opts)?;
    Ok(HullReport {
        word: word_label(word),
        rotations: q,
        rotations_identical: spectra.iter().all(|s| s.same_bands(&spectra[0])),
        reversal_identical: rev.same_bands(&spectra[0]),
        band_count: spectra[0].bands.len(),
    })
}

/// Symbols written out, comma separated once any symbol needs two digits.
pub fn word_label(word: &[Symbol]) -> String {
    let sep = if word.iter().any(|&s| s > 9) { "," } else { "" };
    word.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// The first `q` symbols, repeated periodically by the operator.
pub fn prefix_approximant(symbols: &[Symbol], q: usize) -> Result<Vec<Symbol>, SpectralError> {
    if q == 0 || symbols.len() < q {
        return Err(SpectralError::Parameter(format!(
            "prefix of length {q} from {} symbols",
            symbols.len()
        )));
    }
    Ok(symbols[..q].to_vec())
}

/// Return words of every tower level, as `(level, k, word)`.
pub fn tower_approximants<S: Scalar>(tower: &RenormalizationTower<S>) -> Vec<(usize, usize, Vec<Symbol>)> {
    tower
        .levels
        .iter()
        .flat_map(|lvl| {
            lvl.induced
                .return_words
                .iter()
                .enumerate()
                .map(move |(k, w)| (lvl.level, k + 1, w.clone()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::spectral::{default_potential, fibonacci_word};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn free() -> Potential<Rational> {
        Potential::new(vec![Rational::zero()], None).unwrap()
    }

    fn fib() -> Potential<Rational> {
        default_potential(2, Rational::from_integer(2)).unwrap()
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(trace_polynomial(&[1], &free()).unwrap().to_string(), "E");
        assert_eq!(trace_polynomial(&[1, 1], &free()).unwrap().to_string(), "E^2 - 2");
        let p = trace_polynomial(&fibonacci_word(5), &fib()).unwrap();
        assert_eq!(p.degree(), Some(8));
        assert!(p.leading().unwrap().is_one());
        let irr = Potential::new(
            vec!["0/1+1/1*sqrt(2)".parse::<crate::scalar::QuadraticReal>().unwrap()],
            None,
        )
        .unwrap();
        assert!(matches!(
            trace_polynomial(&[1], &irr),
            Err(SpectralError::Mode(_))
        ));
    }

    #[test]
    fn free_band_is_exact() {
        let s = band_spectrum(&[1], &free(), &SpectrumOptions::default()).unwrap();
        assert_eq!(s.bands.len(), 1);
        assert_eq!(s.bands[0].lo, RootEnclosure::exact(q(-2, 1)));
        assert_eq!(s.bands[0].hi, RootEnclosure::exact(q(2, 1)));
        assert_eq!(s.measure_exact(), Some(&q(4, 1)));
    }

    #[test]
    fn doubled_free_word_touches_at_zero() {
        let s = band_spectrum(&[1, 1], &free(), &SpectrumOptions::default()).unwrap();
        assert_eq!(s.method, BandMethod::Sturm);
        assert_eq!(s.bands.len(), 2);
        assert_eq!(s.bands[0].hi, RootEnclosure::exact(q(0, 1)));
        assert!(s.bands[0].touching_right && s.bands[1].touching_left);
        assert_eq!(s.measure_exact(), Some(&q(4, 1)));
    }

    #[test]
    fn free_word_of_any_length_covers_minus_two_two() {
        for n in 1..=6 {
            let s = band_spectrum(&vec![1; n], &free(), &SpectrumOptions::default()).unwrap();
            assert_eq!(s.bands.len(), n);
            assert_eq!(s.bands[0].lo, RootEnclosure::exact(q(-2, 1)));
            assert_eq!(s.bands[n - 1].hi, RootEnclosure::exact(q(2, 1)));
            assert!(s
                .bands
                .windows(2)
                .all(|w| w[0].touching_right && w[0].hi == w[1].lo));
        }
    }

    #[test]
    fn separators_and_sturm_agree() {
        let v = fib();
        for k in 2..8 {
            let w = fibonacci_word(k);
            let p = trace_polynomial(&w, &v).unwrap();
            let ip = IntPoly::new(&p);
            let fast = exact_bands(&w, &v, 30).unwrap();
            assert_eq!(fast.method, BandMethod::Separators, "order {k}");
            let slow = sturm_bands(&p, &ip, 30).unwrap();
            assert_eq!(fast.bands, slow, "order {k}");
        }
    }

    #[test]
    fn float_mode_brackets_exact_edges() {
        let w = fibonacci_word(7);
        let exact = band_spectrum(&w, &fib(), &SpectrumOptions::default()).unwrap();
        let float = band_spectrum(&w, &fib(), &SpectrumOptions::float()).unwrap();
        assert_eq!(exact.bands.len(), float.bands.len());
        for (e, f) in exact.bands.iter().zip(&float.bands) {
            assert!((e.lo.approx() - f.lo.approx()).abs() < 1e-10);
            assert!((e.hi.approx() - f.hi.approx()).abs() < 1e-10);
        }
    }

    #[test]
    fn fibonacci_measure_shrinks() {
        let v = fib();
        let m: Vec<SpectrumEstimate> = (3..9)
            .map(|k| band_spectrum(&fibonacci_word(k), &v, &SpectrumOptions::default()).unwrap())
            .collect();
        for w in m.windows(2) {
            assert!(w[1].measure_upper < w[0].measure_lower);
        }
    }

    #[test]
    fn hull_small_examples() {
        let rep = hull_invariance_check(&[1, 2], &fib(), &SpectrumOptions::default()).unwrap();
        assert!(rep.holds() && rep.reversal_identical);
        assert!(hull_invariance_check(&[1], &fib(), &SpectrumOptions::default()).is_err());
    }

    #[test]
    fn csv_and_json() {
        let s = band_spectrum(&[1, 2], &fib(), &SpectrumOptions::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bands.csv");
        s.write_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("band_lo,band_hi,width,"));
        assert_eq!(text.lines().count(), 3);
        let json = serde_json::to_value(s.summary()).unwrap();
        assert_eq!(json["band_count"], 2);
        assert_eq!(json["mode"], "exact");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn band_count_and_rotation_invariance(w in proptest::collection::vec(1u16..4, 2..8)) {
            let v = Potential::new(vec![Rational::zero(), Rational::from_integer(2), Rational::new(-1, 2)], None).unwrap();
            let s = band_spectrum(&w, &v, &SpectrumOptions::default()).unwrap();
            prop_assert!(s.bands.len() <= w.len());
            prop_assert!(s.bands.windows(2).all(|b| b[0].hi.hi <= b[1].lo.lo || b[0].hi == b[1].lo));
            let rep = hull_invariance_check(&w, &v, &SpectrumOptions::default()).unwrap();
            prop_assert!(rep.holds());
        }
    }
}
