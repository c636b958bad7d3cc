use serde::{Deserialize, Serialize};

use super::{IetError, Interval, Permutation};
use crate::scalar::{self, Scalar};

/// One symbol of an itinerary: the one-based index of a continuity interval.
pub type Symbol = u16;

/// Positive interval lengths `λ_1, ..., λ_n` with their exact total.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct ExchangeLengths<S> {
    #[serde(with = "scalar::vec_as_string")]
    lambda: Vec<S>,
    #[serde(with = "scalar::as_string")]
    total: S,
}

impl<S: Scalar> ExchangeLengths<S> {
    pub fn new(lambda: Vec<S>) -> Result<Self, IetError> {
        if lambda.is_empty() {
            return Err(IetError::InvalidLengths("no lengths".into()));
        }
        if let Some(bad) = lambda.iter().find(|l| !l.is_positive()) {
            return Err(IetError::InvalidLengths(format!("non-positive length {bad}")));
        }
        let mut total = S::zero();
        for l in &lambda {
            total.try_cmp(l)?;
            total = total + l;
        }
        Ok(Self { lambda, total })
    }

    pub fn lambda(&self) -> &[S] {
        &self.lambda
    }

    pub fn total(&self) -> &S {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Rescaled to total length one.
    pub fn normalized(&self) -> Self {
        let lambda = self.lambda.iter().map(|l| l.clone() / &self.total).collect();
        Self {
            lambda,
            total: S::one(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.total == S::one()
    }
}

/// An interval exchange transformation of `[a, b)`.
///
/// The interval `I_i = [a_{i-1}, a_i)` is translated by `d_i` into the slot
/// at position `π(i)` of the image partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Iet<S> {
    perm: Permutation,
    lengths: ExchangeLengths<S>,
    origin: S,
    breakpoints: Vec<S>,
    displacements: Vec<S>,
}

impl<S: Scalar> Iet<S> {
    pub fn new(perm: Permutation, lengths: ExchangeLengths<S>, origin: S) -> Result<Self, IetError> {
        let n = perm.n();
        if lengths.len() != n {
            return Err(IetError::InvalidLengths(format!(
                "{} lengths for a permutation of {n} symbols",
                lengths.len()
            )));
        }
        let lambda = lengths.lambda();
        let mut breakpoints = Vec::with_capacity(n + 1);
        breakpoints.push(origin.clone());
        for l in lambda {
            let next = breakpoints.last().cloned().unwrap_or_else(S::zero) + l;
            breakpoints.push(next);
        }
        // slot_start[p] = a + total length of intervals landing before slot p
        let inv = perm.inverse();
        let mut slot_start = Vec::with_capacity(n);
        let mut acc = origin.clone();
        for p in 0..n {
            slot_start.push(acc.clone());
            acc = acc + &lambda[inv.apply0(p)];
        }
        let displacements = (0..n)
            .map(|i| slot_start[perm.apply0(i)].clone() - &breakpoints[i])
            .collect();
        Ok(Self {
            perm,
            lengths,
            origin,
            breakpoints,
            displacements,
        })
    }

    /// Convenience constructor from one-based images and lengths on `[0, total)`.
    pub fn from_parts(perm: Vec<usize>, lambda: Vec<S>) -> Result<Self, IetError> {
        Self::new(Permutation::new(perm)?, ExchangeLengths::new(lambda)?, S::zero())
    }

    /// Builds the exchange whose continuity pieces are `pieces` (sorted,
    /// contiguous, starting at the domain origin), each moved by its
    /// translation. Fails unless the images tile the same domain.
    pub fn from_pieces(pieces: &[(Interval<S>, S)]) -> Result<Self, IetError> {
        let first = pieces
            .first()
            .ok_or_else(|| IetError::InvalidLengths("no pieces".into()))?;
        let origin = first.0.lo.clone();
        for w in pieces.windows(2) {
            if w[0].0.hi != w[1].0.lo {
                return Err(IetError::NotBijective(format!(
                    "pieces {} and {} are not contiguous",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        order.sort_by(|&i, &j| {
            let a = pieces[i].0.lo.clone() + &pieces[i].1;
            let b = pieces[j].0.lo.clone() + &pieces[j].1;
            a.cmp(&b)
        });
        let mut images = vec![0usize; pieces.len()];
        for (rank, &i) in order.iter().enumerate() {
            images[i] = rank;
        }
        let lambda: Vec<S> = pieces.iter().map(|(iv, _)| iv.length()).collect();
        let iet = Self::new(
            Permutation::from_zero_based(images),
            ExchangeLengths::new(lambda)?,
            origin,
        )?;
        for (i, (_, t)) in pieces.iter().enumerate() {
            if &iet.displacements[i] != t {
                return Err(IetError::NotBijective(format!(
                    "piece {} images do not tile the domain",
                    pieces[i].0
                )));
            }
        }
        Ok(iet)
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn lengths(&self) -> &ExchangeLengths<S> {
        &self.lengths
    }

    pub fn lambda(&self) -> &[S] {
        self.lengths.lambda()
    }

    pub fn origin(&self) -> &S {
        &self.origin
    }

    /// `a_0 = a < a_1 < ... < a_n = b`.
    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn displacements(&self) -> &[S] {
        &self.displacements
    }

    pub fn domain(&self) -> Interval<S> {
        Interval::new(self.origin.clone(), self.breakpoints[self.n()].clone())
    }

    /// The continuity interval `I_i` for one-based `i`.
    pub fn interval(&self, i: usize) -> Interval<S> {
        Interval::new(self.breakpoints[i - 1].clone(), self.breakpoints[i].clone())
    }

    pub fn intervals(&self) -> Vec<Interval<S>> {
        (1..=self.n()).map(|i| self.interval(i)).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.origin.is_zero() && self.lengths.is_normalized()
    }

    pub fn contains(&self, x: &S) -> bool {
        &self.breakpoints[0] <= x && x < &self.breakpoints[self.n()]
    }

    // zero-based index of the continuity interval containing x (x in domain)
    pub(crate) fn locate0(&self, x: &S) -> usize {
        let n = self.n();
        self.breakpoints[1..n].partition_point(|b| b <= x)
    }

    /// One-based index of the continuity interval containing `x`.
    pub fn locate(&self, x: &S) -> Result<usize, IetError> {
        if !self.contains(x) {
            return Err(IetError::OutOfDomain(x.to_string()));
        }
        Ok(self.locate0(x) + 1)
    }

    // E(x) together with the zero-based interval index of x; x must be in the domain
    pub(crate) fn step(&self, x: &S) -> (usize, S) {
        let i = self.locate0(x);
        (i, x.clone() + &self.displacements[i])
    }

    pub fn evaluate(&self, x: &S) -> Result<S, IetError> {
        if !self.contains(x) {
            return Err(IetError::OutOfDomain(x.to_string()));
        }
        Ok(self.step(x).1)
    }

    /// `E^k(x)` for `k >= 0`.
    pub fn iterate(&self, x: &S, k: usize) -> Result<S, IetError> {
        if !self.contains(x) {
            return Err(IetError::OutOfDomain(x.to_string()));
        }
        let mut y = x.clone();
        for _ in 0..k {
            y = self.step(&y).1;
        }
        Ok(y)
    }

    /// The inverse exchange: permutation `π⁻¹`, interval `j` of the inverse
    /// being the image slot `j` of `self`.
    pub fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let lambda: Vec<S> = (0..self.n())
            .map(|j| self.lambda()[inv.apply0(j)].clone())
            .collect();
        let lengths = ExchangeLengths {
            lambda,
            total: self.lengths.total.clone(),
        };
        Self::new(inv, lengths, self.origin.clone()).expect("inverse of a valid exchange")
    }

    /// Itinerary of `x` over indices `lo..=hi` (negative indices follow the
    /// inverse map).
    pub fn orbit_symbols(&self, x: &S, lo: i64, hi: i64) -> Result<Itinerary<S>, IetError> {
        if !self.contains(x) {
            return Err(IetError::OutOfDomain(x.to_string()));
        }
        if lo > hi {
            return Err(IetError::InvalidInterval(format!("index range {lo}..={hi}")));
        }
        let len = (hi - lo + 1) as usize;
        let mut symbols = vec![0 as Symbol; len];
        if hi >= 0 {
            let mut y = x.clone();
            for j in 0..=hi {
                let (i, next) = self.step(&y);
                if j >= lo {
                    symbols[(j - lo) as usize] = (i + 1) as Symbol;
                }
                y = next;
            }
        }
        if lo < 0 {
            let inv = self.inverse();
            let mut y = x.clone();
            for j in (lo..0).rev() {
                y = inv.step(&y).1;
                if j <= hi {
                    symbols[(j - lo) as usize] = (self.locate0(&y) + 1) as Symbol;
                }
            }
        }
        Ok(Itinerary {
            symbols,
            base: x.clone(),
            offset: lo,
        })
    }

    /// Splits `iv ∩ domain` into the parts lying in single continuity
    /// intervals, paired with their zero-based interval index.
    pub fn split(&self, iv: &Interval<S>) -> Vec<(Interval<S>, usize)> {
        let iv = iv.intersect(&self.domain());
        if iv.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut lo = iv.lo.clone();
        let mut idx = self.locate0(&lo);
        loop {
            let end = &self.breakpoints[idx + 1];
            if &iv.hi <= end {
                out.push((Interval::new(lo, iv.hi.clone()), idx));
                break;
            }
            out.push((Interval::new(lo, end.clone()), idx));
            lo = end.clone();
            idx += 1;
        }
        out
    }

    /// `E(iv)` as a list of intervals (one per continuity piece).
    pub fn image_of(&self, iv: &Interval<S>) -> Vec<Interval<S>> {
        self.split(iv)
            .into_iter()
            .map(|(p, i)| p.translate(&self.displacements[i]))
            .collect()
    }

    /// `E⁻¹(iv)` as a list of intervals.
    pub fn preimage_of(&self, iv: &Interval<S>) -> Vec<Interval<S>> {
        self.inverse().image_of(iv)
    }

    /// `self ∘ other` (apply `other` first). Both must share a domain.
    pub fn compose(&self, other: &Iet<S>) -> Result<Iet<S>, IetError> {
        if self.domain() != other.domain() {
            return Err(IetError::InvalidInterval(format!(
                "domains {} and {} differ",
                self.domain(),
                other.domain()
            )));
        }
        let other_inv = other.inverse();
        let mut cuts: Vec<S> = other.breakpoints.clone();
        for b in &self.breakpoints[1..self.n()] {
            cuts.push(other_inv.step(b).1);
        }
        cuts.sort();
        cuts.dedup();
        let pieces: Vec<(Interval<S>, S)> = cuts
            .windows(2)
            .map(|w| {
                let (i, y) = other.step(&w[0]);
                let j = self.locate0(&y);
                let t = other.displacements[i].clone() + &self.displacements[j];
                (Interval::new(w[0].clone(), w[1].clone()), t)
            })
            .collect();
        Self::from_pieces(&pieces)
    }

    /// Conjugates by the affine map sending `[a, b)` onto
    /// `[new_origin, new_origin + scale * (b - a))`.
    pub fn rescaled(&self, new_origin: S, scale: &S) -> Self {
        let lambda = self.lambda().iter().map(|l| l.clone() * scale).collect();
        let lengths = ExchangeLengths::new(lambda).expect("positive scale keeps lengths valid");
        Self::new(self.perm.clone(), lengths, new_origin).expect("same combinatorics")
    }

    /// Conjugate acting on `[0, 1)`.
    pub fn normalized(&self) -> Self {
        let scale = S::one() / self.lengths.total();
        self.rescaled(S::zero(), &scale)
    }

    /// The images `I_i + d_i` tile the domain exactly, in the order given
    /// by the permutation.
    pub fn images_tile_domain(&self) -> bool {
        let inv = self.perm.inverse();
        let mut cursor = self.origin.clone();
        for p in 0..self.n() {
            let i = inv.apply0(p);
            let image = self.interval(i + 1).translate(&self.displacements[i]);
            if image.lo != cursor {
                return false;
            }
            cursor = image.hi;
        }
        cursor == self.breakpoints[self.n()]
    }
}

/// A finite window of an itinerary: `symbols[j - offset]` is the interval
/// index containing `E^j(base)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Itinerary<S> {
    pub symbols: Vec<Symbol>,
    #[serde(with = "scalar::as_string")]
    pub base: S,
    pub offset: i64,
}

impl<S> Itinerary<S> {
    pub fn first_index(&self) -> i64 {
        self.offset
    }

    pub fn last_index(&self) -> i64 {
        self.offset + self.symbols.len() as i64 - 1
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        lo >= self.first_index() && hi <= self.last_index()
    }

    pub fn symbol(&self, j: i64) -> Option<Symbol> {
        if !self.covers(j, j) {
            return None;
        }
        Some(self.symbols[(j - self.offset) as usize])
    }

    /// Symbols with indices `lo..=hi`; panics if not covered.
    pub fn window(&self, lo: i64, hi: i64) -> &[Symbol] {
        assert!(self.covers(lo, hi), "window {lo}..={hi} not covered");
        &self.symbols[(lo - self.offset) as usize..=(hi - self.offset) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadraticReal, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rot23() -> Iet<Rational> {
        Iet::from_parts(vec![2, 1], vec![r("1/3"), r("2/3")]).unwrap()
    }

    pub(crate) fn golden() -> Iet<QuadraticReal> {
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap()
    }

    #[test]
    fn displacements_of_rotation() {
        let e = rot23();
        assert_eq!(e.displacements(), &[r("2/3"), r("-1/3")]);
        assert!(e.images_tile_domain());
    }

    #[test]
    fn rotation_is_bijective_on_grid() {
        let e = rot23();
        let mut seen = std::collections::HashSet::new();
        for k in 0..10_000 {
            let x = Rational::new(k, 10_000);
            let y = e.evaluate(&x).unwrap();
            assert!(e.contains(&y));
            assert!(seen.insert(y));
        }
    }

    #[test]
    fn identity_exchange() {
        let e = Iet::from_parts(vec![1, 2, 3], vec![r("1/3"); 3]).unwrap();
        assert!(e.displacements().iter().all(|d| d.is_zero()));
        assert_eq!(e.evaluate(&r("5/7")).unwrap(), r("5/7"));
        let it = e.orbit_symbols(&r("1/2"), 0, 3).unwrap();
        assert_eq!(it.symbols, vec![2, 2, 2, 2]);
    }

    #[test]
    fn reversal_three() {
        let e = Iet::from_parts(vec![3, 2, 1], vec![r("1/2"), r("1/4"), r("1/4")]).unwrap();
        assert_eq!(e.displacements(), &[r("1/2"), r("-1/4"), r("-3/4")]);
        assert_eq!(e.evaluate(&r("0")).unwrap(), r("1/2"));
        assert!(e.images_tile_domain());
    }

    #[test]
    fn evaluate_out_of_domain() {
        let e = rot23();
        assert!(matches!(e.evaluate(&r("1")), Err(IetError::OutOfDomain(_))));
        assert!(e.evaluate(&r("-1/5")).is_err());
    }

    #[test]
    fn rotation_itinerary() {
        let it = rot23().orbit_symbols(&r("0"), 0, 5).unwrap();
        assert_eq!(it.symbols, vec![1, 2, 2, 1, 2, 2]);
        let back = rot23().orbit_symbols(&r("0"), -3, -1).unwrap();
        assert_eq!(back.symbols, vec![1, 2, 2]);
    }

    #[test]
    fn golden_evaluate_and_coding() {
        let e = golden();
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        // I_1 = [0, 1 - alpha) moves to the second slot, which starts at alpha
        assert_eq!(e.evaluate(&QuadraticReal::zero()).unwrap(), alpha);
        // E is rotation by alpha; I_2 = [1 - alpha, 1), so the symbol of
        // E^j(0) is 1 + floor((j+1) alpha) - floor(j alpha).
        let it = e.orbit_symbols(&QuadraticReal::zero(), 0, 40).unwrap();
        for j in 0..=40i64 {
            let jj = QuadraticReal::from_integer(j);
            let jn = QuadraticReal::from_integer(j + 1);
            let expected = 1 + ((jn * &alpha).floor() - (jj * &alpha).floor());
            assert_eq!(it.symbol(j).unwrap() as i64, i64::try_from(expected).unwrap());
        }
        assert_eq!(&it.symbols[..8], &[1, 2, 1, 2, 2, 1, 2, 1]);
    }

    #[test]
    fn inverse_examples() {
        let e = rot23();
        let inv = e.inverse();
        assert_eq!(inv.displacements(), &[r("1/3"), r("-2/3")]);
        assert_eq!(inv.inverse(), e);
        let id = Iet::from_parts(vec![1, 2], vec![r("1/2"), r("1/2")]).unwrap();
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let e = Iet::from_parts(vec![3, 1, 2], vec![r("1/5"), r("1/2"), r("3/10")]).unwrap();
        let id = e.compose(&e.inverse()).unwrap();
        assert!(id.displacements().iter().all(|d| d.is_zero()));
        let sq = e.compose(&e).unwrap();
        for k in 0..50 {
            let x = Rational::new(k, 50);
            assert_eq!(
                sq.evaluate(&x).unwrap(),
                e.evaluate(&e.evaluate(&x).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn invalid_lengths() {
        assert!(matches!(
            ExchangeLengths::new(vec![r("1/2"), r("0")]),
            Err(IetError::InvalidLengths(_))
        ));
        assert!(Iet::from_parts(vec![2, 1], vec![r("1")]).is_err());
    }
}
