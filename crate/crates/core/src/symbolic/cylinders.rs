use std::collections::{BTreeMap, BTreeSet};

use super::SymbolicError;
use crate::iet::{Iet, Interval, Symbol};
use crate::scalar::Scalar;

/// Cylinder partitions of an exchange up to a fixed depth.
///
/// The depth-`n` cylinders are the maximal intervals on which the first `n`
/// symbols of the itinerary are constant. Their endpoints are the preimages
/// `E^{-j}(a_i)`, `0 <= j < n`, of the interior breakpoints; each cut point
/// is stored once with the first depth at which it appears, so every depth
/// is available without storing every partition.
#[derive(Clone, Debug)]
pub struct CylinderTree<S> {
    iet: Iet<S>,
    depth: usize,
    // cut point -> first depth at which it separates cylinders
    cuts: BTreeMap<S, usize>,
    // eta[n - 1] = shortest depth-n cylinder
    eta: Vec<S>,
    // counts[n - 1] = number of depth-n cylinders
    counts: Vec<usize>,
    collision: bool,
}

pub fn build_cylinders<S: Scalar>(iet: &Iet<S>, depth: usize) -> Result<CylinderTree<S>, SymbolicError> {
    if depth == 0 {
        return Err(SymbolicError::InvalidDepth);
    }
    let domain = iet.domain();
    let inv = iet.inverse();
    let n = iet.n();
    let mut cuts: BTreeMap<S, usize> = BTreeMap::new();
    let mut points: BTreeSet<S> = BTreeSet::from([domain.lo.clone(), domain.hi.clone()]);
    let mut gaps: BTreeMap<S, usize> = BTreeMap::from([(domain.length(), 1)]);
    let mut frontier: Vec<S> = iet.breakpoints()[1..n].to_vec();
    let mut eta = Vec::with_capacity(depth);
    let mut counts = Vec::with_capacity(depth);
    let mut collision = false;

    for level in 1..=depth {
        for p in &frontier {
            if p == &domain.lo || points.contains(p) {
                collision = true;
                continue;
            }
            let lo = points.range(..p).next_back().expect("origin is present").clone();
            let hi = points.range(p..).next().expect("end is present").clone();
            remove_gap(&mut gaps, hi.clone() - &lo);
            *gaps.entry(p.clone() - &lo).or_insert(0) += 1;
            *gaps.entry(hi - p).or_insert(0) += 1;
            points.insert(p.clone());
            cuts.insert(p.clone(), level);
        }
        eta.push(gaps.keys().next().expect("at least one gap").clone());
        counts.push(points.len() - 1);
        if level < depth {
            frontier = frontier
                .iter()
                .map(|p| inv.evaluate(p).expect("in domain"))
                .collect();
        }
    }
    Ok(CylinderTree {
        iet: iet.clone(),
        depth,
        cuts,
        eta,
        counts,
        collision,
    })
}

fn remove_gap<S: Scalar>(gaps: &mut BTreeMap<S, usize>, g: S) {
    let c = gaps.get_mut(&g).expect("gap is tracked");
    *c -= 1;
    if *c == 0 {
        gaps.remove(&g);
    }
}

impl<S: Scalar> CylinderTree<S> {
    pub fn iet(&self) -> &Iet<S> {
        &self.iet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Some discontinuity orbit hit another cut (or the origin) within the
    /// depth: the coding may fail to be uniquely ergodic or aperiodic.
    pub fn has_collision(&self) -> bool {
        self.collision
    }

    fn check(&self, n: usize) -> Result<(), SymbolicError> {
        if n == 0 || n > self.depth {
            Err(SymbolicError::DepthOutOfRange { n, depth: self.depth })
        } else {
            Ok(())
        }
    }

    /// `η(n)`, the length of the shortest nonempty depth-`n` cylinder.
    pub fn eta(&self, n: usize) -> Result<&S, SymbolicError> {
        self.check(n)?;
        Ok(&self.eta[n - 1])
    }

    pub fn etas(&self) -> &[S] {
        &self.eta
    }

    /// Factor complexity `p(n)`: the number of nonempty depth-`n` cylinders.
    pub fn word_count(&self, n: usize) -> Result<usize, SymbolicError> {
        self.check(n)?;
        Ok(self.counts[n - 1])
    }

    pub fn complexity(&self) -> &[usize] {
        &self.counts
    }

    /// Depth-`n` cylinder intervals in increasing order.
    pub fn nodes(&self, n: usize) -> Result<Vec<Interval<S>>, SymbolicError> {
        self.check(n)?;
        let domain = self.iet.domain();
        let mut ends: Vec<S> = self
            .cuts
            .iter()
            .filter(|(_, &birth)| birth <= n)
            .map(|(p, _)| p.clone())
            .collect();
        ends.push(domain.hi);
        let mut lo = domain.lo;
        Ok(ends
            .into_iter()
            .map(|hi| {
                let iv = Interval::new(lo.clone(), hi.clone());
                lo = hi;
                iv
            })
            .collect())
    }

    /// Depth-`n` cylinders with their words.
    #[allow(clippy::type_complexity)]
    pub fn words(&self, n: usize) -> Result<Vec<(Vec<Symbol>, Interval<S>)>, SymbolicError> {
        self.nodes(n)?
            .into_iter()
            .map(|iv| {
                let w = self.iet.orbit_symbols(&iv.lo, 0, n as i64 - 1)?.symbols;
                Ok((w, iv))
            })
            .collect()
    }

    /// The depth-`n` cylinder containing `x`.
    pub fn cylinder_of(&self, n: usize, x: &S) -> Result<Interval<S>, SymbolicError> {
        self.check(n)?;
        let domain = self.iet.domain();
        if !domain.contains(x) {
            return Err(SymbolicError::Iet(crate::iet::IetError::OutOfDomain(
                x.to_string(),
            )));
        }
        let lo = self
            .cuts
            .range(..=x.clone())
            .filter(|(_, &b)| b <= n)
            .map(|(p, _)| p.clone())
            .next_back()
            .unwrap_or_else(|| domain.lo.clone());
        let hi = self
            .cuts
            .range(x.clone()..)
            .filter(|(p, &b)| b <= n && *p > x)
            .map(|(p, _)| p.clone())
            .next()
            .unwrap_or(domain.hi);
        Ok(Interval::new(lo, hi))
    }
}

/// `p(n+1) > p(n)` at every computed depth: evidence that the coding is
/// not eventually periodic.
pub fn aperiodicity_check<S: Scalar>(tree: &CylinderTree<S>) -> bool {
    tree.complexity().windows(2).all(|w| w[1] > w[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadraticReal, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn golden() -> Iet<QuadraticReal> {
        let alpha: QuadraticReal = "-1/2+1/2*sqrt(5)".parse().unwrap();
        Iet::from_parts(vec![2, 1], vec![QuadraticReal::one() - &alpha, alpha]).unwrap()
    }

    #[test]
    fn identity_cylinders() {
        let e = Iet::from_parts(vec![1, 2, 3], vec![r("1/3"); 3]).unwrap();
        let t = build_cylinders(&e, 2).unwrap();
        let words = t.words(2).unwrap();
        assert_eq!(
            words.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>(),
            vec![vec![1, 1], vec![2, 2], vec![3, 3]]
        );
        assert!(words.iter().all(|(_, iv)| iv.length() == r("1/3")));
        assert!(!aperiodicity_check(&t));
        assert!(t.has_collision());
    }

    #[test]
    fn rotation_two_thirds_cylinders() {
        let e = Iet::from_parts(vec![2, 1], vec![r("1/3"), r("2/3")]).unwrap();
        let t = build_cylinders(&e, 6).unwrap();
        assert_eq!(t.word_count(3).unwrap(), 3);
        assert!(t.nodes(3).unwrap().iter().all(|iv| iv.length() == r("1/3")));
        assert_eq!(t.complexity(), &[2, 3, 3, 3, 3, 3]);
        assert!(!aperiodicity_check(&t));
    }

    #[test]
    fn golden_is_sturmian() {
        let t = build_cylinders(&golden(), 60).unwrap();
        for n in 1..=60 {
            assert_eq!(t.word_count(n).unwrap(), n + 1);
        }
        assert!(aperiodicity_check(&t));
        assert!(!t.has_collision());
        // partition exactness and monotone eta
        for n in 1..=60 {
            let total = t
                .nodes(n)
                .unwrap()
                .iter()
                .fold(QuadraticReal::zero(), |a, iv| a + iv.length());
            assert_eq!(total, QuadraticReal::one());
            let min = t.nodes(n).unwrap().iter().map(|iv| iv.length()).min().unwrap();
            assert_eq!(&min, t.eta(n).unwrap());
        }
        assert!(t.etas().windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn words_are_distinct_and_match_itineraries() {
        let t = build_cylinders(&golden(), 12).unwrap();
        let words = t.words(12).unwrap();
        let set: std::collections::HashSet<_> = words.iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(set.len(), 13);
        for (w, iv) in &words {
            let mid = iv.midpoint();
            assert_eq!(&t.iet().orbit_symbols(&mid, 0, 11).unwrap().symbols, w);
            assert_eq!(&t.cylinder_of(12, &mid).unwrap(), iv);
            assert_eq!(&t.cylinder_of(12, &iv.lo).unwrap(), iv);
        }
    }

    #[test]
    fn depth_errors() {
        let e = Iet::from_parts(vec![2, 1], vec![r("1/3"), r("2/3")]).unwrap();
        assert!(matches!(build_cylinders(&e, 0), Err(SymbolicError::InvalidDepth)));
        let t = build_cylinders(&e, 2).unwrap();
        assert!(t.eta(3).is_err());
    }
}
