//! Common-interlacer and proper-interlacing tests, and positional removal of
//! shared roots.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{Interval, Poly, RootList};
use crate::rational::Rational;

/// `p = ∏(x − λᵢ)` and `q = ∏(x − μᵢ)` together with their root lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPair {
    lam: RootList,
    mu: RootList,
    p: Poly,
    q: Poly,
}

impl PolyPair {
    pub fn new(lam: RootList, mu: RootList) -> Result<Self> {
        if lam.len() != mu.len() {
            return Err(Error::LengthMismatch { left: lam.len(), right: mu.len() });
        }
        let p = Poly::from_roots(&lam);
        let q = Poly::from_roots(&mu);
        Ok(Self { lam, mu, p, q })
    }

    pub fn from_integers(lam: &[i64], mu: &[i64]) -> Result<Self> {
        Self::new(RootList::from_integers(lam)?, RootList::from_integers(mu)?)
    }

    /// Roots of `p`, largest first.
    pub fn lam(&self) -> &RootList {
        &self.lam
    }

    /// Roots of `q`, largest first.
    pub fn mu(&self) -> &RootList {
        &self.mu
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.lam.len()
    }

    /// The same pair with the roles of `p` and `q` exchanged.
    pub fn swapped(&self) -> PolyPair {
        PolyPair { lam: self.mu.clone(), mu: self.lam.clone(), p: self.q.clone(), q: self.p.clone() }
    }

    /// `[min(λᵢ, μᵢ), max(λᵢ, μᵢ)]` for each position.
    pub fn pair_intervals(&self) -> Vec<Interval> {
        self.lam.iter().zip(self.mu.iter()).map(|(l, m)| Interval::hull(l, m)).collect()
    }

    /// Some value that is a root of both `p` and `q`, at any positions.
    pub fn any_shared_root(&self) -> Option<&Rational> {
        // both lists are sorted, so a merge walk finds common values
        let (a, b) = (self.lam.as_slice(), self.mu.as_slice());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return Some(&a[i]),
                std::cmp::Ordering::Greater => i += 1,
                std::cmp::Ordering::Less => j += 1,
            }
        }
        None
    }

    /// Errors unless both root lists are simple and disjoint from each other.
    pub fn require_distinct(&self) -> Result<()> {
        if let Some(r) = self.lam.repeated_root().or(self.mu.repeated_root()) {
            return Err(Error::NonSimpleRoots(r.clone()));
        }
        if let Some(r) = self.any_shared_root() {
            return Err(Error::SharedRoots(r.clone()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlaceVerdict {
    pub has_common_interlacer: bool,
    pub pair_intervals: Vec<Interval>,
    /// Positions `(i, i + 1)` of the first pair of intervals that meet.
    pub first_crossing: Option<(usize, usize)>,
    pub properly_interlacing: bool,
}

/// The pair intervals must be pairwise disjoint; touching endpoints count
/// as a crossing. Since both root lists are sorted it is enough to compare
/// neighbours.
pub fn common_interlacer_check(pair: &PolyPair) -> InterlaceVerdict {
    let intervals = pair.pair_intervals();
    let first_crossing = intervals.windows(2).position(|w| w[0].lo() <= w[1].hi()).map(|i| (i, i + 1));
    let has_common_interlacer = first_crossing.is_none();
    let properly_interlacing = has_common_interlacer && proper_interlacing_check(pair).unwrap_or(false);
    InterlaceVerdict { has_common_interlacer, pair_intervals: intervals, first_crossing, properly_interlacing }
}

/// Errors with [`Error::NoCommonInterlacer`] when the check fails.
pub fn require_common_interlacer(pair: &PolyPair) -> Result<()> {
    match common_interlacer_check(pair).first_crossing {
        Some((i, j)) => Err(Error::NoCommonInterlacer(i, j)),
        None => Ok(()),
    }
}

/// True iff every residue `p(μᵢ)/q'(μᵢ)` has the same strict sign.
pub fn proper_interlacing_check(pair: &PolyPair) -> Result<bool> {
    pair.require_distinct()?;
    let dq = pair.q().derivative()?;
    let mut signs = pair.mu().iter().map(|m| {
        let r = pair.p().evaluate(m) / dq.evaluate(m);
        r.signum()
    });
    let first = signs.next().expect("root lists are nonempty");
    Ok(signs.all(|s| s == first))
}

/// Drops every position `i` with `λᵢ = μᵢ`.
///
/// Dividing both polynomials by the shared factor leaves the residues at the
/// surviving poles unchanged. A shared value at different positions is not
/// touched.
pub fn reduce_shared_roots(pair: &PolyPair) -> Result<PolyPair> {
    let keep: Vec<usize> = (0..pair.degree()).filter(|&i| pair.lam()[i] != pair.mu()[i]).collect();
    if keep.len() == pair.degree() {
        return Ok(pair.clone());
    }
    if keep.is_empty() {
        return Err(Error::DegenerateEmpty);
    }
    let lam = keep.iter().map(|&i| pair.lam()[i].clone()).collect();
    let mu = keep.iter().map(|&i| pair.mu()[i].clone()).collect();
    PolyPair::new(RootList::new(lam)?, RootList::new(mu)?)
}

/// Positions dropped by [`reduce_shared_roots`].
pub fn shared_positions(pair: &PolyPair) -> Vec<usize> {
    (0..pair.degree()).filter(|&i| pair.lam()[i] == pair.mu()[i]).collect()
}
