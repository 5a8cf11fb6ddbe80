//! Vector majorization and Robin-Hood transfers on root lists.
//!
//! Partial sums are indexed by `k`, the number of leading terms summed, so
//! `k` runs over `1..=n`. Positions inside a root list are 0-based.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RootList;
use crate::rational::{self, Rational};

/// Outcome of `a ⪰ b` with the exact prefix-sum gaps behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// `Σ_{i≤k} a_i − Σ_{i≤k} b_i` for `k = 1..=n`.
    pub partial_sum_gaps: Vec<Rational>,
    /// Smallest `k` whose gap breaks the definition: negative for `k < n`,
    /// nonzero for `k = n`.
    pub first_violation: Option<usize>,
    pub sums_equal: bool,
}

/// Does `a` majorize `b`?
pub fn majorizes(a: &RootList, b: &RootList) -> Result<MajorizationVerdict> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let n = a.len();
    let gaps: Vec<Rational> = a.prefix_sums().into_iter().zip(b.prefix_sums()).map(|(x, y)| x - y).collect();
    let sums_equal = gaps[n - 1].is_zero();
    let first_violation = gaps
        .iter()
        .enumerate()
        .find(|(i, g)| if i + 1 < n { g.is_negative() } else { !g.is_zero() })
        .map(|(i, _)| i + 1);
    Ok(MajorizationVerdict { holds: first_violation.is_none(), partial_sum_gaps: gaps, first_violation, sums_equal })
}

/// Moves `eps` from position `i` to a later position `j` and re-sorts.
///
/// Requires `i < j` and `0 < eps < a[i] − a[j]`; the result is majorized by
/// `a` and has the same total.
pub fn robin_hood(a: &RootList, i: usize, j: usize, eps: &Rational) -> Result<RootList> {
    let n = a.len();
    if i >= n {
        return Err(Error::IndexOutOfRange(i));
    }
    if j >= n || j <= i {
        return Err(Error::IndexOutOfRange(j));
    }
    let max = &a[i] - &a[j];
    if !eps.is_positive() || eps >= &max {
        return Err(Error::EpsOutOfRange { eps: eps.clone(), max });
    }
    let mut out = a.as_slice().to_vec();
    out[i] -= eps;
    out[j] += eps;
    RootList::from_unsorted(out)
}

/// One step of a Dalton reduction: the transfer applied and its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferStep {
    pub from: usize,
    pub to: usize,
    pub eps: Rational,
    pub result: RootList,
}

/// Turns `a` into `b` by Robin-Hood transfers, given `a ⪰ b`.
///
/// Each step takes the first position `l` with `a_l < b_l` and the nearest
/// earlier position `j` with `a_j > b_j` (everything strictly between them
/// already agrees) and moves `min(a_j − b_j, b_l − a_l)`. That settles at
/// least one more coordinate while keeping the vector sorted, so at most
/// `n − 1` steps are needed.
///
/// Returns `None` when `a` does not majorize `b`.
pub fn dalton_path(a: &RootList, b: &RootList) -> Result<Option<Vec<TransferStep>>> {
    if !majorizes(a, b)?.holds {
        return Ok(None);
    }
    let mut current = a.clone();
    let mut steps = Vec::new();
    while current != *b {
        let cur = current.as_slice();
        let target = b.as_slice();
        let l = (0..cur.len()).find(|&l| cur[l] < target[l]).expect("equal totals with a surplus force a deficit");
        let j =
            (0..l).rev().find(|&j| cur[j] > target[j]).expect("majorization forces a surplus before the first deficit");
        let eps = (&cur[j] - &target[j]).min(&target[l] - &cur[l]);
        let result = robin_hood(&current, j, l, &eps)?;
        steps.push(TransferStep { from: j, to: l, eps, result: result.clone() });
        current = result;
        if steps.len() > a.len() {
            unreachable!("Dalton reduction must finish within n steps");
        }
    }
    Ok(Some(steps))
}

/// Component-wise convex combination `c·a + (1 − c)·mean(a)`, which `a`
/// always majorizes for `c ∈ [0, 1]`.
pub fn shrink_toward_mean(a: &RootList, c: &Rational) -> RootList {
    let mean = a.sum() / rational::int(a.len() as i64);
    let one_minus = Rational::from_integer(1.into()) - c;
    let roots = a.iter().map(|x| x * c + &mean * &one_minus).collect();
    RootList::new(roots).expect("affine map with c ≥ 0 keeps the order")
}
