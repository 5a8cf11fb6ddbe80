//! Simple-pole expansion of `p/q` and the residue partial-sum certificates.
//!
//! With distinct simple roots,
//!
//! ```text
//! p/q = 1 + Σ δᵢ / (x − μᵢ),   δᵢ = p(μᵢ) / q'(μᵢ)
//! ```
//!
//! and matching the `1/x` terms gives `Σ δᵢ = Σ μᵢ − Σ λᵢ`. The reverse
//! direction expands `q/p` with residues `q(λᵢ)/p'(λᵢ)`.
//!
//! Two criteria are read off the prefix sums `f_k = Σ_{i≤k} δᵢ`:
//!
//! * necessary condition for `p ⪰ q`: `f_k < 0` for every `k < n` on the
//!   `p/q` residues (and the total is zero). A failure refutes majorization;
//!   a pass proves nothing.
//! * strong majorization: `f_k ≥ 0` for every `k < n` on the `q/p` residues
//!   together with `Σ λ = Σ μ`. This is an equivalence, and strong
//!   majorization implies ordinary majorization.
//!
//! Both certificate functions drop positionally shared roots first and
//! require a common interlacer.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::interlace::{reduce_shared_roots, require_common_interlacer, PolyPair};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Residues `p(μᵢ)/q'(μᵢ)` of `p/q`.
    POverQ,
    /// Residues `q(λᵢ)/p'(λᵢ)` of `q/p`.
    QOverP,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::POverQ => "pq",
            Direction::QOverP => "qp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueReport {
    pub direction: Direction,
    pub residues: Vec<Rational>,
    /// `partial_sums[k - 1] = Σ_{i≤k} residues[i - 1]`.
    pub partial_sums: Vec<Rational>,
    pub total: Rational,
    pub sums_equal: bool,
}

impl ResidueReport {
    /// Value of the `k`-th partial sum, `k` counted from 1.
    pub fn partial_sum(&self, k: usize) -> &Rational {
        &self.partial_sums[k - 1]
    }

    /// Evaluates the right-hand side of the expansion, `1 + Σ δᵢ/(x − poleᵢ)`.
    pub fn expansion_at(&self, pair: &PolyPair, x: &Rational) -> Rational {
        let poles = match self.direction {
            Direction::POverQ => pair.mu(),
            Direction::QOverP => pair.lam(),
        };
        self.residues.iter().zip(poles.iter()).fold(rational::int(1), |acc, (d, pole)| acc + d / (x - pole))
    }
}

/// Residues and prefix sums for one direction.
///
/// The pair must already have simple roots and no root in common; see
/// [`reduce_shared_roots`].
pub fn decompose(pair: &PolyPair, direction: Direction) -> Result<ResidueReport> {
    pair.require_distinct()?;
    let (num, den, poles) = match direction {
        Direction::POverQ => (pair.p(), pair.q(), pair.mu()),
        Direction::QOverP => (pair.q(), pair.p(), pair.lam()),
    };
    let dden = den.derivative()?;
    let residues: Vec<Rational> = poles.iter().map(|x| num.evaluate(x) / dden.evaluate(x)).collect();
    let partial_sums = rational::prefix_sums(&residues);
    let total = partial_sums.last().expect("nonempty").clone();
    Ok(ResidueReport { direction, residues, partial_sums, total, sums_equal: pair.lam().sum() == pair.mu().sum() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    NecessaryConditionPassed,
    NecessaryConditionFailed,
    StrongMajorization,
    NotStrongMajorization,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::NecessaryConditionPassed => "NecessaryConditionPassed",
            CertificateKind::NecessaryConditionFailed => "NecessaryConditionFailed",
            CertificateKind::StrongMajorization => "StrongMajorization",
            CertificateKind::NotStrongMajorization => "NotStrongMajorization",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, CertificateKind::NecessaryConditionPassed | CertificateKind::StrongMajorization)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// `k` (from 1) of the offending partial sum; set only on failure.
    pub witness_k: Option<usize>,
    /// The failing partial sum is exactly zero.
    pub boundary: bool,
    /// Residues of the reduced pair.
    pub detail: ResidueReport,
    /// The pair after shared roots were dropped.
    pub reduced: PolyPair,
}

impl Certificate {
    pub fn witness_value(&self) -> Option<&Rational> {
        self.witness_k.map(|k| self.detail.partial_sum(k))
    }
}

fn prepare(pair: &PolyPair) -> Result<PolyPair> {
    let reduced = reduce_shared_roots(pair)?;
    require_common_interlacer(&reduced)?;
    reduced.require_distinct()?;
    Ok(reduced)
}

/// `p ⪰ q` forces every prefix sum of `p(μᵢ)/q'(μᵢ)` below `n` to be
/// strictly negative. A zero prefix sum fails with `boundary` set.
pub fn necessary_condition(pair: &PolyPair) -> Result<Certificate> {
    let reduced = prepare(pair)?;
    let detail = decompose(&reduced, Direction::POverQ)?;
    let n = detail.partial_sums.len();
    let witness = detail.partial_sums[..n - 1]
        .iter()
        .position(|s| !s.is_negative())
        .map(|i| i + 1)
        .or_else(|| (!detail.total.is_zero()).then_some(n));
    let boundary = witness.is_some_and(|k| k < n && detail.partial_sum(k).is_zero());
    let kind = if witness.is_none() {
        CertificateKind::NecessaryConditionPassed
    } else {
        CertificateKind::NecessaryConditionFailed
    };
    Ok(Certificate { kind, witness_k: witness, boundary, detail, reduced })
}

/// `p ⪰ˢ q` iff every prefix sum of `q(λᵢ)/p'(λᵢ)` below `n` is
/// nonnegative and `Σ λ = Σ μ`.
pub fn strong_majorization_certificate(pair: &PolyPair) -> Result<Certificate> {
    let reduced = prepare(pair)?;
    let detail = decompose(&reduced, Direction::QOverP)?;
    let n = detail.partial_sums.len();
    let witness = detail.partial_sums[..n - 1]
        .iter()
        .position(|s| s.is_negative())
        .map(|i| i + 1)
        .or_else(|| (!detail.sums_equal).then_some(n));
    let kind =
        if witness.is_none() { CertificateKind::StrongMajorization } else { CertificateKind::NotStrongMajorization };
    Ok(Certificate { kind, witness_k: witness, boundary: false, detail, reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::{int, rat};

    fn pair(l: &[i64], m: &[i64]) -> PolyPair {
        PolyPair::from_integers(l, m).unwrap()
    }

    #[test]
    fn decompose_degree_two() {
        let r = decompose(&pair(&[2, -2], &[1, -1]), Direction::POverQ).unwrap();
        assert_eq!(r.residues, vec![rat(-3, 2), rat(3, 2)]);
        assert_eq!(r.total, int(0));
        assert!(r.sums_equal);
        let r = decompose(&pair(&[2, -2], &[1, -1]), Direction::QOverP).unwrap();
        assert_eq!(r.partial_sums, vec![rat(3, 4), int(0)]);
    }

    #[test]
    fn decompose_degree_four() {
        let pr = pair(&[5, 1, -1, -5], &[4, 2, -2, -4]);
        let r = decompose(&pr, Direction::QOverP).unwrap();
        assert_eq!(r.residues, vec![rat(63, 80), rat(-15, 16), rat(15, 16), rat(-63, 80)]);
        assert_eq!(r.partial_sums, vec![rat(63, 80), rat(-3, 20), rat(63, 80), int(0)]);
        let r = decompose(&pr, Direction::POverQ).unwrap();
        assert_eq!(r.partial_sums, vec![rat(-45, 32), rat(-3, 32), rat(-45, 32), int(0)]);
    }

    #[test]
    fn decompose_preconditions() {
        assert_eq!(decompose(&pair(&[3, 1], &[3, 0]), Direction::POverQ), Err(Error::SharedRoots(int(3))));
        assert_eq!(decompose(&pair(&[3, 3], &[2, 0]), Direction::POverQ), Err(Error::NonSimpleRoots(int(3))));
    }

    #[test]
    fn expansion_identity_small() {
        let pr = pair(&[5, 1, -1, -5], &[4, 2, -2, -4]);
        for dir in [Direction::POverQ, Direction::QOverP] {
            let r = decompose(&pr, dir).unwrap();
            let x = rat(7, 3);
            let lhs = match dir {
                Direction::POverQ => pr.p().evaluate(&x) / pr.q().evaluate(&x),
                Direction::QOverP => pr.q().evaluate(&x) / pr.p().evaluate(&x),
            };
            assert_eq!(lhs, r.expansion_at(&pr, &x));
        }
    }

    #[test]
    fn necessary_condition_examples() {
        let c = necessary_condition(&pair(&[2, -2], &[1, -1])).unwrap();
        assert_eq!(c.kind, CertificateKind::NecessaryConditionPassed);
        assert_eq!(c.detail.partial_sum(1), &rat(-3, 2));
        assert_eq!(c.witness_k, None);

        let c = necessary_condition(&pair(&[5, 1, -1, -5], &[4, 2, -2, -4])).unwrap();
        assert_eq!(c.kind, CertificateKind::NecessaryConditionPassed);

        let c = necessary_condition(&pair(&[1, -1], &[2, -2])).unwrap();
        assert_eq!(c.kind, CertificateKind::NecessaryConditionFailed);
        assert_eq!(c.witness_k, Some(1));
        assert_eq!(c.witness_value(), Some(&rat(3, 4)));
        assert!(!c.boundary);
    }

    #[test]
    fn strong_certificate_examples() {
        let c = strong_majorization_certificate(&pair(&[2, -2], &[1, -1])).unwrap();
        assert_eq!(c.kind, CertificateKind::StrongMajorization);
        assert_eq!(c.detail.partial_sum(1), &rat(3, 4));

        let c = strong_majorization_certificate(&pair(&[5, 1, -1, -5], &[4, 2, -2, -4])).unwrap();
        assert_eq!(c.kind, CertificateKind::NotStrongMajorization);
        assert_eq!(c.witness_k, Some(2));
        assert_eq!(c.witness_value(), Some(&rat(-3, 20)));

        let half = PolyPair::new(
            crate::poly::RootList::new(vec![int(1), int(-1)]).unwrap(),
            crate::poly::RootList::new(vec![rat(1, 2), rat(-1, 2)]).unwrap(),
        )
        .unwrap();
        let c = strong_majorization_certificate(&half).unwrap();
        assert_eq!(c.kind, CertificateKind::StrongMajorization);
        assert_eq!(c.detail.residues[0], rat(3, 8));
    }

    #[test]
    fn certificates_reduce_and_check_interlacer() {
        // shared root 3 at position 0 is dropped first
        let c = strong_majorization_certificate(&pair(&[3, 2, -2], &[3, 1, -1])).unwrap();
        assert_eq!(c.reduced, pair(&[2, -2], &[1, -1]));
        assert_eq!(c.kind, CertificateKind::StrongMajorization);

        assert_eq!(necessary_condition(&pair(&[5, 4], &[3, 1])), Err(Error::NoCommonInterlacer(0, 1)));
        assert_eq!(necessary_condition(&pair(&[1, 0], &[1, 0])), Err(Error::DegenerateEmpty));
    }

    #[test]
    fn unequal_sums_witness_at_n() {
        let c = strong_majorization_certificate(&pair(&[3, -2], &[1, -3])).unwrap();
        assert_eq!(c.kind, CertificateKind::NotStrongMajorization);
        assert_eq!(c.witness_k, Some(2));
        let c = necessary_condition(&pair(&[3, -2], &[1, -3])).unwrap();
        assert_eq!(c.kind, CertificateKind::NecessaryConditionFailed);
        assert_eq!(c.witness_k, Some(2));
    }

    #[test]
    fn zero_partial_sum_is_boundary() {
        // f_1 = -6, f_2 = 0, f_3 = 3
        let c = necessary_condition(&pair(&[8, 3, -2], &[6, 4, 2])).unwrap();
        assert_eq!(c.kind, CertificateKind::NecessaryConditionFailed);
        assert_eq!(c.witness_k, Some(2));
        assert!(c.boundary);
        assert_eq!(c.detail.partial_sums, vec![int(-6), int(0), int(3)]);
    }
}
