use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a root list needs at least one root")]
    EmptyRoots,
    #[error("roots are not sorted in nonincreasing order at position {0}")]
    NotSorted(usize),
    #[error("polynomial of degree 0 has no meaningful derivative here")]
    DegreeTooLow,
    #[error("interval endpoints out of order: lo = {lo}, hi = {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },
    #[error("tolerance must be strictly positive, got {0}")]
    InvalidTolerance(Rational),
    #[error("polynomial has the same strict sign at both ends of [{lo}, {hi}]")]
    NoSignChange { lo: Rational, hi: Rational },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("transfer amount {eps} is outside the open interval (0, {max})")]
    EpsOutOfRange { eps: Rational, max: Rational },
    #[error("p and q share the root {0}")]
    SharedRoots(Rational),
    #[error("repeated root {0}")]
    NonSimpleRoots(Rational),
    #[error("every root is shared: p = q and nothing is left after deflation")]
    DegenerateEmpty,
    #[error("no common interlacer: root intervals {0} and {1} cross")]
    NoCommonInterlacer(usize, usize),
    #[error("root {index} could not be bracketed at t = {t}")]
    BracketFailure { t: Rational, index: usize },
    #[error("t = {0} is outside the open interval (0, 1)")]
    TOutOfOpenRange(Rational),
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("refinement cap reached on step [{from}, {to}] without resolving the partial sum S_{k}")]
    GridExhausted { from: Rational, to: Rational, k: usize },
    #[error("generator spec is infeasible: {0}")]
    SpecInfeasible(String),
    #[error("generator spec is invalid for this campaign: {0}")]
    SpecInvalid(String),
    #[error("campaign needs at least one trial")]
    TrialsOutOfRange,
}
