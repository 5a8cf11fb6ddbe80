//! Majorization of real-rooted polynomials with a common interlacer.
//!
//! Given `p = ∏(x − λᵢ)` and `q = ∏(x − μᵢ)` whose position-wise root
//! intervals do not cross, the roots of `t·p + (1 − t)·q` move monotonically
//! from `μ` to `λ`. This crate decides from the partial-fraction residues of
//! `p/q` and `q/p` whether that motion is a majorization path, tracks the
//! roots numerically to check the answer, and runs randomized campaigns.
//!
//! Exact arithmetic is used throughout the certificate code; only root
//! positions along the path are approximate, always with rigorous
//! enclosures.

#![allow(clippy::result_large_err)]

pub mod error;
pub mod harness;
pub mod homotopy;
pub mod interlace;
pub mod majorize;
pub mod poly;
pub mod rational;
pub mod residue;

pub use error::{Error, Result};
pub use homotopy::{
    root_velocity, strong_majorization_empirical, track, ConvexPath, EmpiricalVerdict, MonotoneVerdict,
    TrajectoryBundle, VelocityEstimate,
};
pub use interlace::{
    common_interlacer_check, proper_interlacing_check, reduce_shared_roots, InterlaceVerdict, PolyPair,
};
pub use majorize::{dalton_path, majorizes, robin_hood, MajorizationVerdict};
pub use poly::{isolate_root_in_interval, Interval, Poly, RootList};
pub use rational::Rational;
pub use residue::{
    decompose, necessary_condition, strong_majorization_certificate, Certificate, CertificateKind, Direction,
    ResidueReport,
};
