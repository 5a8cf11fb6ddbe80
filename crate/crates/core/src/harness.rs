//! Random instances and verification campaigns.
//!
//! Every trial draws from its own ChaCha8 stream, keyed by the campaign seed
//! and the trial index, so reports do not depend on how trials are scheduled
//! across threads. Roots are drawn on the lattice `ℤ/D`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homotopy::strong_majorization_empirical;
use crate::interlace::{common_interlacer_check, PolyPair};
use crate::majorize::majorizes;
use crate::poly::{Interval, RootList};
use crate::rational::{self, Rational};
use crate::residue::{necessary_condition, strong_majorization_certificate, Certificate, CertificateKind};

/// Identifies the random source in reports.
pub const RNG_ID: &str = "ChaCha8Rng::seed_from_u64(seed).set_stream(trial)";

/// Pairs drawn per trial before giving up on sum equalization.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub degree: usize,
    /// Minimum distance between consecutive pair intervals.
    pub interval_gap: Rational,
    pub root_box: Interval,
    pub seed: u64,
    pub equalize_sums: bool,
    /// Roots are multiples of `1/denominator`.
    pub denominator: u64,
}

impl GenSpec {
    /// Degree `n` on `[−10, 10]` with gap `1/4` and denominator `2^16`.
    pub fn new(degree: usize, seed: u64) -> Self {
        Self {
            degree,
            interval_gap: rational::rat(1, 4),
            root_box: Interval::new(rational::int(-10), rational::int(10)).expect("ordered"),
            seed,
            equalize_sums: true,
            denominator: 1 << 16,
        }
    }

    pub fn with_equalize_sums(mut self, equalize: bool) -> Self {
        self.equalize_sums = equalize;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.degree < 2 {
            return Err(Error::SpecInvalid(format!("degree {} is below 2", self.degree)));
        }
        if !self.interval_gap.is_positive() {
            return Err(Error::SpecInvalid("interval gap must be positive".into()));
        }
        if self.denominator == 0 {
            return Err(Error::SpecInvalid("denominator must be positive".into()));
        }
        Ok(())
    }

    fn lattice(&self) -> Lattice {
        let d = BigInt::from(self.denominator);
        let lo = ceil(&(self.root_box.lo() * Rational::from_integer(d.clone())));
        let hi = floor(&(self.root_box.hi() * Rational::from_integer(d.clone())));
        let gap = ceil(&(&self.interval_gap * Rational::from_integer(d.clone())));
        Lattice { d, lo, hi, gap }
    }
}

fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

struct Lattice {
    d: BigInt,
    lo: BigInt,
    hi: BigInt,
    gap: BigInt,
}

impl Lattice {
    fn value(&self, k: BigInt) -> Rational {
        Rational::new(k, self.d.clone())
    }
}

/// Per-trial random stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `count` distinct integers from `0..=width`, ascending.
fn distinct_sorted(rng: &mut ChaCha8Rng, width: u64, count: usize) -> Vec<u64> {
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < count {
        picked.insert(rng.random_range(0..=width));
    }
    picked.into_iter().collect()
}

/// The pair for trial 0 of `spec`.
pub fn generate_pair(spec: &GenSpec) -> Result<PolyPair> {
    generate_trial_pair(spec, 0)
}

/// Draws `n` disjoint intervals in the box, at least `interval_gap` apart,
/// and puts one root of each polynomial in each interval.
pub fn generate_trial_pair(spec: &GenSpec, trial: u64) -> Result<PolyPair> {
    spec.validate()?;
    let n = spec.degree;
    let lat = spec.lattice();
    // room left once the n − 1 gaps are taken out
    let width = &lat.hi - &lat.lo - &lat.gap * BigInt::from(n - 1);
    let width = match width.to_u64() {
        Some(w) if w + 1 >= 2 * n as u64 => w,
        _ => {
            return Err(Error::SpecInfeasible(format!(
                "{n} intervals with gap {} do not fit in {}",
                spec.interval_gap, spec.root_box
            )))
        }
    };
    let mut rng = trial_rng(spec.seed, trial);
    for _ in 0..MAX_RESAMPLES {
        let points = distinct_sorted(&mut rng, width, 2 * n);
        let mut lam = Vec::with_capacity(n);
        let mut mu = Vec::with_capacity(n);
        for (j, ends) in points.chunks(2).enumerate() {
            let shift = &lat.lo + &lat.gap * BigInt::from(j);
            let a = lat.value(&shift + BigInt::from(ends[0]));
            let b = lat.value(&shift + BigInt::from(ends[1]));
            if rng.random_bool(0.5) {
                lam.push(a);
                mu.push(b);
            } else {
                lam.push(b);
                mu.push(a);
            }
        }
        lam.reverse();
        mu.reverse();
        if spec.equalize_sums {
            let lam_sum: Rational = lam.iter().sum();
            let mu_sum: Rational = mu.iter().sum();
            let shift = (lam_sum - mu_sum) / rational::int(n as i64);
            for m in &mut mu {
                *m += &shift;
            }
        }
        let pair = PolyPair::new(RootList::new(lam)?, RootList::new(mu)?)?;
        let spaced = pair.pair_intervals().windows(2).all(|w| w[0].lo() - w[1].hi() >= spec.interval_gap);
        if spaced && pair.require_distinct().is_ok() {
            return Ok(pair);
        }
    }
    Err(Error::SpecInfeasible(format!("no valid pair after {MAX_RESAMPLES} draws")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Majorization forces the `p/q` residue condition.
    Ncm,
    /// Strong majorization iff nonnegative `q/p` residue partial sums.
    Nscm,
    /// Interior partial-sum equality rules out strong majorization.
    DiffMaj,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Ncm => "ncm",
            Theorem::Nscm => "nscm",
            Theorem::DiffMaj => "diffmaj",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ncm" => Ok(Theorem::Ncm),
            "nscm" => Ok(Theorem::Nscm),
            "diffmaj" => Ok(Theorem::DiffMaj),
            other => Err(format!("unknown theorem '{other}' (expected ncm, nscm or diffmaj)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    pub pair: PolyPair,
    pub certificate: Option<Certificate>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub theorem: Theorem,
    pub rng: &'static str,
    pub seed: u64,
    pub degree: usize,
    pub trials: usize,
    /// Instances the theorem actually says something about.
    pub applicable: usize,
    /// No applicable instance was drawn.
    pub vacuous: bool,
    pub counterexamples: Vec<Counterexample>,
    pub statistics: BTreeMap<String, u64>,
    pub runtime: Duration,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Equality of everything except the runtime.
    pub fn same_outcome(&self, other: &CampaignReport) -> bool {
        self.theorem == other.theorem
            && self.seed == other.seed
            && self.degree == other.degree
            && self.trials == other.trials
            && self.applicable == other.applicable
            && self.vacuous == other.vacuous
            && self.counterexamples == other.counterexamples
            && self.statistics == other.statistics
    }
}

#[derive(Default)]
struct TrialOutcome {
    counts: BTreeMap<&'static str, u64>,
    applicable: usize,
    counterexamples: Vec<Counterexample>,
}

impl TrialOutcome {
    fn bump(&mut self, key: &'static str) {
        *self.counts.entry(key).or_default() += 1;
    }

    fn fail(&mut self, trial: u64, pair: &PolyPair, certificate: Option<Certificate>, detail: impl Into<String>) {
        self.counterexamples.push(Counterexample { trial, pair: pair.clone(), certificate, detail: detail.into() });
    }
}

fn run_campaign<F>(theorem: Theorem, spec: &GenSpec, trials: usize, trial_fn: F) -> Result<CampaignReport>
where
    F: Fn(u64) -> Result<TrialOutcome> + Sync,
{
    if trials == 0 {
        return Err(Error::TrialsOutOfRange);
    }
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..trials as u64).into_par_iter().map(&trial_fn).collect::<Result<_>>()?;
    let mut statistics = BTreeMap::new();
    let mut applicable = 0;
    let mut counterexamples = Vec::new();
    for o in outcomes {
        applicable += o.applicable;
        for (k, v) in o.counts {
            *statistics.entry(k.to_string()).or_default() += v;
        }
        counterexamples.extend(o.counterexamples);
    }
    Ok(CampaignReport {
        theorem,
        rng: RNG_ID,
        seed: spec.seed,
        degree: spec.degree,
        trials,
        applicable,
        vacuous: applicable == 0,
        counterexamples,
        statistics,
        runtime: start.elapsed(),
    })
}

/// Checks the residue condition on every drawn pair, in either orientation,
/// whose roots are majorized.
pub fn campaign_ncm(spec: &GenSpec, trials: usize) -> Result<CampaignReport> {
    spec.validate()?;
    run_campaign(Theorem::Ncm, spec, trials, |trial| {
        let drawn = generate_trial_pair(spec, trial)?;
        let mut out = TrialOutcome::default();
        for pair in [drawn.clone(), drawn.swapped()] {
            if !majorizes(pair.lam(), pair.mu())?.holds {
                continue;
            }
            out.applicable += 1;
            let cert = necessary_condition(&pair)?;
            if cert.kind == CertificateKind::NecessaryConditionPassed {
                out.bump("passed");
            } else {
                let detail = format!("necessary condition fails at k = {:?}", cert.witness_k);
                out.fail(trial, &pair, Some(cert), detail);
            }
        }
        if out.applicable == 0 {
            out.bump("not_majorizing");
        }
        Ok(out)
    })
}

/// Compares the residue certificate with the tracked partial sums on every
/// drawn pair. Strong pairs are also checked for strictly increasing sums.
pub fn campaign_nscm(spec: &GenSpec, trials: usize, grid_size: usize) -> Result<CampaignReport> {
    spec.validate()?;
    if !spec.equalize_sums {
        return Err(Error::SpecInvalid("nscm campaign needs equalized sums".into()));
    }
    let tol = crate::homotopy::default_tol();
    run_campaign(Theorem::Nscm, spec, trials, |trial| {
        let pair = generate_trial_pair(spec, trial)?;
        let mut out = TrialOutcome { applicable: 1, ..Default::default() };
        let cert = strong_majorization_certificate(&pair)?;
        let strong = cert.kind == CertificateKind::StrongMajorization;
        let empirical = match strong_majorization_empirical(&pair, grid_size, &tol) {
            Ok(v) => v,
            Err(e @ Error::GridExhausted { .. }) => {
                out.fail(trial, &pair, Some(cert), e.to_string());
                return Ok(out);
            }
            Err(e) => return Err(e),
        };
        out.bump(if strong { "strong" } else { "not_strong" });
        if strong != empirical.holds {
            let detail = format!("certificate says {}, tracked sums say {}", strong, empirical.holds);
            out.fail(trial, &pair, Some(cert), detail);
            return Ok(out);
        }
        out.bump("agree");
        if strong {
            if empirical.strictly_increasing {
                out.bump("strictly_increasing");
            } else {
                out.fail(trial, &pair, Some(cert), "strong pair without strictly increasing partial sums");
            }
        }
        Ok(out)
    })
}

/// Contracts each block of `lam` toward its own mean: the first `k` roots by
/// `c_top`, the rest by `c_bottom`. The result has equal partial sums at
/// `k` and at `n`.
pub fn diffmaj_pair(lam: &RootList, k: usize, c_top: &Rational, c_bottom: &Rational) -> Result<PolyPair> {
    let n = lam.len();
    if k < 1 || k >= n {
        return Err(Error::IndexOutOfRange(k));
    }
    let unit = Rational::zero()..=Rational::one();
    if !unit.contains(c_top) || !unit.contains(c_bottom) {
        return Err(Error::SpecInvalid("contraction factors must lie in [0, 1]".into()));
    }
    let top = RootList::new(lam.as_slice()[..k].to_vec())?;
    let bottom = RootList::new(lam.as_slice()[k..].to_vec())?;
    let mut mu = crate::majorize::shrink_toward_mean(&top, c_top).into_vec();
    mu.extend(crate::majorize::shrink_toward_mean(&bottom, c_bottom).into_vec());
    let pair = PolyPair::new(lam.clone(), RootList::new(mu)?)?;
    crate::interlace::require_common_interlacer(&pair)?;
    pair.require_distinct()?;
    Ok(pair)
}

/// Smallest contraction factor keeping the block's pair intervals disjoint.
fn min_contraction(block: &[Rational]) -> Option<Rational> {
    let mean: Rational = block.iter().sum::<Rational>() / rational::int(block.len() as i64);
    if block.contains(&mean) {
        return None;
    }
    let mut c_min = Rational::zero();
    for w in block.windows(2) {
        let (a, b) = (&w[0] - &mean, &w[1] - &mean);
        let ratio = if b.is_positive() {
            &b / &a
        } else if a.is_negative() {
            &a / &b
        } else {
            continue;
        };
        c_min = c_min.max(ratio);
    }
    Some(c_min)
}

/// Draws `n` distinct lattice roots, an interior split `2 ≤ k ≤ n − 2` and
/// contraction factors, and returns the contracted pair with its `k`.
pub fn generate_diffmaj_pair(spec: &GenSpec, trial: u64) -> Result<(PolyPair, usize)> {
    spec.validate()?;
    let n = spec.degree;
    if n < 4 {
        return Err(Error::SpecInfeasible(format!("degree {n} leaves no room for an interior split")));
    }
    let lat = spec.lattice();
    let width = (&lat.hi - &lat.lo).to_u64().filter(|&w| w + 1 >= n as u64);
    let Some(width) = width else {
        return Err(Error::SpecInfeasible(format!("{n} roots do not fit in {}", spec.root_box)));
    };
    let d = spec.denominator.max(2);
    let mut rng = trial_rng(spec.seed, trial);
    for _ in 0..MAX_RESAMPLES {
        let mut lam: Vec<Rational> =
            distinct_sorted(&mut rng, width, n).into_iter().map(|x| lat.value(&lat.lo + BigInt::from(x))).collect();
        lam.reverse();
        let k = rng.random_range(2..=n - 2);
        let (Some(top_min), Some(bottom_min)) = (min_contraction(&lam[..k]), min_contraction(&lam[k..])) else {
            continue;
        };
        let mut draw = |c_min: &Rational| {
            let u = rational::rat(rng.random_range(1..d) as i64, d as i64);
            c_min + (Rational::one() - c_min) * u
        };
        let c_top = draw(&top_min);
        let c_bottom = draw(&bottom_min);
        match diffmaj_pair(&RootList::new(lam)?, k, &c_top, &c_bottom) {
            Ok(pair) => return Ok((pair, k)),
            Err(Error::NoCommonInterlacer(..) | Error::SharedRoots(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SpecInfeasible(format!("no valid constructed pair after {MAX_RESAMPLES} draws")))
}

/// Builds pairs with an interior partial-sum equality and checks that each
/// one is majorized but not strongly majorized, with a witness at or before
/// the split.
pub fn search_diffmaj(spec: &GenSpec, trials: usize) -> Result<CampaignReport> {
    spec.validate()?;
    if !spec.equalize_sums {
        return Err(Error::SpecInvalid("diffmaj search needs equalized sums".into()));
    }
    if spec.degree < 4 {
        return Err(Error::SpecInfeasible(format!("degree {} leaves no room for an interior split", spec.degree)));
    }
    run_campaign(Theorem::DiffMaj, spec, trials, |trial| {
        let (pair, k) = generate_diffmaj_pair(spec, trial)?;
        let mut out = TrialOutcome { applicable: 1, ..Default::default() };
        let maj = majorizes(pair.lam(), pair.mu())?;
        let cert = strong_majorization_certificate(&pair)?;
        if !maj.holds {
            out.fail(trial, &pair, Some(cert), format!("constructed pair is not majorized (split k = {k})"));
            return Ok(out);
        }
        match cert.witness_k {
            Some(w) if cert.kind == CertificateKind::NotStrongMajorization && w <= k => {
                out.bump("confirmed");
            }
            Some(w) => {
                let detail = format!("witness k0 = {w} exceeds split k = {k}");
                out.fail(trial, &pair, Some(cert), detail);
            }
            None => out.fail(trial, &pair, Some(cert), format!("strong majorization despite equality at k = {k}")),
        }
        Ok(out)
    })
}

/// Tallies from perturbing a pair's roots.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborhoodTally {
    pub samples: usize,
    /// Perturbed pairs that still have a common interlacer and distinct roots.
    pub valid: usize,
    pub majorizing: usize,
    /// Majorizing and not strongly majorizing.
    pub not_strong: usize,
}

/// Moves every root by a random lattice amount in `[−radius, radius]`,
/// re-equalizes the sums by shifting `μ`, and counts outcomes. Purely
/// exploratory.
pub fn neighborhood_sweep(
    pair: &PolyPair,
    radius: &Rational,
    samples: usize,
    seed: u64,
    denominator: u64,
) -> Result<NeighborhoodTally> {
    if !radius.is_positive() || denominator == 0 {
        return Err(Error::SpecInvalid("radius and denominator must be positive".into()));
    }
    let n = pair.degree();
    let steps = floor(&(radius * rational::int(denominator as i64))).to_i64().unwrap_or(i64::MAX).max(1);
    let tallies: Vec<NeighborhoodTally> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = trial_rng(seed, s);
            let mut nudge = |r: &Rational| r + rational::rat(rng.random_range(-steps..=steps), denominator as i64);
            let lam: Vec<Rational> = pair.lam().iter().map(&mut nudge).collect();
            let mut mu: Vec<Rational> = pair.mu().iter().map(&mut nudge).collect();
            let shift = (lam.iter().sum::<Rational>() - mu.iter().sum::<Rational>()) / rational::int(n as i64);
            for m in &mut mu {
                *m += &shift;
            }
            let mut t = NeighborhoodTally { samples: 1, ..Default::default() };
            let (Ok(lam), Ok(mu)) = (RootList::new(lam), RootList::new(mu)) else {
                return Ok(t);
            };
            let p = PolyPair::new(lam, mu)?;
            if !common_interlacer_check(&p).has_common_interlacer || p.require_distinct().is_err() {
                return Ok(t);
            }
            t.valid = 1;
            if majorizes(p.lam(), p.mu())?.holds {
                t.majorizing = 1;
                if strong_majorization_certificate(&p)?.kind == CertificateKind::NotStrongMajorization {
                    t.not_strong = 1;
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(tallies.into_iter().fold(NeighborhoodTally::default(), |a, b| NeighborhoodTally {
        samples: a.samples + b.samples,
        valid: a.valid + b.valid,
        majorizing: a.majorizing + b.majorizing,
        not_strong: a.not_strong + b.not_strong,
    }))
}
