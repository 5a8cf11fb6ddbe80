//! Root trajectories of `p_t = t·p + (1 − t)·q` for `t ∈ [0, 1]`.
//!
//! With a common interlacer, the `i`-th root `λᵢ(t)` stays inside the pair
//! interval `[min(λᵢ, μᵢ), max(λᵢ, μᵢ)]` for the whole path, and `p_t` has
//! opposite strict signs at the two ends of that interval for `0 < t < 1`.
//! Every root is therefore isolated by exact-sign bisection inside its own
//! interval, and the root index is bound to the interval rather than to a
//! sorted position.
//!
//! `t` is always rational, so `p_t` has rational coefficients and all sign
//! tests are exact; only root positions are approximate, with rigorous
//! enclosures. Partial sums `S_k(t) = Σ_{i≤k} λᵢ(t)` are carried as interval
//! sums, so a step between two grid points is classified as a proven
//! increase, a proven decrease, a proven plateau (both ends exact and
//! equal), or inconclusive. Inconclusive steps are first re-isolated with a
//! tighter tolerance, then split in `t`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interlace::{require_common_interlacer, PolyPair};
use crate::poly::{bisect_signed, IntegerPoly, Interval, Poly};
use crate::rational::{self, Rational};

/// Uniform grid points used when the caller has no preference.
pub const DEFAULT_GRID: usize = 1024;

/// Maximum number of halvings applied to one grid step, and the depth of the
/// geometric refinement toward `t = 0` and `t = 1`.
pub const REFINE_DEPTH: u32 = 16;

/// Bits of extra precision added per re-isolation round.
const TIGHTEN_BITS: i32 = 40;
const TIGHTEN_ROUNDS: i32 = 2;

/// Exact Newton iterations tried before falling back to bisection.
const NEWTON_STEPS: usize = 4;

/// `2^-60`.
pub fn default_tol() -> Rational {
    rational::pow2(-60)
}

/// The segment between `q` (at `t = 0`) and `p` (at `t = 1`).
#[derive(Debug, Clone)]
pub struct ConvexPath {
    pair: PolyPair,
    brackets: Vec<Interval>,
    // L·p and L·q for one positive integer L
    p_int: Vec<BigInt>,
    q_int: Vec<BigInt>,
    p_f64: Vec<f64>,
    q_f64: Vec<f64>,
}

impl ConvexPath {
    pub fn new(pair: &PolyPair) -> Result<Self> {
        require_common_interlacer(pair)?;
        let lcm = pair.p().coeffs().iter().chain(pair.q().coeffs()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale =
            |poly: &Poly| -> Vec<BigInt> { poly.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect() };
        let to_f64 = |poly: &Poly| -> Vec<f64> { poly.coeffs().iter().map(rational::to_f64).collect() };
        Ok(Self {
            brackets: pair.pair_intervals(),
            p_int: scale(pair.p()),
            q_int: scale(pair.q()),
            p_f64: to_f64(pair.p()),
            q_f64: to_f64(pair.q()),
            pair: pair.clone(),
        })
    }

    pub fn pair(&self) -> &PolyPair {
        &self.pair
    }

    pub fn degree(&self) -> usize {
        self.pair.degree()
    }

    /// The interval confining root `i` for every `t`.
    pub fn brackets(&self) -> &[Interval] {
        &self.brackets
    }

    /// Exact coefficients of `t·p + (1 − t)·q`.
    pub fn poly_at(&self, t: &Rational) -> Poly {
        let one_minus = Rational::one() - t;
        self.pair.p().scale(t).add(&self.pair.q().scale(&one_minus))
    }

    /// Positive multiple of `p_t` with integer coefficients.
    fn integer_at(&self, t: &Rational) -> IntegerPoly {
        let a = t.numer();
        let b_minus_a = t.denom() - a;
        let coeffs = self.p_int.iter().zip(&self.q_int).map(|(p, q)| a * p + &b_minus_a * q).collect();
        IntegerPoly::new(coeffs)
    }

    fn f64_at(&self, t: f64) -> Vec<f64> {
        self.p_f64.iter().zip(&self.q_f64).map(|(p, q)| t * p + (1.0 - t) * q).collect()
    }

    /// Root `i` of `p_t`, enclosed in an interval of width at most `tol`.
    pub fn root(&self, t: &Rational, i: usize, tol: &Rational) -> Result<Interval> {
        check_t(t)?;
        check_tol(tol)?;
        if i >= self.degree() {
            return Err(Error::IndexOutOfRange(i));
        }
        let ip = self.integer_at(t);
        let fp = self.f64_at(rational::to_f64(t));
        self.isolate(&ip, &fp, t, i, &self.brackets[i], tol)
    }

    /// All roots of `p_t`, largest first.
    pub fn roots(&self, t: &Rational, tol: &Rational) -> Result<Vec<Interval>> {
        check_t(t)?;
        check_tol(tol)?;
        let ip = self.integer_at(t);
        let fp = self.f64_at(rational::to_f64(t));
        (0..self.degree()).map(|i| self.isolate(&ip, &fp, t, i, &self.brackets[i], tol)).collect()
    }

    /// Shrinks existing root enclosures at `t` down to width `tol`.
    pub fn tighten(&self, t: &Rational, current: &[Interval], tol: &Rational) -> Result<Vec<Interval>> {
        let ip = self.integer_at(t);
        let fp = self.f64_at(rational::to_f64(t));
        current
            .iter()
            .enumerate()
            .map(|(i, iv)| if iv.width() <= *tol { Ok(iv.clone()) } else { self.isolate(&ip, &fp, t, i, iv, tol) })
            .collect()
    }

    fn isolate(
        &self,
        ip: &IntegerPoly,
        fp: &[f64],
        t: &Rational,
        i: usize,
        bracket: &Interval,
        tol: &Rational,
    ) -> Result<Interval> {
        if bracket.is_point() {
            return Ok(bracket.clone());
        }
        let fail = || Error::BracketFailure { t: t.clone(), index: i };
        let s_lo = ip.sign_at(bracket.lo());
        if s_lo.is_eq() {
            return Ok(Interval::point(bracket.lo().clone()));
        }
        let s_hi = ip.sign_at(bracket.hi());
        if s_hi.is_eq() {
            return Ok(Interval::point(bracket.hi().clone()));
        }
        if s_lo == s_hi {
            return Err(fail());
        }
        if bracket.width() <= *tol {
            return Ok(bracket.clone());
        }
        // A float estimate polished by exact Newton steps usually yields a
        // bracket of width tol directly; it is only used when the exact
        // signs confirm it.
        let mut start = bracket.clone();
        if let Some(guess) = float_root(fp, rational::to_f64(bracket.lo()), rational::to_f64(bracket.hi())) {
            let mut x = rational::from_f64(guess);
            let grid = tol / rational::int(4);
            let half = tol / rational::int(2);
            for _ in 0..NEWTON_STEPS {
                let Some(next) = x.as_ref().and_then(|x| ip.newton_step(x, &grid)) else { break };
                let lo = (&next - &half).max(bracket.lo().clone());
                let hi = (&next + &half).min(bracket.hi().clone());
                if lo < hi {
                    let sl = if &lo == bracket.lo() { s_lo } else { ip.sign_at(&lo) };
                    if sl.is_eq() {
                        return Ok(Interval::point(lo));
                    }
                    let sh = if &hi == bracket.hi() { s_hi } else { ip.sign_at(&hi) };
                    if sh.is_eq() {
                        return Ok(Interval::point(hi));
                    }
                    if sl == s_lo && sh == s_hi {
                        return Interval::new(lo, hi);
                    }
                }
                x = Some(next);
            }
            let radius = guess.abs().max(1.0) * 2f64.powi(-40);
            if let (Some(lo), Some(hi)) = (rational::from_f64(guess - radius), rational::from_f64(guess + radius)) {
                let lo = lo.max(bracket.lo().clone());
                let hi = hi.min(bracket.hi().clone());
                if lo < hi {
                    let sl = if &lo == bracket.lo() { s_lo } else { ip.sign_at(&lo) };
                    if sl.is_eq() {
                        return Ok(Interval::point(lo));
                    }
                    let sh = if &hi == bracket.hi() { s_hi } else { ip.sign_at(&hi) };
                    if sh.is_eq() {
                        return Ok(Interval::point(hi));
                    }
                    if sl == s_lo && sh == s_hi {
                        start = Interval::new(lo, hi)?;
                    }
                }
            }
        }
        Ok(bisect_signed(ip, start, s_lo, tol))
    }
}

/// Float bisection for a starting guess; `None` without a float sign change.
fn float_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> Option<f64> {
    let eval = |x: f64| coeffs.iter().fold(0.0, |acc, c| acc * x + c);
    let mut f_lo = eval(lo);
    let f_hi = eval(hi);
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::TOutOfOpenRange(t.clone()));
    }
    Ok(())
}

fn check_tol(tol: &Rational) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance(tol.clone()));
    }
    Ok(())
}

/// Prefix sums of root enclosures: `S_k` for `k = 1..=n`.
pub fn partial_sum_enclosures(roots: &[Interval]) -> Vec<Interval> {
    let mut acc = Interval::point(Rational::zero());
    roots
        .iter()
        .map(|r| {
            acc = acc.add(r);
            acc.clone()
        })
        .collect()
}

/// How `S_k` changes across one step `[t_a, t_b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepClass {
    /// `S_k(t_b) > S_k(t_a)` is proven.
    Increase,
    /// `S_k(t_b) < S_k(t_a)` is proven.
    Decrease,
    /// Both values are exact and equal.
    Flat,
    /// The enclosures overlap.
    Inconclusive,
}

pub fn classify_step(before: &Interval, after: &Interval) -> StepClass {
    if after.lo() > before.hi() {
        StepClass::Increase
    } else if after.hi() < before.lo() {
        StepClass::Decrease
    } else if before.is_point() && after.is_point() {
        StepClass::Flat
    } else {
        StepClass::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonotoneVerdict {
    /// Every checked step is a proven increase.
    Increasing,
    /// No proven decrease, at least one proven plateau.
    Nondecreasing,
    /// First step (in `t` order) with a proven decrease.
    ViolatedAt { from: Rational, to: Rational },
}

impl MonotoneVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, MonotoneVerdict::ViolatedAt { .. })
    }
}

/// Sampled trajectories on a grid of rational `t` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryBundle {
    pub t_grid: Vec<Rational>,
    /// `roots_at[g][i]` encloses `λᵢ(t_grid[g])`.
    pub roots_at: Vec<Vec<Interval>>,
    /// `partial_sums[g][k - 1]` encloses `S_k(t_grid[g])`.
    pub partial_sums: Vec<Vec<Interval>>,
    pub tol: Rational,
    /// Verdicts for `S_k`, `k = 1..n − 1`.
    pub monotone_verdicts: Vec<MonotoneVerdict>,
}

impl TrajectoryBundle {
    /// Steps `[t_grid[g], t_grid[g + 1]]` classified per `k < n`.
    pub fn step_classes(&self) -> Vec<Vec<StepClass>> {
        self.partial_sums
            .windows(2)
            .map(|w| {
                let n = w[0].len();
                (0..n.saturating_sub(1)).map(|k| classify_step(&w[0][k], &w[1][k])).collect()
            })
            .collect()
    }
}

/// `k·tol` bound on the width of the `S_k` enclosures.
pub fn partial_sum_error_bound(k: usize, tol: &Rational) -> Rational {
    tol * rational::int(k as i64)
}

pub fn uniform_grid(grid_size: usize) -> Result<Vec<Rational>> {
    if grid_size < 2 {
        return Err(Error::GridTooSmall(grid_size));
    }
    let last = (grid_size - 1) as i64;
    Ok((0..=last).map(|g| rational::rat(g, last)).collect())
}

/// Tracks all roots on a uniform grid of `grid_size` points in `[0, 1]`.
///
/// Steps whose partial-sum enclosures overlap are re-isolated with a
/// tighter tolerance; if that does not separate them the step is reported
/// as [`Error::GridExhausted`].
pub fn track(pair: &PolyPair, grid_size: usize, tol: &Rational) -> Result<TrajectoryBundle> {
    check_tol(tol)?;
    let grid = uniform_grid(grid_size)?;
    let path = ConvexPath::new(pair)?;
    let mut roots_at: Vec<Vec<Interval>> = grid.par_iter().map(|t| path.roots(t, tol)).collect::<Result<_>>()?;
    let n = path.degree();
    let mut partial_sums: Vec<Vec<Interval>> = roots_at.iter().map(|r| partial_sum_enclosures(r)).collect();

    let mut verdicts = vec![Verdicts::default(); n.saturating_sub(1)];
    for g in 0..grid.len() - 1 {
        for k in 0..n.saturating_sub(1) {
            let mut class = classify_step(&partial_sums[g][k], &partial_sums[g + 1][k]);
            let mut round = 1;
            while class == StepClass::Inconclusive && round <= TIGHTEN_ROUNDS {
                let finer = tol * rational::pow2(-TIGHTEN_BITS * round);
                for idx in [g, g + 1] {
                    roots_at[idx] = path.tighten(&grid[idx], &roots_at[idx], &finer)?;
                    partial_sums[idx] = partial_sum_enclosures(&roots_at[idx]);
                }
                class = classify_step(&partial_sums[g][k], &partial_sums[g + 1][k]);
                round += 1;
            }
            if class == StepClass::Inconclusive {
                return Err(Error::GridExhausted { from: grid[g].clone(), to: grid[g + 1].clone(), k: k + 1 });
            }
            verdicts[k].record(class, &grid[g], &grid[g + 1]);
        }
    }
    Ok(TrajectoryBundle {
        t_grid: grid,
        roots_at,
        partial_sums,
        tol: tol.clone(),
        monotone_verdicts: verdicts.into_iter().map(Verdicts::finish).collect(),
    })
}

#[derive(Debug, Clone, Default)]
struct Verdicts {
    violation: Option<(Rational, Rational)>,
    flats: usize,
    increases: usize,
    decreases: usize,
}

impl Verdicts {
    fn record(&mut self, class: StepClass, from: &Rational, to: &Rational) {
        match class {
            StepClass::Increase => self.increases += 1,
            StepClass::Flat => self.flats += 1,
            StepClass::Decrease => {
                self.decreases += 1;
                let earlier = self.violation.as_ref().is_none_or(|(f, _)| from < f);
                if earlier {
                    self.violation = Some((from.clone(), to.clone()));
                }
            }
            StepClass::Inconclusive => unreachable!("inconclusive steps are refined before recording"),
        }
    }

    fn finish(self) -> MonotoneVerdict {
        match self.violation {
            Some((from, to)) => MonotoneVerdict::ViolatedAt { from, to },
            None if self.flats > 0 => MonotoneVerdict::Nondecreasing,
            None => MonotoneVerdict::Increasing,
        }
    }
}

/// Per-`k` step tallies from an empirical run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCounts {
    pub increases: usize,
    pub decreases: usize,
    pub flats: usize,
}

/// Grid-based verdict on strong majorization.
///
/// This is "no violation found at the sampled resolution", not a proof; the
/// exact answer comes from the residue certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalVerdict {
    /// Verdicts for `S_k`, `k = 1..n − 1`.
    pub monotone_verdicts: Vec<MonotoneVerdict>,
    pub step_counts: Vec<StepCounts>,
    /// All `S_n` enclosures share a common value.
    pub total_constant: bool,
    /// No proven decrease for `k < n` and `S_n` constant.
    pub holds: bool,
    /// Every checked step of every `S_k`, `k < n`, is a proven increase.
    pub strictly_increasing: bool,
    /// Number of distinct `t` values sampled.
    pub points: usize,
    /// Narrowest step width that had to be checked.
    pub finest_step: Rational,
}

/// Checks every `S_k` for monotonicity along the path.
///
/// Starts from a uniform grid, replaces the two boundary steps by steps
/// shrinking geometrically toward `t = 0` and `t = 1` ([`REFINE_DEPTH`]
/// halvings), re-isolates any inconclusive step at tighter tolerance, and
/// halves it in `t` up to [`REFINE_DEPTH`] times if that is not enough.
pub fn strong_majorization_empirical(pair: &PolyPair, grid_size: usize, tol: &Rational) -> Result<EmpiricalVerdict> {
    check_tol(tol)?;
    let uniform = uniform_grid(grid_size)?;
    let path = ConvexPath::new(pair)?;
    let n = path.degree();

    // sample points: uniform grid with the first and last step refined
    let h = &uniform[1];
    let mut points: Vec<Rational> = Vec::with_capacity(uniform.len() + 2 * REFINE_DEPTH as usize);
    for j in (1..=REFINE_DEPTH as i32).rev() {
        points.push(h * rational::pow2(-j));
    }
    points.extend(uniform.iter().cloned());
    for j in 1..=REFINE_DEPTH as i32 {
        points.push(Rational::one() - h * rational::pow2(-j));
    }
    points.sort();
    points.dedup();

    let sampled: Vec<Vec<Interval>> = points.par_iter().map(|t| path.roots(t, tol)).collect::<Result<_>>()?;
    let mut sampler = Sampler {
        path: &path,
        tol: tol.clone(),
        cache: points.iter().cloned().zip(sampled.into_iter().map(|r| (r, 0))).collect(),
    };

    let mut tallies = vec![Verdicts::default(); n.saturating_sub(1)];
    let mut finest = h.clone();
    let all_k: Vec<usize> = (0..n.saturating_sub(1)).collect();
    for w in points.windows(2) {
        sampler.check(&w[0], &w[1], &all_k, 0, &mut tallies, &mut finest)?;
    }

    let total_constant = {
        let mut common: Option<Interval> = None;
        let mut ok = true;
        for (roots, _) in sampler.cache.values() {
            let s = partial_sum_enclosures(roots).pop().expect("nonempty");
            common = match common {
                None => Some(s),
                Some(c) => c.intersection(&s).or_else(|| {
                    ok = false;
                    None
                }),
            };
            if !ok {
                break;
            }
        }
        ok
    };

    let step_counts =
        tallies.iter().map(|v| StepCounts { increases: v.increases, decreases: v.decreases, flats: v.flats }).collect();
    let strictly_increasing = tallies.iter().all(|v| v.decreases == 0 && v.flats == 0);
    let monotone_verdicts: Vec<MonotoneVerdict> = tallies.into_iter().map(Verdicts::finish).collect();
    let holds = total_constant && monotone_verdicts.iter().all(|v| !v.is_violated());
    Ok(EmpiricalVerdict {
        monotone_verdicts,
        step_counts,
        total_constant,
        holds,
        strictly_increasing,
        points: sampler.cache.len(),
        finest_step: finest,
    })
}

struct Sampler<'a> {
    path: &'a ConvexPath,
    tol: Rational,
    // t -> (root enclosures, tightening rounds applied)
    cache: HashMap<Rational, (Vec<Interval>, i32)>,
}

impl Sampler<'_> {
    fn sums(&mut self, t: &Rational) -> Result<Vec<Interval>> {
        if !self.cache.contains_key(t) {
            let roots = self.path.roots(t, &self.tol)?;
            self.cache.insert(t.clone(), (roots, 0));
        }
        Ok(partial_sum_enclosures(&self.cache[t].0))
    }

    /// Re-isolates the roots at `t` one round tighter; false at the cap.
    fn tighten(&mut self, t: &Rational) -> Result<bool> {
        let (roots, rounds) = self.cache.get(t).expect("sampled before tightening").clone();
        if rounds >= TIGHTEN_ROUNDS {
            return Ok(false);
        }
        let finer = &self.tol * rational::pow2(-TIGHTEN_BITS * (rounds + 1));
        let roots = self.path.tighten(t, &roots, &finer)?;
        self.cache.insert(t.clone(), (roots, rounds + 1));
        Ok(true)
    }

    fn check(
        &mut self,
        ta: &Rational,
        tb: &Rational,
        ks: &[usize],
        depth: u32,
        tallies: &mut [Verdicts],
        finest: &mut Rational,
    ) -> Result<()> {
        if ks.is_empty() {
            return Ok(());
        }
        let width = tb - ta;
        if width < *finest {
            *finest = width;
        }
        let mut pending: Vec<usize> = ks.to_vec();
        loop {
            let sa = self.sums(ta)?;
            let sb = self.sums(tb)?;
            pending.retain(|&k| {
                let class = classify_step(&sa[k], &sb[k]);
                if class == StepClass::Inconclusive {
                    true
                } else {
                    tallies[k].record(class, ta, tb);
                    false
                }
            });
            if pending.is_empty() {
                return Ok(());
            }
            let a = self.tighten(ta)?;
            let b = self.tighten(tb)?;
            if !a && !b {
                break;
            }
        }
        if depth >= REFINE_DEPTH {
            return Err(Error::GridExhausted { from: ta.clone(), to: tb.clone(), k: pending[0] + 1 });
        }
        let mid = (ta + tb) / rational::int(2);
        self.check(ta, &mid, &pending, depth + 1, tallies, finest)?;
        self.check(&mid, tb, &pending, depth + 1, tallies, finest)
    }
}

/// Rate of change `dλᵢ/dt` with a rigorous enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VelocityEstimate {
    /// Midpoint of the intersection of the three enclosures.
    pub value: Rational,
    /// Half-width of that intersection; the true velocity is within it.
    pub error: Rational,
    /// Enclosures of `(q − p)/p_t'`, `(1/t)·q/p_t'` and `−1/(1 − t)·p/p_t'`
    /// over the isolated root.
    pub forms: [Interval; 3],
    pub root: Interval,
}

/// Velocity of root `i` at interior `t`, from differentiating
/// `p_t(λᵢ(t)) = 0`:
///
/// ```text
/// dλᵢ/dt = (q − p)/p_t' = (1/t)·q/p_t' = −1/(1 − t)·p/p_t'   at λᵢ(t).
/// ```
///
/// Each form is enclosed by interval evaluation over the isolated root;
/// the three enclosures all contain the true value.
pub fn root_velocity(pair: &PolyPair, t: &Rational, i: usize, tol: &Rational) -> Result<VelocityEstimate> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::TOutOfOpenRange(t.clone()));
    }
    check_tol(tol)?;
    let path = ConvexPath::new(pair)?;
    if i >= path.degree() {
        return Err(Error::IndexOutOfRange(i));
    }
    let dpt = path.poly_at(t).derivative()?;
    let q_minus_p = pair.q().sub(pair.p());
    let inv_t = t.recip();
    let inv_one_minus = -(Rational::one() - t).recip();

    let mut root = path.root(t, i, tol)?;
    let mut current_tol = tol.clone();
    for _ in 0..8 {
        let denom = dpt.evaluate_interval(&root);
        if let Some(forms) = velocity_forms(pair, &q_minus_p, &denom, &root, &inv_t, &inv_one_minus) {
            let common = forms[0]
                .intersection(&forms[1])
                .and_then(|x| x.intersection(&forms[2]))
                .ok_or_else(|| Error::BracketFailure { t: t.clone(), index: i })?;
            return Ok(VelocityEstimate {
                value: common.midpoint(),
                error: common.width() / rational::int(2),
                forms,
                root,
            });
        }
        // p_t' enclosure straddles zero: shrink the root enclosure
        current_tol *= rational::pow2(-TIGHTEN_BITS);
        root = path.tighten(t, std::slice::from_ref(&root), &current_tol)?.remove(0);
    }
    Err(Error::BracketFailure { t: t.clone(), index: i })
}

fn velocity_forms(
    pair: &PolyPair,
    q_minus_p: &Poly,
    denom: &Interval,
    root: &Interval,
    inv_t: &Rational,
    inv_one_minus: &Rational,
) -> Option<[Interval; 3]> {
    let f1 = q_minus_p.evaluate_interval(root).div(denom)?;
    let f2 = pair.q().evaluate_interval(root).div(denom)?.scale(inv_t);
    let f3 = pair.p().evaluate_interval(root).div(denom)?.scale(inv_one_minus);
    Some([f1, f2, f3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, pow2, rat, to_f64};

    fn pair(l: &[i64], m: &[i64]) -> PolyPair {
        PolyPair::from_integers(l, m).unwrap()
    }

    /// `lo² ≤ v ≤ hi²` for a nonnegative enclosure of `√v`.
    fn encloses_sqrt(iv: &Interval, v: &Rational) -> bool {
        !iv.lo().is_negative() && iv.lo() * iv.lo() <= *v && *v <= iv.hi() * iv.hi()
    }

    #[test]
    fn endpoints_are_exact() {
        let pr = pair(&[5, 1, -1, -5], &[4, 2, -2, -4]);
        let path = ConvexPath::new(&pr).unwrap();
        let at0 = path.roots(&int(0), &default_tol()).unwrap();
        let at1 = path.roots(&int(1), &default_tol()).unwrap();
        for i in 0..4 {
            assert_eq!(at0[i], Interval::point(pr.mu()[i].clone()));
            assert_eq!(at1[i], Interval::point(pr.lam()[i].clone()));
        }
        assert_eq!(path.poly_at(&int(0)), *pr.q());
        assert_eq!(path.poly_at(&int(1)), *pr.p());
    }

    #[test]
    fn quadratic_closed_form() {
        // p_t = x² − (1 + 3t), so λ₁(t) = √(1 + 3t)
        let pr = pair(&[2, -2], &[1, -1]);
        let bundle = track(&pr, 5, &default_tol()).unwrap();
        for (t, roots) in bundle.t_grid.iter().zip(&bundle.roots_at) {
            let v = int(1) + int(3) * t;
            assert!(encloses_sqrt(&roots[0], &v), "t = {t}");
            assert!(roots[0].width() <= default_tol());
        }
        let mid = &bundle.partial_sums[2][0];
        assert!((to_f64(&mid.midpoint()) - 2.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(bundle.monotone_verdicts, vec![MonotoneVerdict::Increasing]);
    }

    #[test]
    fn track_rejects_bad_input() {
        let pr = pair(&[2, -2], &[1, -1]);
        assert_eq!(track(&pr, 1, &default_tol()), Err(Error::GridTooSmall(1)));
        assert_eq!(track(&pr, 4, &int(0)), Err(Error::InvalidTolerance(int(0))));
        assert_eq!(track(&pair(&[5, 4], &[3, 1]), 4, &default_tol()), Err(Error::NoCommonInterlacer(0, 1)));
    }

    #[test]
    fn diffmaj_instance_rises_then_falls() {
        let pr = pair(&[5, 1, -1, -5], &[4, 2, -2, -4]);
        let bundle = track(&pr, 64, &default_tol()).unwrap();
        let s2: Vec<&Interval> = bundle.partial_sums.iter().map(|s| &s[1]).collect();
        assert_eq!(*s2[0], Interval::point(int(6)));
        assert_eq!(*s2[63], Interval::point(int(6)));
        assert!(s2[32].lo() > &int(6));
        match &bundle.monotone_verdicts[1] {
            MonotoneVerdict::ViolatedAt { from, .. } => assert!(*from > rat(1, 2)),
            other => panic!("expected a violation, got {other:?}"),
        }
        assert!(!bundle.monotone_verdicts[0].is_violated());
    }

    #[test]
    fn empirical_examples() {
        let v = strong_majorization_empirical(&pair(&[2, -2], &[1, -1]), 64, &default_tol()).unwrap();
        assert!(v.holds && v.strictly_increasing && v.total_constant);

        let v = strong_majorization_empirical(&pair(&[5, 1, -1, -5], &[4, 2, -2, -4]), 64, &default_tol()).unwrap();
        assert!(!v.holds);
        assert!(v.monotone_verdicts[1].is_violated());

        let v = strong_majorization_empirical(&pair(&[1, 0], &[1, 0]), 16, &default_tol()).unwrap();
        assert!(v.holds);
        assert!(!v.strictly_increasing);
        assert_eq!(v.monotone_verdicts, vec![MonotoneVerdict::Nondecreasing]);
    }

    #[test]
    fn velocity_closed_form() {
        // λ₁ = √(1 + 3t), λ₁' = 3 / (2√(1 + 3t)); at t = 1/2, 3/(2√(5/2)) ≈ 0.9487
        let pr = pair(&[2, -2], &[1, -1]);
        let v = root_velocity(&pr, &rat(1, 2), 0, &default_tol()).unwrap();
        let expected = 3.0 / (2.0 * 2.5f64.sqrt());
        assert!((to_f64(&v.value) - expected).abs() < 1e-12);
        assert!(v.error < pow2(-40));
        // (2v)² (1 + 3t) = 9 must be enclosed
        let w = Interval::new(&v.value - &v.error, &v.value + &v.error).unwrap();
        let sq = w.mul(&w).scale(&rat(4 * 5, 2));
        assert!(sq.contains(&int(9)));

        let v2 = root_velocity(&pr, &rat(1, 2), 1, &default_tol()).unwrap();
        assert!((to_f64(&(&v.value + &v2.value))).abs() < 1e-15);
    }

    #[test]
    fn velocity_rejects_endpoints() {
        let pr = pair(&[2, -2], &[1, -1]);
        assert_eq!(root_velocity(&pr, &int(0), 0, &default_tol()), Err(Error::TOutOfOpenRange(int(0))));
        assert_eq!(root_velocity(&pr, &int(1), 0, &default_tol()), Err(Error::TOutOfOpenRange(int(1))));
    }

    #[test]
    fn shared_root_is_fixed() {
        let pr = pair(&[3, 2, -2], &[3, 1, -1]);
        let path = ConvexPath::new(&pr).unwrap();
        let r = path.roots(&rat(1, 3), &default_tol()).unwrap();
        assert_eq!(r[0], Interval::point(int(3)));
        let v = root_velocity(&pr, &rat(1, 3), 0, &default_tol()).unwrap();
        assert_eq!(v.value, int(0));
    }
}
