//! Exact polynomials over the rationals, root lists, and root isolation by
//! exact-sign bisection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Nonincreasing sequence of real roots, at least one entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootList {
    roots: Vec<Rational>,
}

impl RootList {
    /// Takes roots that are already sorted largest first.
    pub fn new(roots: Vec<Rational>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyRoots);
        }
        if let Some(i) = roots.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotSorted(i + 1));
        }
        Ok(Self { roots })
    }

    /// Sorts into nonincreasing order first. The sort is stable.
    pub fn from_unsorted(mut roots: Vec<Rational>) -> Result<Self> {
        roots.sort_by(|a, b| b.cmp(a));
        Self::new(roots)
    }

    pub fn from_integers(roots: &[i64]) -> Result<Self> {
        Self::from_unsorted(roots.iter().map(|&r| rational::int(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.roots
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.roots
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.roots.iter()
    }

    /// Strictly decreasing, i.e. no repeated root.
    pub fn is_simple(&self) -> bool {
        self.roots.windows(2).all(|w| w[0] > w[1])
    }

    /// First repeated value, if any.
    pub fn repeated_root(&self) -> Option<&Rational> {
        self.roots.windows(2).find(|w| w[0] == w[1]).map(|w| &w[0])
    }

    pub fn sum(&self) -> Rational {
        rational::sum(&self.roots)
    }

    pub fn prefix_sums(&self) -> Vec<Rational> {
        rational::prefix_sums(&self.roots)
    }
}

impl std::ops::Index<usize> for RootList {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.roots[i]
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    /// Interval spanned by two values in either order.
    pub fn hull(a: &Rational, b: &Rational) -> Self {
        if a <= b {
            Self { lo: a.clone(), hi: b.clone() }
        } else {
            Self { lo: b.clone(), hi: a.clone() }
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Endpoint-wise sum, the enclosure of `x + y` over both intervals.
    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        Interval::hull(&(&self.lo * c), &(&self.hi * c))
    }

    /// Enclosure of `x / y`; `None` when `other` contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        if other.contains(&Rational::zero()) {
            return None;
        }
        let inv = Interval::hull(&other.lo.recip(), &other.hi.recip());
        Some(self.mul(&inv))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Dense polynomial with rational coefficients, highest degree first.
///
/// Polynomials built from roots are monic; derivatives and linear
/// combinations need not be. The zero polynomial is stored as `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Leading zeros are stripped.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        let coeffs = match first {
            Some(i) => coeffs[i..].to_vec(),
            None => vec![Rational::zero()],
        };
        Self { coeffs }
    }

    /// `∏ (x − r)` over the list, with multiplicity.
    pub fn from_roots(roots: &RootList) -> Self {
        Self::from_root_slice(roots.as_slice())
    }

    pub fn from_root_slice(roots: &[Rational]) -> Self {
        let mut coeffs = vec![Rational::one()];
        for r in roots {
            // multiply by (x - r)
            let mut next = coeffs.clone();
            next.push(Rational::zero());
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] -= c * r;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Horner evaluation, exact.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Interval Horner enclosure of the polynomial over `x`.
    pub fn evaluate_interval(&self, x: &Interval) -> Interval {
        self.coeffs.iter().fold(Interval::point(Rational::zero()), |acc, c| acc.mul(x).add(&Interval::point(c.clone())))
    }

    pub fn derivative(&self) -> Result<Poly> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::DegreeTooLow);
        }
        let coeffs = self.coeffs[..n].iter().enumerate().map(|(i, c)| c * rational::int((n - i) as i64)).collect();
        Ok(Poly::new(coeffs))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn aligned(&self, other: &Poly) -> (Vec<Rational>, Vec<Rational>) {
        let len = self.coeffs.len().max(other.coeffs.len());
        let pad = |p: &Poly| {
            let mut v = vec![Rational::zero(); len - p.coeffs.len()];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        (pad(self), pad(other))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (a, b) = self.aligned(other);
        Poly::new(a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let (a, b) = self.aligned(other);
        Poly::new(a.into_iter().zip(b).map(|(x, y)| x - y).collect())
    }

    /// Positive integer multiple with the same sign everywhere.
    pub fn to_integer(&self) -> IntegerPoly {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        IntegerPoly { coeffs }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(first && i == n) {
                continue;
            }
            let power = n - i;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_coeff = !mag.is_one() || power == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomial with integer coefficients, used for fast exact sign tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPoly {
    coeffs: Vec<BigInt>,
}

impl IntegerPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Sign of the polynomial at `x = m/d`, computed as the sign of the
    /// homogenised value `d^n p(m/d)` in pure integer arithmetic.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let m = x.numer();
        let d = x.denom();
        let mut acc = self.coeffs[0].clone();
        let mut dpow = BigInt::one();
        for c in &self.coeffs[1..] {
            dpow *= d;
            acc = acc * m + c * &dpow;
        }
        acc.sign_ordering()
    }

    /// One Newton step `x − p(x)/p'(x)`, rounded to the nearest multiple of
    /// `grid`; `None` where `p'(x) = 0`.
    pub fn newton_step(&self, x: &Rational, grid: &Rational) -> Option<Rational> {
        let m = x.numer();
        let d = x.denom();
        // V = d^n p(m/d) and S = d^(n−1) p'(m/d)
        let mut value = self.coeffs[0].clone();
        let mut slope = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in &self.coeffs[1..] {
            slope = slope * m + &value;
            dpow *= d;
            value = value * m + c * &dpow;
        }
        if slope.is_zero() {
            return None;
        }
        // x − V/(d S) = (m S − V) / (d S), divided by grid = g/h
        let num = (m * &slope - value) * grid.denom();
        let den = d * slope * grid.numer();
        let (num, den): (BigInt, BigInt) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let two = BigInt::from(2);
        let k = (num * &two + &den).div_floor(&(den * &two));
        Some(Rational::new(k * grid.numer(), grid.denom().clone()))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)).collect()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Bisects `bracket` down to width at most `tol`, keeping a root of `p`
/// inside. Signs are exact, so the returned interval always satisfies
/// `sign(p(lo)) · sign(p(hi)) ≤ 0`. A zero at an endpoint or midpoint
/// returns that point as a zero-width interval.
pub fn isolate_root_in_interval(p: &Poly, bracket: &Interval, tol: &Rational) -> Result<Interval> {
    bisect(&p.to_integer(), bracket, tol)
}

/// [`isolate_root_in_interval`] on a precomputed integer form.
pub fn bisect(p: &IntegerPoly, bracket: &Interval, tol: &Rational) -> Result<Interval> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance(tol.clone()));
    }
    let sign_lo = p.sign_at(bracket.lo());
    if sign_lo == Ordering::Equal {
        return Ok(Interval::point(bracket.lo().clone()));
    }
    let sign_hi = p.sign_at(bracket.hi());
    if sign_hi == Ordering::Equal {
        return Ok(Interval::point(bracket.hi().clone()));
    }
    if sign_lo == sign_hi {
        return Err(Error::NoSignChange { lo: bracket.lo().clone(), hi: bracket.hi().clone() });
    }
    Ok(bisect_signed(p, bracket.clone(), sign_lo, tol))
}

/// Bisection loop once the endpoint signs are known to differ.
pub(crate) fn bisect_signed(p: &IntegerPoly, mut bracket: Interval, sign_lo: Ordering, tol: &Rational) -> Interval {
    while &bracket.width() > tol {
        let mid = bracket.midpoint();
        match p.sign_at(&mid) {
            Ordering::Equal => return Interval::point(mid),
            s if s == sign_lo => bracket.lo = mid,
            _ => bracket.hi = mid,
        }
    }
    bracket
}
