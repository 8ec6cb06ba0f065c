//! Certified rational enclosures of irrational constants.
//!
//! Each function returns an [`Interval`] with rational endpoints that provably
//! contains the true value. Endpoints are rounded outward to dyadics so their
//! size stays proportional to the requested precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ceil_dyadic, floor_dyadic, int, rat, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn add_scalar(&self, c: &Rational) -> Interval {
        Interval::new(&self.lo + c, &self.hi + c)
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// `1 / self`; the interval must not contain zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains(&Rational::zero()) {
            return Err(Error::InvalidArgument("reciprocal of an interval containing 0".into()));
        }
        Ok(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    /// Round outward to dyadic endpoints with `bits` fractional bits.
    pub fn round_out(&self, bits: u32) -> Interval {
        if self.is_point() && self.lo.denom().is_one() {
            return self.clone();
        }
        Interval::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }
}

/// Exact `k`-th root of a nonnegative rational, if it is rational.
pub fn exact_root(x: &Rational, k: u32) -> Option<Rational> {
    if x.is_negative() || k == 0 {
        return None;
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    if num_traits::pow(n.clone(), k as usize) == *x.numer() && num_traits::pow(d.clone(), k as usize) == *x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Enclosure of `x^(1/k)` for rational `x ≥ 0` with relative width at most
/// `2^-bits`; a point interval when the root is rational.
pub fn kth_root_bounds(x: &Rational, k: u32, bits: u32) -> Result<Interval> {
    if k == 0 {
        return Err(Error::InvalidArgument("zeroth root".into()));
    }
    if x.is_negative() {
        return Err(Error::InvalidArgument("root of a negative number".into()));
    }
    if let Some(r) = exact_root(x, k) {
        return Ok(Interval::point(r));
    }
    // With N = ⌊x·2^{ks}⌋ and r = ⌊N^{1/k}⌋: r^k ≤ x·2^{ks} < (r+1)^k.
    let (a, b) = (x.numer(), x.denom());
    let log2 = a.bits() as i64 - b.bits() as i64;
    let mut shift: u64 = (bits as i64 + 2 - log2.div_euclid(k as i64)).max(0) as u64;
    loop {
        let scaled: BigInt = (a << (shift * k as u64)) / b;
        let r = scaled.nth_root(k);
        if r.bits() > bits as u64 + 1 {
            let denom = BigInt::one() << shift;
            let lo = Rational::new(r.clone(), denom.clone());
            let hi = Rational::new(r + 1, denom);
            return Ok(Interval::new(lo, hi));
        }
        shift += 8;
    }
}

pub fn sqrt_bounds(x: &Rational, bits: u32) -> Result<Interval> {
    kth_root_bounds(x, 2, bits)
}

/// Sum of `z^(2j+1)/(2j+1)` for `j < terms`, plus the truncation bound for
/// `0 ≤ z ≤ 1/2`.
fn atanh_series(z: &Rational, bits: u32) -> Interval {
    let z2 = z * z;
    let tol = crate::rational::two_pow(-(bits as i64) - 4);
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut j: i64 = 0;
    loop {
        sum += &power / int(2 * j + 1);
        power *= &z2;
        j += 1;
        // Tail after this point is at most power / ((2j+1)(1 - z^2)).
        let tail = &power / (int(2 * j + 1) * (Rational::one() - &z2));
        if tail <= tol || power.is_zero() {
            return Interval::new(sum.clone(), sum + tail).round_out(bits + 2);
        }
    }
}

/// Enclosure of `ln 2` of width about `2^-bits`.
pub fn ln2_bounds(bits: u32) -> Interval {
    // ln 2 = 2 atanh(1/3)
    atanh_series(&rat(1, 3), bits + 1).scale(&int(2))
}

/// Enclosure of the natural logarithm of a positive rational.
pub fn ln_bounds(x: &Rational, bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument("logarithm of a nonpositive number".into()));
    }
    if x.is_one() {
        return Ok(Interval::point(Rational::zero()));
    }
    // x = 2^m y with y in [1, 2).
    let mut m: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = x / crate::rational::two_pow(m);
    while y >= int(2) {
        y /= int(2);
        m += 1;
    }
    while y < Rational::one() {
        y *= int(2);
        m -= 1;
    }
    let extra = 64 - (m.unsigned_abs().max(1)).leading_zeros();
    let ln2 = ln2_bounds(bits + extra + 2);
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let frac = atanh_series(&z, bits + 2).scale(&int(2));
    Ok(ln2.scale(&int(m)).add(&frac).round_out(bits + 2))
}

/// Enclosure of `atan(1/q)` for integer `q ≥ 2` via its alternating series.
fn atan_recip_bounds(q: i64, bits: u32) -> Interval {
    let x = rat(1, q);
    let x2 = &x * &x;
    let tol = crate::rational::two_pow(-(bits as i64) - 4);
    let mut power = x;
    let mut sum = Rational::zero();
    let mut j: i64 = 0;
    loop {
        let term = &power / int(2 * j + 1);
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
        j += 1;
        let next = &power / int(2 * j + 1);
        if next <= tol {
            // Alternating with decreasing terms: the limit lies between
            // consecutive partial sums.
            let other = if j % 2 == 0 { &sum + &next } else { &sum - &next };
            let (lo, hi) = if other < sum { (other, sum) } else { (sum, other) };
            return Interval::new(lo, hi).round_out(bits + 4);
        }
    }
}

/// Enclosure of π of width about `2^-bits` (Machin's formula).
pub fn pi_bounds(bits: u32) -> Interval {
    let a = atan_recip_bounds(5, bits + 6).scale(&int(16));
    let b = atan_recip_bounds(239, bits + 6).scale(&int(4));
    a.sub(&b).round_out(bits + 2)
}

/// Enclosure of `cos(x)` for rational `0 ≤ x ≤ 2` via Taylor partial sums.
fn cos_taylor(x: &Rational, bits: u32) -> Interval {
    let x2 = x * x;
    let tol = crate::rational::two_pow(-(bits as i64) - 4);
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut j: i64 = 0;
    loop {
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = term * &x2 / int((2 * j + 1) * (2 * j + 2));
        j += 1;
        if term <= tol {
            return Interval::new(&sum - &term, &sum + &term).round_out(bits + 2);
        }
    }
}

/// Enclosure of `cos(qπ)` for rational `q`, exact at the rational values
/// (multiples of π/3 and π/2).
pub fn cos_pi(q: &Rational, bits: u32) -> Interval {
    // Reduce to [0, 1] using periodicity and evenness.
    let two = int(2);
    let mut r = q - (q / &two).floor() * &two;
    if r > Rational::one() {
        r = &two - r;
    }
    let exact = |num: i64, den: i64| rat(num, den);
    for (angle, value) in [
        (exact(0, 1), exact(1, 1)),
        (exact(1, 3), exact(1, 2)),
        (exact(1, 2), exact(0, 1)),
        (exact(2, 3), exact(-1, 2)),
        (exact(1, 1), exact(-1, 1)),
    ] {
        if r == angle {
            return Interval::point(value);
        }
    }
    if r > rat(1, 2) {
        return cos_pi(&(Rational::one() - r), bits).neg();
    }
    // r in (0, 1/2): x = rπ in (0, π/2) where cos is decreasing.
    let pi = pi_bounds(bits + 4);
    let x = pi.scale(&r);
    let upper = cos_taylor(&x.lo, bits + 2).hi;
    let lower = cos_taylor(&x.hi, bits + 2).lo;
    let one = Rational::one();
    let lower = if lower < -one.clone() { -one.clone() } else { lower };
    let upper = if upper > one { one } else { upper };
    Interval::new(lower, upper)
}
