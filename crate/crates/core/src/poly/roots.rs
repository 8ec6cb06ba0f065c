//! Real root isolation by Descartes' rule of signs with exact bisection.
//!
//! Every distinct real root is represented by a [`RealRoot`]: a square-free
//! primitive integer polynomial together with an open interval that contains
//! exactly one of its roots (or a single point when the root is known to be
//! rational). Comparisons refine intervals until they separate, and detect
//! equal roots exactly through a polynomial gcd.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactPolynomial;
use crate::bounds::Interval;
use crate::error::{Error, Result};
use crate::rational::{from_bigint, simplest_between, two_pow, Rational};

type IntPoly = Vec<BigInt>;

/// Isolating interval with multiplicity, as reported to callers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "crate::rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
}

/// One distinct real root of a polynomial.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: Arc<IntPoly>,
    lo: Rational,
    hi: Rational,
    exact: bool,
    sign_lo: i8,
    multiplicity: usize,
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `p(r)` for an integer polynomial and rational point.
fn sign_at(p: &IntPoly, r: &Rational) -> i8 {
    let (num, den) = (r.numer(), r.denom());
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for (i, a) in p.iter().enumerate().rev() {
        if i + 1 == p.len() {
            acc = a.clone();
        } else {
            den_pow *= den;
            acc = acc * num + a * &den_pow;
        }
    }
    sign_of(&acc)
}

fn to_exact(p: &IntPoly) -> ExactPolynomial {
    ExactPolynomial::new(p.iter().cloned().map(from_bigint).collect())
}

/// In-place `q(y) ↦ q(y + 1)`.
fn taylor_shift_one(q: &mut IntPoly) {
    let n = q.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = q[j + 1].clone();
            q[j] += t;
        }
    }
}

fn sign_variations(q: &IntPoly) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in q {
        let s = sign_of(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Upper bound (with matching parity) on the number of roots of `q` in (0, 1).
fn descartes_unit(q: &IntPoly) -> usize {
    let mut r: IntPoly = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// Divide by `(y − 1)` given that 1 is a root.
fn deflate_one(q: &IntPoly) -> IntPoly {
    let d = q.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        carry += &q[i];
        out[i - 1] = carry.clone();
    }
    out
}

/// Intervals `(a, b)` in the positive reals each holding exactly one root of
/// the square-free integer polynomial `g` (with `g(0) ≠ 0`), plus rational
/// roots hit exactly. Returned in increasing order.
fn positive_roots(g: &IntPoly) -> Vec<(Rational, Rational, bool)> {
    let d = g.len() - 1;
    let lead_bits = g[d].bits() as i64;
    let max_bits = g.iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    let e = (max_bits - lead_bits + 2).max(0) as u64;
    // G(y) = g(2^e y) has all positive roots in (0, 1).
    let scaled: IntPoly = g.iter().enumerate().map(|(i, c)| c << (e * i as u64)).collect();
    let scale = two_pow(e as i64);

    let mut out = Vec::new();
    // (polynomial, numerator c, depth) for y-interval (c/2^depth, (c+1)/2^depth).
    let mut stack: Vec<(IntPoly, BigInt, u64)> = vec![(scaled, BigInt::zero(), 0)];
    while let Some((q, c, depth)) = stack.pop() {
        if q.len() <= 1 {
            continue;
        }
        let count = descartes_unit(&q);
        if count == 0 {
            continue;
        }
        let lo = Rational::new(c.clone(), BigInt::one() << depth) * &scale;
        if count == 1 {
            let hi = Rational::new(&c + 1, BigInt::one() << depth) * &scale;
            out.push((lo, hi, false));
            continue;
        }
        let dq = q.len() - 1;
        // Left half: 2^dq q(y/2).
        let mut left: IntPoly = q.iter().enumerate().map(|(i, a)| a << (dq - i)).collect();
        let mid_is_root = left.iter().sum::<BigInt>().is_zero();
        if mid_is_root {
            let mid = Rational::new(2 * &c + 1, BigInt::one() << (depth + 1)) * &scale;
            out.push((mid.clone(), mid, true));
            left = deflate_one(&left);
        }
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        stack.push((right, 2 * &c + 1, depth + 1));
        stack.push((left, 2 * &c, depth + 1));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

impl RealRoot {
    fn exact_root(poly: Arc<IntPoly>, value: Rational, multiplicity: usize) -> Self {
        RealRoot {
            poly,
            lo: value.clone(),
            hi: value,
            exact: true,
            sign_lo: 0,
            multiplicity,
        }
    }

    fn open(poly: Arc<IntPoly>, lo: Rational, hi: Rational, multiplicity: usize) -> Self {
        let mut sign_lo = sign_at(&poly, &lo);
        if sign_lo == 0 {
            // `lo` is a neighbouring root hit exactly during bisection. The
            // factor is square-free, so just right of `lo` the sign is that
            // of the derivative.
            let derivative: IntPoly = poly.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
            sign_lo = sign_at(&derivative, &lo);
        }
        debug_assert!(sign_lo != 0);
        RealRoot {
            poly,
            lo,
            hi,
            exact: false,
            sign_lo,
            multiplicity,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.then_some(&self.lo)
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Closed enclosure of the root.
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn as_root_interval(&self) -> RootInterval {
        RootInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            multiplicity: self.multiplicity,
        }
    }

    /// The square-free factor this root belongs to.
    pub fn minimal_factor(&self) -> ExactPolynomial {
        to_exact(&self.poly)
    }

    fn split_at(&mut self, m: Rational) {
        let s = sign_at(&self.poly, &m);
        if s == 0 {
            self.lo = m.clone();
            self.hi = m;
            self.exact = true;
        } else if s == self.sign_lo {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Halve the isolating interval.
    pub fn bisect(&mut self) {
        if !self.exact {
            let m = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
            self.split_at(m);
        }
    }

    pub fn refine_to_width(&mut self, width: &Rational) {
        while !self.exact && &self.width() > width {
            self.bisect();
        }
    }

    /// Refine until the width is at most `2^-bits` times the distance from
    /// zero. Roots at zero are always exact, so this terminates.
    pub fn refine_relative(&mut self, bits: u32) {
        let eps = two_pow(-(bits as i64));
        loop {
            if self.exact {
                return;
            }
            let mag = if self.lo.is_positive() {
                self.lo.clone()
            } else if self.hi.is_negative() {
                -self.hi.clone()
            } else {
                Rational::zero()
            };
            if !mag.is_zero() && self.width() <= &mag * &eps {
                return;
            }
            self.bisect();
        }
    }

    /// Compare the root with a rational.
    pub fn cmp_rational(&mut self, q: &Rational) -> Ordering {
        if self.exact {
            return self.lo.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        self.split_at(q.clone());
        if self.exact {
            Ordering::Equal
        } else if &self.lo == q {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp(&mut self, other: &mut RealRoot) -> Ordering {
        let mut checked_equal = false;
        loop {
            if self.exact {
                return other.cmp_rational(&self.lo).reverse();
            }
            if other.exact {
                return self.cmp_rational(&other.lo);
            }
            if self.hi <= other.lo {
                return Ordering::Less;
            }
            if other.hi <= self.lo {
                return Ordering::Greater;
            }
            if !checked_equal {
                checked_equal = true;
                if self.same_root_in_overlap(other) {
                    return Ordering::Equal;
                }
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
    }

    /// Both open intervals overlap. Each contains exactly one root of its own
    /// square-free factor, so the roots coincide iff the gcd of the factors
    /// changes sign across the overlap (its roots there are simple and the
    /// overlap endpoints are not roots of either factor).
    fn same_root_in_overlap(&self, other: &RealRoot) -> bool {
        let h = to_exact(&self.poly).gcd(&to_exact(&other.poly));
        if h.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        let a = h.eval(lo);
        let b = h.eval(hi);
        a.is_positive() && b.is_negative() || a.is_negative() && b.is_positive()
    }

    /// The root as a rational, if it is one. A rational root `p/q` of a
    /// primitive integer polynomial has `q` dividing the leading coefficient
    /// `L`, and distinct such rationals are at least `1/L²` apart, so once the
    /// interval is that narrow the simplest rational inside is the only
    /// candidate.
    pub fn to_rational(&mut self) -> Option<Rational> {
        if self.exact {
            return Some(self.lo.clone());
        }
        let lead = self.poly.last().unwrap().abs();
        let gap = Rational::new(BigInt::one(), &lead * &lead);
        while !self.exact && self.width() >= gap {
            self.bisect();
        }
        if self.exact {
            return Some(self.lo.clone());
        }
        let s = simplest_between(&self.lo, &self.hi);
        if sign_at(&self.poly, &s) == 0 {
            self.lo = s.clone();
            self.hi = s.clone();
            self.exact = true;
            Some(s)
        } else {
            None
        }
    }
}

/// Distinct real roots of `p` in increasing order with multiplicities.
pub fn isolate(p: &ExactPolynomial) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let mut g = factor.primitive_integer();
        if g[0].is_zero() {
            let x = Arc::new(vec![BigInt::zero(), BigInt::one()]);
            roots.push(RealRoot::exact_root(x, Rational::zero(), mult));
            g.remove(0);
        }
        // Nonzero roots carry the factor with x divided out, so 0 is never a
        // root of the stored polynomial and can serve as an interval endpoint.
        let poly_full = Arc::new(g.clone());
        if g.len() == 2 {
            let r = Rational::new(-g[0].clone(), g[1].clone());
            roots.push(RealRoot::exact_root(poly_full.clone(), r, mult));
            continue;
        }
        if g.len() < 2 {
            continue;
        }
        for (lo, hi, exact) in positive_roots(&g) {
            roots.push(if exact {
                RealRoot::exact_root(poly_full.clone(), lo, mult)
            } else {
                RealRoot::open(poly_full.clone(), lo, hi, mult)
            });
        }
        let reflected: IntPoly = g
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        for (lo, hi, exact) in positive_roots(&reflected) {
            roots.push(if exact {
                RealRoot::exact_root(poly_full.clone(), -lo, mult)
            } else {
                RealRoot::open(poly_full.clone(), -hi, -lo, mult)
            });
        }
    }
    separate(&mut roots);
    Ok(roots)
}

/// Refine until the intervals of distinct roots are disjoint, then sort.
fn separate(roots: &mut [RealRoot]) {
    loop {
        roots.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut clean = true;
        for i in 0..roots.len().saturating_sub(1) {
            let (left, right) = roots.split_at_mut(i + 1);
            let a = &mut left[i];
            let b = &mut right[0];
            if a.exact && b.exact {
                continue;
            }
            if b.exact {
                if a.lo < b.lo && b.lo < a.hi {
                    a.cmp_rational(&b.lo);
                    clean = false;
                }
                continue;
            }
            if a.exact {
                continue;
            }
            if b.lo < a.hi {
                if a.width() >= b.width() {
                    a.bisect();
                } else {
                    b.bisect();
                }
                clean = false;
            }
        }
        if clean {
            return;
        }
    }
}

/// Isolating intervals of width at most `precision` for every real root.
pub fn real_roots(p: &ExactPolynomial, precision: &Rational) -> Result<Vec<RootInterval>> {
    if !precision.is_positive() {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    let mut roots = isolate(p)?;
    Ok(roots
        .iter_mut()
        .map(|r| {
            r.refine_to_width(precision);
            r.as_root_interval()
        })
        .collect())
}

/// Roots with multiplicity expanded, in increasing order.
pub fn sorted_roots(p: &ExactPolynomial) -> Result<Vec<RealRoot>> {
    Ok(isolate(p)?
        .into_iter()
        .flat_map(|r| std::iter::repeat(r.clone()).take(r.multiplicity))
        .collect())
}

/// True when every root of `p` is real (counted with multiplicity).
pub fn is_real_rooted(p: &ExactPolynomial) -> Result<bool> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let count: usize = isolate(p)?.iter().map(|r| r.multiplicity).sum();
    Ok(count == degree)
}

/// The largest real root, or `None` when `p` has no real roots.
pub fn largest_root(p: &ExactPolynomial) -> Result<Option<RealRoot>> {
    Ok(isolate(p)?.pop())
}

/// Compare the largest real roots of two polynomials that both have one.
pub fn compare_largest_roots(p: &ExactPolynomial, q: &ExactPolynomial) -> Result<Ordering> {
    let mut a = largest_root(p)?.ok_or(Error::NotRealRooted { real: 0, degree: p.degree().unwrap_or(0) })?;
    let mut b = largest_root(q)?.ok_or(Error::NotRealRooted { real: 0, degree: q.degree().unwrap_or(0) })?;
    Ok(a.cmp(&mut b))
}

/// A rational lower bound on `num / den` for roots with `num ≥ 0`, `den > 0`,
/// exact when both roots are rational and otherwise within relative error
/// about `2^-bits`.
pub fn certified_ratio_lower(num: &mut RealRoot, den: &mut RealRoot, bits: u32) -> Result<Rational> {
    if den.cmp_rational(&Rational::zero()) != Ordering::Greater {
        return Err(Error::InvalidArgument("denominator root must be positive".into()));
    }
    let a = num.to_rational();
    let b = den.to_rational();
    if let (Some(a), Some(b)) = (a, b) {
        return Ok(a / b);
    }
    num.refine_relative(bits);
    den.refine_relative(bits);
    let lo = if num.lo.is_negative() { Rational::zero() } else { num.lo.clone() };
    Ok(lo / &den.hi)
}
