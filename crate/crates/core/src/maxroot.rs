//! Approximating the largest root from the top `k` coefficients.
//!
//! Two estimators share one entry point. For `k ≤ ln n` the power-sum mean
//! `(p_k/n)^{1/k}` is returned. For larger `k` a threshold `t` starts at
//! `e_1` and shrinks geometrically until `Σ_i T_k(μ_i/t)` exceeds `n`; the sum
//! is computed from the profile alone because `T_k(x/t)` has degree `k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{kth_root_bounds, ln_bounds, Interval};
use crate::chebyshev::cheb_poly;
use crate::error::{Error, Result};
use crate::poly::ExactPolynomial;
use crate::rational::{ceil_dyadic, int, pow, Rational};
use crate::symfuncs::{eval_poly_sum, power_sums_from_elementary, SymmetricProfile};

/// Relative precision of root extraction in the power-sum branch.
const ROOT_BITS: u32 = 64;
/// Fractional bits of the rational upper bound used for `ln n`.
const LN_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    PowerSum,
    ChebyshevLoop,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::PowerSum => "power-sum",
            Branch::ChebyshevLoop => "chebyshev-loop",
        })
    }
}

/// Which estimator to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchChoice {
    /// Power sums when `k ≤ ln n`, the threshold loop otherwise.
    #[default]
    Auto,
    /// Power sums for any `k` (always sound, factor `n^{1/k}`).
    PowerSum,
    /// The threshold loop; only valid when `k > ln n`.
    ChebyshevLoop,
}

/// Outcome of [`approx_max_root`].
///
/// `estimate ≤ μ_max ≤ factor · estimate_upper`. The two estimates coincide
/// except in the power-sum branch, where they bracket the irrational root
/// `(p_k/n)^{1/k}` within relative error `2^-64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxResult {
    #[serde(with = "crate::rational::serde_rational")]
    pub estimate: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub estimate_upper: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub factor: Rational,
    pub iterations: usize,
    pub branch: Branch,
}

/// Whether `k ≤ ln n`, decided exactly (`ln n` is irrational for `n ≥ 2`).
pub fn k_at_most_ln_n(k: usize, n: usize) -> bool {
    if n <= 1 {
        return false;
    }
    let k = int(k as i64);
    let mut bits = 32;
    loop {
        let ln = ln_bounds(&int(n as i64), bits).expect("n is positive");
        if k <= ln.lo {
            return true;
        }
        if k > ln.hi {
            return false;
        }
        bits *= 2;
    }
}

/// Dyadic upper bound on `ln n` with 32 fractional bits.
pub fn ln_upper(n: usize) -> Rational {
    let ln = ln_bounds(&int(n.max(1) as i64), LN_BITS + 8).expect("n is positive");
    ceil_dyadic(&ln.hi, LN_BITS)
}

/// Loop shrink factor `1 + (20 L / k)²` with `L ≥ ln n`.
pub fn shrink_factor(k: usize, n: usize) -> Rational {
    let r = int(20) * ln_upper(n) / int(k as i64);
    int(1) + &r * &r
}

fn alpha_for(branch: Branch, k: usize, n: usize) -> Rational {
    if n <= 1 {
        return int(1);
    }
    match branch {
        Branch::PowerSum => kth_root_bounds(&int(n as i64), k as u32, ROOT_BITS)
            .expect("valid root")
            .hi,
        Branch::ChebyshevLoop => {
            let s = shrink_factor(k, n);
            &s * &s
        }
    }
}

/// Rational upper bound on the guaranteed factor: `n^{1/k}` rounded up when
/// `k ≤ ln n`, otherwise `(1 + (20 L/k)²)²`. The square accounts for the
/// last shrink step: the loop stops at the first `t` whose sum exceeds `n`,
/// and only the previous threshold `s·t` is known to be within factor `s` of
/// the root.
pub fn alpha_factor(k: usize, n: usize) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let branch = if k_at_most_ln_n(k, n) { Branch::PowerSum } else { Branch::ChebyshevLoop };
    Ok(alpha_for(branch, k, n))
}

/// Maximum number of sum evaluations before the profile is declared
/// inconsistent with nonnegative roots.
pub fn iteration_cap(k: usize) -> usize {
    10 * k * k + 100
}

/// `⌈1 + ln n / ln(1 + (20 ln n/k)²)⌉ + 1`, with the ceiling decided on a
/// certified enclosure (the larger candidate is used if it stays ambiguous).
pub fn iteration_bound(k: usize, n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let mut bits = 48;
    loop {
        let ln_n = ln_bounds(&int(n as i64), bits).expect("positive");
        let kk = int(k as i64);
        let s_lo = int(1) + pow(&(int(20) * &ln_n.lo / &kk), 2);
        let s_hi = int(1) + pow(&(int(20) * &ln_n.hi / &kk), 2);
        let ln_s_lo = ln_bounds(&s_lo, bits).expect("positive").lo;
        let ln_s_hi = ln_bounds(&s_hi, bits).expect("positive").hi;
        let x_lo = int(1) + &ln_n.lo / ln_s_hi;
        let x_hi = int(1) + &ln_n.hi / ln_s_lo;
        let c_lo = x_lo.ceil();
        let c_hi = x_hi.ceil();
        if c_lo == c_hi || bits > 1024 {
            let c = c_hi.to_integer();
            return usize::try_from(c).unwrap_or(usize::MAX) + 1;
        }
        bits *= 2;
    }
}

/// Enclosure of `(p_k/n)^{1/k}`, the power-sum estimate, which satisfies
/// `(p_k/n)^{1/k} ≤ μ_max ≤ p_k^{1/k}` for nonnegative roots.
pub fn power_sum_estimate(prof: &SymmetricProfile) -> Result<Interval> {
    let k = prof.k();
    if k == 0 || prof.n == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and k ≥ 1".into()));
    }
    let sums = power_sums_from_elementary(prof);
    let pk = &sums.p[k - 1];
    if pk.is_negative() {
        return Err(Error::Precondition("negative power sum: roots are not all real and nonnegative".into()));
    }
    kth_root_bounds(&(pk / int(prof.n as i64)), k as u32, ROOT_BITS)
}

/// Exact `Σ_i T_k(μ_i / t)` from the profile, via the composed polynomial
/// `T_k(x/t)`.
pub fn root_sum_test(prof: &SymmetricProfile, t: &Rational) -> Result<Rational> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    let k = prof.k();
    let composed = cheb_poly(k).compose(&ExactPolynomial::new(vec![Rational::zero(), t.recip()]));
    eval_poly_sum(prof, &composed)
}

/// `S(v) = Σ_j w_j v^j = Σ_i T_k(v·μ_i/e_1)`, decided against `n` with
/// outward-rounded fixed-point Horner evaluation and an exact fallback.
struct ThresholdSum {
    n: BigInt,
    w: Vec<Rational>,
}

impl ThresholdSum {
    fn new(prof: &SymmetricProfile) -> Self {
        let k = prof.k();
        let n = prof.n;
        let sums = power_sums_from_elementary(prof);
        let e1 = &prof.e[0];
        let cheb = cheb_poly(k);
        let mut w = Vec::with_capacity(k + 1);
        w.push(cheb.coeff(0) * int(n as i64));
        let mut e1_pow = Rational::one();
        for j in 1..=k {
            e1_pow *= e1;
            let c = cheb.coeff(j);
            w.push(if c.is_zero() { c } else { c * &sums.p[j - 1] / &e1_pow });
        }
        ThresholdSum { n: BigInt::from(n), w }
    }

    fn fixed_point(&self, v: &Rational, precision: u64) -> Option<bool> {
        let (u, d) = (v.numer(), v.denom());
        let scale = BigInt::one() << precision;
        let round = |x: &Rational| {
            let num = x.numer() * &scale;
            (num.div_floor(x.denom()), num.div_ceil(x.denom()))
        };
        let (mut lo, mut hi) = round(self.w.last().unwrap());
        for wj in self.w.iter().rev().skip(1) {
            lo = (lo * u).div_floor(d);
            hi = (hi * u).div_ceil(d);
            if !wj.is_zero() {
                let (a, b) = round(wj);
                lo += a;
                hi += b;
            }
        }
        let target = &self.n << precision;
        if lo > target {
            Some(true)
        } else if hi <= target {
            Some(false)
        } else {
            None
        }
    }

    fn exceeds_n(&self, v: &Rational) -> bool {
        let k = self.w.len() as u64 - 1;
        let growth = (v.numer().bits() as i64 - v.denom().bits() as i64 + 1).max(1) as u64;
        let mut precision = 64 + k * growth;
        for _ in 0..4 {
            if let Some(answer) = self.fixed_point(v, precision) {
                return answer;
            }
            precision *= 2;
        }
        let exact = self.w.iter().rev().fold(Rational::zero(), |acc, wj| acc * v + wj);
        exact > Rational::from_integer(self.n.clone())
    }
}

/// Estimate the largest root of `μ ∈ ℝ₊ⁿ` from its leading profile.
pub fn approx_max_root(prof: &SymmetricProfile) -> Result<ApproxResult> {
    approx_max_root_with(prof, BranchChoice::Auto)
}

pub fn approx_max_root_with(prof: &SymmetricProfile, choice: BranchChoice) -> Result<ApproxResult> {
    let n = prof.n;
    let k = prof.k();
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let e1 = &prof.e[0];
    if e1.is_negative() {
        return Err(Error::Precondition("e_1 < 0: roots are not all nonnegative".into()));
    }
    let small = k_at_most_ln_n(k, n);
    let branch = match choice {
        BranchChoice::Auto if small => Branch::PowerSum,
        BranchChoice::Auto => Branch::ChebyshevLoop,
        BranchChoice::PowerSum => Branch::PowerSum,
        BranchChoice::ChebyshevLoop if small => {
            return Err(Error::Precondition(format!(
                "the threshold loop needs k > ln n (k = {k}, n = {n})"
            )))
        }
        BranchChoice::ChebyshevLoop => Branch::ChebyshevLoop,
    };
    let factor = alpha_for(branch, k, n);
    if n == 1 {
        return Ok(ApproxResult {
            estimate: e1.clone(),
            estimate_upper: e1.clone(),
            factor: int(1),
            iterations: 0,
            branch,
        });
    }
    if e1.is_zero() {
        return Ok(ApproxResult {
            estimate: Rational::zero(),
            estimate_upper: Rational::zero(),
            factor,
            iterations: 0,
            branch,
        });
    }
    match branch {
        Branch::PowerSum => {
            let est = power_sum_estimate(prof)?;
            Ok(ApproxResult {
                estimate: est.lo,
                estimate_upper: est.hi,
                factor,
                iterations: 0,
                branch,
            })
        }
        Branch::ChebyshevLoop => {
            let s = shrink_factor(k, n);
            let sums = ThresholdSum::new(prof);
            let cap = iteration_cap(k);
            // t = e_1 / v with v = s^j.
            let mut v = Rational::one();
            for iterations in 1..=cap {
                if sums.exceeds_n(&v) {
                    let t = e1 / &v;
                    return Ok(ApproxResult {
                        estimate: t.clone(),
                        estimate_upper: t,
                        factor,
                        iterations,
                        branch,
                    });
                }
                v *= &s;
            }
            Err(Error::IterationCap { cap })
        }
    }
}

/// Check `estimate ≤ max(roots) ≤ factor · estimate_upper` exactly.
pub fn bracket_holds(result: &ApproxResult, roots: &[Rational]) -> bool {
    let Some(max) = roots.iter().max() else {
        return false;
    };
    result.estimate.cmp(max) != Ordering::Greater && *max <= &result.factor * &result.estimate_upper
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_f64};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_factor(1, 9).unwrap(), int(9));
        assert_eq!(alpha_factor(2, 16).unwrap(), int(4));
        let a = alpha_factor(1000, 1000).unwrap();
        assert!(a > int(1) && to_f64(&a) < 1.04);
        assert!(alpha_factor(0, 3).is_err());
        assert!(alpha_factor(4, 3).is_err());
    }

    #[test]
    fn log_branch_boundary() {
        // ln 7 ≈ 1.95, ln 8 ≈ 2.08, e^3 ≈ 20.09
        assert!(!k_at_most_ln_n(2, 7));
        assert!(k_at_most_ln_n(2, 8));
        assert!(!k_at_most_ln_n(3, 20));
        assert!(k_at_most_ln_n(3, 21));
    }

    #[test]
    fn all_ones() {
        let roots = ints(&[1; 6]);
        for k in 1..=6 {
            let prof = SymmetricProfile::from_roots(&roots, k).unwrap();
            let r = approx_max_root_with(&prof, BranchChoice::PowerSum).unwrap();
            assert_eq!((r.estimate.clone(), r.estimate_upper.clone()), (int(1), int(1)), "k = {k}");
            // The loop only visits thresholds 6/s^j, so it brackets 1 instead.
            assert!(bracket_holds(&approx_max_root(&prof).unwrap(), &roots));
        }
    }

    #[test]
    fn power_sum_example() {
        let prof = SymmetricProfile::from_roots(&ints(&[1, 2, 3, 4]), 2).unwrap();
        let r = approx_max_root_with(&prof, BranchChoice::PowerSum).unwrap();
        assert_eq!(r.branch, Branch::PowerSum);
        assert!(&r.estimate * &r.estimate < rat(30, 4) && &r.estimate_upper * &r.estimate_upper > rat(30, 4));
        assert!((to_f64(&r.estimate) - 2.7386).abs() < 1e-4);
        assert!(bracket_holds(&r, &ints(&[1, 2, 3, 4])));
        // Natural log: 2 > ln 4, so the default picks the loop.
        assert_eq!(approx_max_root(&prof).unwrap().branch, Branch::ChebyshevLoop);
    }

    #[test]
    fn loop_example() {
        let roots = ints(&[1, 2, 3, 4]);
        let prof = SymmetricProfile::from_roots(&roots, 4).unwrap();
        let r = approx_max_root(&prof).unwrap();
        assert_eq!(r.branch, Branch::ChebyshevLoop);
        let s = shrink_factor(4, 4);
        assert!(r.estimate <= int(4) && int(4) <= &s * &s * &r.estimate);
        assert!(r.iterations <= iteration_bound(4, 4));
        assert!(approx_max_root_with(&SymmetricProfile::from_roots(&roots, 1).unwrap(), BranchChoice::ChebyshevLoop).is_err());
    }

    #[test]
    fn degenerate_profiles() {
        let zero = SymmetricProfile::new(5, ints(&[0, 0, 0])).unwrap();
        assert_eq!(approx_max_root(&zero).unwrap().estimate, int(0));
        let single = SymmetricProfile::new(1, vec![rat(7, 3)]).unwrap();
        let r = approx_max_root(&single).unwrap();
        assert_eq!((r.estimate, r.factor), (rat(7, 3), int(1)));
        let negative = SymmetricProfile::new(3, ints(&[-1])).unwrap();
        assert!(approx_max_root(&negative).is_err());
    }

    #[test]
    fn inconsistent_profile_hits_cap() {
        // p_2 = e_1² − 2e_2 = −1 < 0, so no real root vector has this profile
        // and Σ T_2(μ_i/t) = 2p_2/t² − 3 never exceeds 3.
        let bad = SymmetricProfile::new(3, ints(&[1, 1])).unwrap();
        assert!(matches!(approx_max_root(&bad), Err(Error::IterationCap { .. })));
    }

    #[test]
    fn root_sum_examples() {
        let ones = SymmetricProfile::from_roots(&ints(&[1, 1]), 2).unwrap();
        assert_eq!(root_sum_test(&ones, &int(1)).unwrap(), int(2));
        let a = SymmetricProfile::from_roots(&ints(&[1, 0]), 2).unwrap();
        assert_eq!(root_sum_test(&a, &int(1)).unwrap(), int(0));
        let b = SymmetricProfile::new(2, ints(&[2, 0, 0, 0])).unwrap();
        assert_eq!(root_sum_test(&b, &int(1)).unwrap(), int(98));
        assert!(root_sum_test(&b, &int(0)).is_err());
    }

    #[test]
    fn fixed_point_matches_exact_sum() {
        let roots = [rat(1, 3), rat(5, 2), int(4), rat(7, 8), int(0), int(2)];
        let prof = SymmetricProfile::from_roots(&roots, 6).unwrap();
        let sums = ThresholdSum::new(&prof);
        let e1: Rational = roots.iter().sum();
        let mut v = Rational::one();
        for _ in 0..12 {
            let exact = root_sum_test(&prof, &(&e1 / &v)).unwrap();
            assert_eq!(sums.exceeds_n(&v), exact > int(6));
            v *= rat(5, 4);
        }
    }
}
