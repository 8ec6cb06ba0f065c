//! Greedy rounding of an interlacing family, `⌈m^{1/3}⌉` levels at a time.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{full_polynomial, FamilyOracle, FamilySpec};
use crate::bounds::sqrt_bounds;
use crate::error::{Error, Result};
use crate::maxroot::{approx_max_root, ln_upper};
use crate::poly::{largest_root, ExactPolynomial, RealRoot, RootInterval};
use crate::rational::{int, to_string, two_pow, Rational};
use crate::symfuncs::profile_from_coefficients;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundOptions {
    /// Also enumerate every leaf and compare against the best one.
    pub exhaustive_check: bool,
    /// Refuse exhaustive checks over more leaves than this.
    pub leaf_cap: u64,
}

impl Default for RoundOptions {
    fn default() -> Self {
        RoundOptions { exhaustive_check: false, leaf_cap: 1 << 16 }
    }
}

/// One group step: which extension won and how tightly it was estimated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLog {
    pub first_level: usize,
    pub levels: usize,
    pub candidates: usize,
    pub nonzero: usize,
    /// Coefficients requested per candidate.
    pub k: usize,
    pub chosen: Vec<usize>,
    #[serde(with = "crate::rational::serde_rational")]
    pub estimate: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub estimate_upper: Rational,
    /// `λ_max(chosen) ≤ factor · min over candidates of λ_max`.
    #[serde(with = "crate::rational::serde_rational")]
    pub factor: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveCheck {
    pub leaves: u64,
    pub nonzero_leaves: u64,
    pub best_leaf: Vec<usize>,
    pub best_lambda_max: RootInterval,
    /// `λ_max(f_∅) ≥ min over leaves of λ_max`.
    pub root_dominates_best_leaf: bool,
    /// The rounded leaf attains the minimum.
    pub chosen_is_optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundResult {
    pub assignment: Vec<usize>,
    #[serde(with = "crate::rational::serde_rational")]
    pub epsilon: Rational,
    pub group_size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: Rational,
    /// Product of the step factors: the chosen leaf has
    /// `λ_max ≤ certified_bound · λ_max(f_∅)` for an interlacing family.
    #[serde(with = "crate::rational::serde_rational")]
    pub certified_bound: Rational,
    /// `certified_bound ≤ 1 + ε`.
    pub within_epsilon: bool,
    pub root_lambda_max: RootInterval,
    pub leaf_lambda_max: RootInterval,
    /// `λ_max(leaf) ≤ (1 + ε) λ_max(f_∅)`, decided exactly from the two
    /// polynomials without trusting the interlacing property.
    pub leaf_certified: bool,
    pub steps: Vec<StepLog>,
    pub exhaustive: Option<ExhaustiveCheck>,
}

/// Smallest `M` with `M³ ≥ m`.
pub fn group_size(m: usize) -> usize {
    (1..).find(|&g: &usize| g.pow(3) >= m).unwrap()
}

/// `min(n, ⌈20 · ln n · M · √(2/ε)⌉)`, at least 1, with `ln` and `√`
/// rounded up.
pub fn coefficient_budget(n: usize, group: usize, epsilon: &Rational) -> usize {
    let root = sqrt_bounds(&(int(2) / epsilon), 32).expect("positive").hi;
    let value = int(20) * ln_upper(n) * int(group as i64) * root;
    let k = value.ceil().to_integer();
    let k: usize = k.try_into().unwrap_or(usize::MAX);
    k.clamp(1, n.max(1))
}

fn largest(p: &ExactPolynomial) -> Result<RealRoot> {
    largest_root(p)?.ok_or(Error::NotRealRooted { real: 0, degree: p.degree().unwrap_or(0) })
}

/// `λ_max(a) ≤ c · λ_max(b)`, exactly.
fn at_most_scaled(a: &ExactPolynomial, b: &ExactPolynomial, c: &Rational) -> Result<bool> {
    let mut la = largest(a)?;
    let mut lb = largest(&b.shift_scale(c, &Rational::zero())?)?;
    Ok(la.cmp(&mut lb) != Ordering::Greater)
}

struct Estimate {
    lo: Rational,
    hi: Rational,
    alpha: Rational,
}

/// Bracket `λ_max` of `f_ext`: exact isolation when all coefficients are
/// available, the top-`k` estimator otherwise.
fn estimate(oracle: &dyn FamilyOracle, ext: &[usize], k: usize, delta: &Rational) -> Result<Option<Estimate>> {
    let n = oracle.degree();
    let Some(top) = oracle.top_coefficients(ext, k)? else {
        return Ok(None);
    };
    if k == n {
        let p = ExactPolynomial::new(top.into_iter().rev().collect());
        let mut r = largest(&p)?;
        let limit = Rational::one() + delta;
        while !r.is_exact() && (!r.lo().is_positive() || r.hi() > &(r.lo() * &limit)) {
            r.bisect();
        }
        let lo = if r.lo().is_negative() { Rational::zero() } else { r.lo().clone() };
        return Ok(Some(Estimate { lo, hi: r.hi().clone(), alpha: Rational::one() }));
    }
    let lead = top[0].clone();
    let monic: Vec<Rational> = top[1..].iter().map(|c| c / &lead).collect();
    let result = approx_max_root(&profile_from_coefficients(n, &monic)?)?;
    Ok(Some(Estimate { lo: result.estimate, hi: result.estimate_upper, alpha: result.factor }))
}

fn step_factor(e: &Estimate) -> Option<Rational> {
    if e.hi.is_zero() {
        return Some(Rational::one());
    }
    if e.lo.is_zero() {
        return None;
    }
    Some(&e.alpha * &e.hi / &e.lo)
}

/// Every assignment of the levels `first..first+count` in lexicographic order.
fn extensions(spec: &FamilySpec, first: usize, count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for level in first..first + count {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..spec.choice_counts[level]).map(move |c| {
                    let mut next = e.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

fn add_into(acc: &mut [Rational], c: &[Rational]) {
    for (a, x) in acc.iter_mut().zip(c) {
        *a += x;
    }
}

/// Round the family greedily: each step fixes the next `M = ⌈m^{1/3}⌉`
/// levels to the extension with the smallest estimated largest root.
pub fn round_family(oracle: &dyn FamilyOracle, epsilon: &Rational, options: &RoundOptions) -> Result<RoundResult> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let spec = FamilySpec::of(oracle)?;
    let (n, m) = (spec.n, spec.m());
    let root_poly = full_polynomial(oracle, &[])?
        .ok_or_else(|| Error::Precondition("the family is identically zero".into()))?;
    let group = group_size(m);
    let delta = epsilon / int(2 * (group * group) as i64);
    let step_limit = Rational::one() + &delta;
    let base_k = coefficient_budget(n, group, epsilon);

    let mut assignment: Vec<usize> = Vec::with_capacity(m);
    let mut steps = Vec::new();
    let mut certified_bound = Rational::one();
    while assignment.len() < m {
        let first = assignment.len();
        let count = group.min(m - first);
        let exts = extensions(&spec, first, count);
        let mut k = base_k;
        loop {
            let parent = oracle
                .top_coefficients(&assignment, k)?
                .ok_or_else(|| Error::OracleInconsistent(format!("prefix {assignment:?} vanished")))?;
            let candidates: Vec<(Vec<usize>, Option<Vec<Rational>>)> = exts
                .par_iter()
                .map(|e| {
                    let mut full = assignment.clone();
                    full.extend_from_slice(e);
                    oracle.top_coefficients(&full, k).map(|c| (full, c))
                })
                .collect::<Result<_>>()?;
            let mut sum = vec![Rational::zero(); k + 1];
            for c in candidates.iter().filter_map(|(_, c)| c.as_ref()) {
                add_into(&mut sum, c);
            }
            if sum != parent {
                return Err(Error::OracleInconsistent(format!(
                    "extensions of {assignment:?} sum to [{}] instead of [{}]",
                    sum.iter().map(to_string).collect::<Vec<_>>().join(", "),
                    parent.iter().map(to_string).collect::<Vec<_>>().join(", ")
                )));
            }
            let estimates: Vec<(Vec<usize>, Option<Estimate>)> = candidates
                .par_iter()
                .map(|(full, _)| estimate(oracle, full, k, &delta).map(|e| (full.clone(), e)))
                .collect::<Result<_>>()?;
            let mut best: Option<(&Vec<usize>, &Estimate)> = None;
            for (full, e) in &estimates {
                if let Some(e) = e {
                    if best.map_or(true, |(_, b)| e.lo < b.lo) {
                        best = Some((full, e));
                    }
                }
            }
            let (chosen, e) = best.ok_or_else(|| {
                Error::OracleInconsistent(format!("every extension of {assignment:?} vanished"))
            })?;
            let factor = step_factor(e);
            let tight = factor.as_ref().is_some_and(|f| f <= &step_limit);
            if !tight && k < n {
                k = (2 * k).min(n);
                continue;
            }
            let factor = factor.ok_or_else(|| {
                Error::Precondition("a candidate estimate of zero cannot certify a positive root".into())
            })?;
            certified_bound *= &factor;
            steps.push(StepLog {
                first_level: first,
                levels: count,
                candidates: exts.len(),
                nonzero: estimates.iter().filter(|(_, e)| e.is_some()).count(),
                k,
                chosen: chosen[first..].to_vec(),
                estimate: e.lo.clone(),
                estimate_upper: e.hi.clone(),
                factor,
            });
            assignment = chosen.clone();
            break;
        }
    }

    let leaf_poly = oracle
        .leaf_polynomial(&assignment)?
        .ok_or_else(|| Error::OracleInconsistent("chosen leaf vanished".into()))?;
    let one_plus = Rational::one() + epsilon;
    let leaf_certified = at_most_scaled(&leaf_poly, &root_poly, &one_plus)?;
    let width = two_pow(-40);
    let mut root_max = largest(&root_poly)?;
    let mut leaf_max = largest(&leaf_poly)?;
    let exhaustive = if options.exhaustive_check {
        Some(exhaustive_check(oracle, &spec, &mut root_max, &mut leaf_max, options.leaf_cap)?)
    } else {
        None
    };
    root_max.refine_to_width(&width);
    leaf_max.refine_to_width(&width);
    Ok(RoundResult {
        within_epsilon: certified_bound <= one_plus,
        assignment,
        epsilon: epsilon.clone(),
        group_size: group,
        delta,
        certified_bound,
        root_lambda_max: root_max.as_root_interval(),
        leaf_lambda_max: leaf_max.as_root_interval(),
        leaf_certified,
        steps,
        exhaustive,
    })
}

fn exhaustive_check(
    oracle: &dyn FamilyOracle,
    spec: &FamilySpec,
    root_max: &mut RealRoot,
    chosen_max: &mut RealRoot,
    cap: u64,
) -> Result<ExhaustiveCheck> {
    let leaves = spec.leaf_count();
    if leaves > cap {
        return Err(Error::ExhaustionCap { edges: leaves as usize, cap: cap as usize });
    }
    let all = extensions(spec, 0, spec.m());
    let maxima: Vec<(Vec<usize>, RealRoot)> = all
        .par_iter()
        .map(|leaf| {
            Ok(match oracle.leaf_polynomial(leaf)? {
                Some(p) => Some((leaf.clone(), largest(&p)?)),
                None => None,
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let nonzero = maxima.len() as u64;
    let mut iter = maxima.into_iter();
    let (mut best_leaf, mut best) =
        iter.next().ok_or_else(|| Error::OracleInconsistent("every leaf vanished".into()))?;
    for (leaf, mut r) in iter {
        if r.cmp(&mut best) == Ordering::Less {
            best = r;
            best_leaf = leaf;
        }
    }
    let root_dominates_best_leaf = best.cmp(root_max) != Ordering::Greater;
    let chosen_is_optimal = chosen_max.cmp(&mut best) == Ordering::Equal;
    best.refine_to_width(&two_pow(-40));
    Ok(ExhaustiveCheck {
        leaves,
        nonzero_leaves: nonzero,
        best_leaf,
        best_lambda_max: best.as_root_interval(),
        root_dominates_best_leaf,
        chosen_is_optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interlacing::{random_ks_instance, KSInstance, KSOracle, Outcome};
    use crate::rational::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_sizes() {
        assert_eq!(group_size(1), 1);
        assert_eq!(group_size(8), 2);
        assert_eq!(group_size(9), 3);
        assert_eq!(group_size(27), 3);
        assert_eq!(coefficient_budget(4, 2, &rat(1, 2)), 4);
        assert_eq!(coefficient_budget(1, 1, &rat(1, 2)), 1);
        assert_eq!(coefficient_budget(100_000, 1, &int(1_000_000)), 100_000.min(coefficient_budget(100_000, 1, &int(1_000_000))));
    }

    #[test]
    fn single_level_picks_smaller_root() {
        let support = vec![
            Outcome { vector: vec![int(2), int(0)], prob: rat(1, 2) },
            Outcome { vector: vec![int(1), int(0)], prob: rat(1, 2) },
        ];
        let oracle = KSOracle::new(KSInstance::new(2, vec![support]).unwrap());
        let r = round_family(&oracle, &rat(1, 2), &RoundOptions { exhaustive_check: true, ..Default::default() }).unwrap();
        assert_eq!(r.assignment, vec![1]);
        assert_eq!(r.leaf_lambda_max.lo, int(1));
        assert!(r.leaf_certified && r.within_epsilon);
        assert!(r.exhaustive.unwrap().chosen_is_optimal);
    }

    #[test]
    fn identical_leaves() {
        let support = vec![
            Outcome { vector: vec![int(1), int(1)], prob: rat(1, 3) },
            Outcome { vector: vec![int(1), int(1)], prob: rat(2, 3) },
        ];
        let oracle = KSOracle::new(KSInstance::new(2, vec![support.clone(), support]).unwrap());
        let r = round_family(&oracle, &rat(1, 8), &RoundOptions::default()).unwrap();
        assert_eq!(r.assignment, vec![0, 0]);
        assert_eq!(r.certified_bound, int(1));
        assert_eq!(r.leaf_lambda_max, r.root_lambda_max);
    }

    #[test]
    fn random_instance_with_exhaustive_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let inst = random_ks_instance(&mut rng, 8, 4, 2);
        let oracle = KSOracle::new(inst);
        let r = round_family(&oracle, &rat(1, 2), &RoundOptions { exhaustive_check: true, ..Default::default() }).unwrap();
        assert_eq!(r.group_size, 2);
        assert_eq!(r.steps.len(), 4);
        assert!(r.within_epsilon && r.leaf_certified);
        assert!(r.exhaustive.unwrap().root_dominates_best_leaf);
    }

    #[test]
    fn inconsistent_oracle_is_reported() {
        struct Broken;
        impl FamilyOracle for Broken {
            fn degree(&self) -> usize {
                1
            }
            fn depth(&self) -> usize {
                1
            }
            fn choice_count(&self, _: usize) -> usize {
                2
            }
            fn top_coefficients(&self, _: &[usize], k: usize) -> Result<Option<Vec<Rational>>> {
                // Every node, root included, claims x − 1.
                Ok(Some([int(1), int(-1)][..=k].to_vec()))
            }
        }
        assert!(matches!(
            round_family(&Broken, &rat(1, 2), &RoundOptions::default()),
            Err(Error::OracleInconsistent(_))
        ));
        assert!(round_family(&Broken, &int(0), &RoundOptions::default()).is_err());
    }
}
