//! Interlacing families given by a top-coefficient oracle, and greedy
//! rounding of such families to a leaf with small largest root.

mod ks;
mod round;
mod sr;

pub use ks::{expected_char_poly, random_ks_instance, KSInstance, KSOracle, Outcome};
pub use round::{round_family, ExhaustiveCheck, RoundOptions, RoundResult, StepLog};
pub use sr::{SRInstance, SROracle};

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{sorted_roots, ExactPolynomial, RealRoot, SquareMatrixQ};
use crate::rational::Rational;

/// Access to the polynomials `f_{s_1..s_ℓ}` of a depth-`m` family, each the
/// sum of its extensions.
pub trait FamilyOracle: Sync {
    /// Common degree `n` of every nonzero member.
    fn degree(&self) -> usize;
    /// Number of levels `m`.
    fn depth(&self) -> usize;
    /// `|S_{level+1}|`, for `level < m`.
    fn choice_count(&self, level: usize) -> usize;
    /// Coefficients of `x^n, x^{n−1}, …, x^{n−k}` of `f_prefix`, or `None`
    /// when `f_prefix` is identically zero.
    fn top_coefficients(&self, prefix: &[usize], k: usize) -> Result<Option<Vec<Rational>>>;
    /// `f_leaf` for a complete assignment. Oracles with a cheaper direct
    /// formula at the leaves can override this.
    fn leaf_polynomial(&self, leaf: &[usize]) -> Result<Option<ExactPolynomial>> {
        full_polynomial_dyn(self, leaf)
    }
}

/// The shape of a family: `m` levels with `|S_i|` choices each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub n: usize,
    pub choice_counts: Vec<usize>,
}

impl FamilySpec {
    pub fn of(oracle: &dyn FamilyOracle) -> Result<Self> {
        let choice_counts: Vec<usize> = (0..oracle.depth()).map(|l| oracle.choice_count(l)).collect();
        if let Some(level) = choice_counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidArgument(format!("choice set {} is empty", level + 1)));
        }
        Ok(FamilySpec { n: oracle.degree(), choice_counts })
    }

    pub fn m(&self) -> usize {
        self.choice_counts.len()
    }

    /// Number of leaves `Π |S_i|`, saturating.
    pub fn leaf_count(&self) -> u64 {
        self.choice_counts.iter().fold(1u64, |acc, &c| acc.saturating_mul(c as u64))
    }
}

/// Full polynomial `f_prefix`, or `None` when it vanishes.
pub fn full_polynomial(oracle: &dyn FamilyOracle, prefix: &[usize]) -> Result<Option<ExactPolynomial>> {
    full_polynomial_dyn(oracle, prefix)
}

fn full_polynomial_dyn<O: FamilyOracle + ?Sized>(oracle: &O, prefix: &[usize]) -> Result<Option<ExactPolynomial>> {
    let n = oracle.degree();
    Ok(oracle
        .top_coefficients(prefix, n)?
        .map(|c| ExactPolynomial::new(c.into_iter().rev().collect())))
}

/// Check `Σ_t f_{prefix, t} = f_prefix` on the top `k + 1` coefficients.
pub fn check_refinement(oracle: &dyn FamilyOracle, prefix: &[usize], k: usize) -> Result<bool> {
    let level = prefix.len();
    if level >= oracle.depth() {
        return Err(Error::OutOfRange { index: level, max: oracle.depth() });
    }
    let parent = oracle.top_coefficients(prefix, k)?.unwrap_or_else(|| vec![Rational::zero(); k + 1]);
    let mut sum = vec![Rational::zero(); k + 1];
    let mut child = prefix.to_vec();
    child.push(0);
    for t in 0..oracle.choice_count(level) {
        child[level] = t;
        if let Some(c) = oracle.top_coefficients(&child, k)? {
            for (acc, x) in sum.iter_mut().zip(c) {
                *acc += x;
            }
        }
    }
    Ok(sum == parent)
}

/// Principal minor of a Gram matrix `det(⟨v_a, v_b⟩)` for the listed vectors.
pub(crate) fn gram_det(vectors: &[&[Rational]]) -> Rational {
    if vectors.is_empty() {
        return Rational::from_integer(1.into());
    }
    let rows = vectors
        .iter()
        .map(|a| {
            vectors
                .iter()
                .map(|b| a.iter().zip(b.iter()).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    SquareMatrixQ::new(rows).expect("square by construction").det()
}

/// Whether polynomials of one degree with positive leading coefficients have
/// a common interlacing: with roots sorted increasingly, the `j`-th root of
/// every member must lie at or below the `(j+1)`-th root of every member.
/// All comparisons are exact.
pub fn check_common_interlacing(polys: &[ExactPolynomial]) -> Result<bool> {
    let Some(first) = polys.first() else {
        return Ok(true);
    };
    let d = first.degree().ok_or(Error::ZeroPolynomial)?;
    for p in polys {
        if p.degree() != Some(d) {
            return Err(Error::InvalidArgument("polynomials must share one degree".into()));
        }
        if !p.leading().is_some_and(|c| c.is_positive()) {
            return Err(Error::InvalidArgument("leading coefficients must be positive".into()));
        }
    }
    let mut roots: Vec<Vec<RealRoot>> = Vec::with_capacity(polys.len());
    for p in polys {
        let r = sorted_roots(p)?;
        if r.len() != d {
            return Err(Error::NotRealRooted { real: r.len(), degree: d });
        }
        roots.push(r);
    }
    for j in 0..d.saturating_sub(1) {
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                if a == b {
                    continue;
                }
                let mut lower = roots[a][j].clone();
                let mut upper = roots[b][j + 1].clone();
                if lower.cmp(&mut upper) == Ordering::Greater {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
