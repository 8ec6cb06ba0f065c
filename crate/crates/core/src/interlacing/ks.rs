//! Expected characteristic polynomials of sums of independent random
//! rank-one matrices `Σ r_i r_iᵀ`, one level per vector.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{gram_det, FamilyOracle};
use crate::error::{Error, Result};
use crate::poly::{ExactPolynomial, SquareMatrixQ};
use crate::rational::{rat, Rational};

/// One possible value of a random vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub vector: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational")]
    pub prob: Rational,
}

/// Independent random vectors `r_1..r_m ∈ ℚⁿ` with explicit finite supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawKS")]
pub struct KSInstance {
    pub n: usize,
    pub supports: Vec<Vec<Outcome>>,
}

#[derive(Deserialize)]
struct RawKS {
    n: usize,
    supports: Vec<Vec<Outcome>>,
}

impl TryFrom<RawKS> for KSInstance {
    type Error = Error;

    fn try_from(raw: RawKS) -> Result<Self> {
        KSInstance::new(raw.n, raw.supports)
    }
}

impl KSInstance {
    pub fn new(n: usize, supports: Vec<Vec<Outcome>>) -> Result<Self> {
        for (i, support) in supports.iter().enumerate() {
            if support.is_empty() {
                return Err(Error::InvalidArgument(format!("support {} is empty", i + 1)));
            }
            if let Some(o) = support.iter().find(|o| o.vector.len() != n) {
                return Err(Error::InvalidArgument(format!(
                    "support {} has a vector of length {} in dimension {n}",
                    i + 1,
                    o.vector.len()
                )));
            }
            if support.iter().any(|o| o.prob.is_negative()) {
                return Err(Error::InvalidArgument(format!("support {} has a negative probability", i + 1)));
            }
            let total: Rational = support.iter().map(|o| &o.prob).sum();
            if !total.is_one() {
                return Err(Error::InvalidArgument(format!(
                    "probabilities of support {} sum to {}",
                    i + 1,
                    crate::rational::to_string(&total)
                )));
            }
        }
        Ok(KSInstance { n, supports })
    }

    pub fn m(&self) -> usize {
        self.supports.len()
    }

    /// Total number of joint outcomes, saturating.
    pub fn outcome_count(&self) -> u64 {
        self.supports.iter().fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64))
    }

    fn check_prefix(&self, prefix: &[usize]) -> Result<()> {
        if prefix.len() > self.m() {
            return Err(Error::OutOfRange { index: prefix.len(), max: self.m() });
        }
        for (i, &c) in prefix.iter().enumerate() {
            if c >= self.supports[i].len() {
                return Err(Error::OutOfRange { index: c, max: self.supports[i].len() - 1 });
            }
        }
        Ok(())
    }

    fn prefix_weight(&self, prefix: &[usize]) -> Rational {
        prefix.iter().enumerate().map(|(i, &c)| &self.supports[i][c].prob).product()
    }
}

/// The family oracle of a [`KSInstance`]: `f_{s_1..s_ℓ}` is the expected
/// characteristic polynomial restricted to `r_i = s_i` for `i ≤ ℓ`, weighted
/// by the probability of that event, so siblings sum to their parent.
#[derive(Clone, Debug)]
pub struct KSOracle {
    inst: KSInstance,
}

impl KSOracle {
    pub fn new(inst: KSInstance) -> Self {
        KSOracle { inst }
    }

    pub fn instance(&self) -> &KSInstance {
        &self.inst
    }

    /// Top coefficients of the conditional polynomial `E[det(xI − Σ r_i r_iᵀ) | prefix]`,
    /// which is monic.
    pub fn conditional_top_coefficients(&self, prefix: &[usize], k: usize) -> Result<Option<Vec<Rational>>> {
        let weight = self.inst.prefix_weight(prefix);
        Ok(self
            .top_coefficients(prefix, k)?
            .map(|c| c.into_iter().map(|x| x / &weight).collect()))
    }

    /// `E[det Gram(r_T)]` over the unfixed members of `T`.
    fn expected_gram(&self, prefix: &[usize], subset: &[usize]) -> Rational {
        let mut total = Rational::zero();
        let mut chosen: Vec<&[Rational]> = Vec::with_capacity(subset.len());
        self.walk(prefix, subset, Rational::one(), &mut chosen, &mut total);
        total
    }

    fn walk<'a>(
        &'a self,
        prefix: &[usize],
        rest: &[usize],
        prob: Rational,
        chosen: &mut Vec<&'a [Rational]>,
        total: &mut Rational,
    ) {
        let Some((&i, tail)) = rest.split_first() else {
            *total += prob * gram_det(chosen);
            return;
        };
        if let Some(&c) = prefix.get(i) {
            chosen.push(&self.inst.supports[i][c].vector);
            self.walk(prefix, tail, prob, chosen, total);
            chosen.pop();
            return;
        }
        for o in &self.inst.supports[i] {
            if o.prob.is_zero() {
                continue;
            }
            chosen.push(&o.vector);
            self.walk(prefix, tail, &prob * &o.prob, chosen, total);
            chosen.pop();
        }
    }
}

/// Calls `f` on every `j`-subset of `0..m` in lexicographic order.
pub(crate) fn for_each_subset(m: usize, j: usize, mut f: impl FnMut(&[usize])) {
    if j > m {
        return;
    }
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..j).rev().find(|&p| idx[p] < m - j + p) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..j {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

impl FamilyOracle for KSOracle {
    fn degree(&self) -> usize {
        self.inst.n
    }

    fn depth(&self) -> usize {
        self.inst.m()
    }

    fn choice_count(&self, level: usize) -> usize {
        self.inst.supports[level].len()
    }

    fn top_coefficients(&self, prefix: &[usize], k: usize) -> Result<Option<Vec<Rational>>> {
        self.inst.check_prefix(prefix)?;
        if k > self.inst.n {
            return Err(Error::OutOfRange { index: k, max: self.inst.n });
        }
        let weight = self.inst.prefix_weight(prefix);
        if weight.is_zero() {
            return Ok(None);
        }
        let mut out = vec![weight.clone()];
        for j in 1..=k {
            // Cauchy–Binet: σ_j(Σ r_i r_iᵀ) = Σ_{|T| = j} det Gram(r_T).
            let mut sum = Rational::zero();
            for_each_subset(self.inst.m(), j, |t| sum += self.expected_gram(prefix, t));
            let c = sum * &weight;
            out.push(if j % 2 == 1 { -c } else { c });
        }
        Ok(Some(out))
    }

    fn leaf_polynomial(&self, leaf: &[usize]) -> Result<Option<ExactPolynomial>> {
        if leaf.len() != self.inst.m() {
            return Err(Error::InvalidArgument(format!("leaf needs {} choices, got {}", self.inst.m(), leaf.len())));
        }
        self.inst.check_prefix(leaf)?;
        if self.inst.prefix_weight(leaf).is_zero() {
            return Ok(None);
        }
        expected_char_poly(&self.inst, leaf).map(Some)
    }
}

/// `f_prefix` by brute force: the probability-weighted sum of
/// `det(xI − Σ r_i r_iᵀ)` over every joint outcome consistent with `prefix`.
pub fn expected_char_poly(inst: &KSInstance, prefix: &[usize]) -> Result<ExactPolynomial> {
    inst.check_prefix(prefix)?;
    let n = inst.n;
    let mut total = ExactPolynomial::zero();
    let mut choice = vec![0usize; inst.m()];
    choice[..prefix.len()].copy_from_slice(prefix);
    loop {
        let weight: Rational = choice.iter().enumerate().map(|(i, &c)| &inst.supports[i][c].prob).product();
        if !weight.is_zero() {
            let mut rows = vec![vec![Rational::zero(); n]; n];
            for (i, &c) in choice.iter().enumerate() {
                let v = &inst.supports[i][c].vector;
                for a in 0..n {
                    for b in 0..n {
                        rows[a][b] += &v[a] * &v[b];
                    }
                }
            }
            let cp = SquareMatrixQ::new(rows)?.char_poly();
            total = &total + &cp.scale(&weight);
        }
        // Odometer over the unfixed levels.
        let mut level = inst.m();
        loop {
            if level == prefix.len() {
                return Ok(total);
            }
            level -= 1;
            choice[level] += 1;
            if choice[level] < inst.supports[level].len() {
                break;
            }
            choice[level] = 0;
        }
    }
}

/// A seeded random instance: `m` vectors in `ℚⁿ`, supports of size
/// `1..=max_support`, entries in `{0, ±1/2, ±1, ±3/2, ±2}` and probabilities
/// proportional to integers in `1..=4`.
pub fn random_ks_instance(rng: &mut impl Rng, m: usize, n: usize, max_support: usize) -> KSInstance {
    let supports = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_support.max(1));
            let weights: Vec<i64> = (0..size).map(|_| rng.gen_range(1..=4)).collect();
            let total: i64 = weights.iter().sum();
            weights
                .iter()
                .map(|&w| Outcome {
                    vector: (0..n).map(|_| rat(rng.gen_range(-4..=4), 2)).collect(),
                    prob: rat(w, total),
                })
                .collect()
        })
        .collect();
    KSInstance::new(n, supports).expect("generated supports are valid")
}
