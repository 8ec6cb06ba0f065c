//! Families from a distribution over subsets of `[m]` (given as a dense
//! table), with vectors `v_1..v_m`: level `i` decides whether `i ∈ S`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{gram_det, FamilyOracle};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest ground set the dense table is allowed to describe.
pub const MAX_GROUND_SET: usize = 20;

/// `μ` over subsets of `[m]` (bit `i` of the key is element `i`) and vectors
/// `v_i ∈ ℚⁿ`. Subsets missing from the table have probability zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSR", into = "RawSR")]
pub struct SRInstance {
    pub n: usize,
    pub m: usize,
    pub table: Vec<Rational>,
    pub vectors: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct RawSR {
    n: usize,
    m: usize,
    table: BTreeMap<u32, String>,
    vectors: Vec<Vec<String>>,
}

impl TryFrom<RawSR> for SRInstance {
    type Error = Error;

    fn try_from(raw: RawSR) -> Result<Self> {
        if raw.m > MAX_GROUND_SET {
            return Err(Error::InvalidArgument(format!("m = {} exceeds {MAX_GROUND_SET}", raw.m)));
        }
        let mut table = vec![Rational::zero(); 1 << raw.m];
        for (mask, value) in raw.table {
            let slot = table
                .get_mut(mask as usize)
                .ok_or_else(|| Error::InvalidArgument(format!("subset mask {mask} outside 2^{}", raw.m)))?;
            *slot = crate::rational::parse(&value)?;
        }
        let vectors = raw
            .vectors
            .iter()
            .map(|v| v.iter().map(|s| crate::rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SRInstance::new(raw.n, raw.m, table, vectors)
    }
}

impl From<SRInstance> for RawSR {
    fn from(inst: SRInstance) -> Self {
        RawSR {
            n: inst.n,
            m: inst.m,
            table: inst
                .table
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(mask, p)| (mask as u32, crate::rational::to_string(p)))
                .collect(),
            vectors: inst
                .vectors
                .iter()
                .map(|v| v.iter().map(crate::rational::to_string).collect())
                .collect(),
        }
    }
}

impl SRInstance {
    pub fn new(n: usize, m: usize, table: Vec<Rational>, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if m > MAX_GROUND_SET {
            return Err(Error::InvalidArgument(format!("m = {m} exceeds {MAX_GROUND_SET}")));
        }
        if table.len() != 1 << m {
            return Err(Error::InvalidArgument(format!("table has {} entries, expected 2^{m}", table.len())));
        }
        if table.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidArgument("negative probability in table".into()));
        }
        let total: Rational = table.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "table sums to {}",
                crate::rational::to_string(&total)
            )));
        }
        if vectors.len() != m || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument(format!("need {m} vectors of length {n}")));
        }
        Ok(SRInstance { n, m, table, vectors })
    }

    /// The common size of every support set, if there is one.
    pub fn homogeneous_rank(&self) -> Option<usize> {
        let mut sizes = self
            .table
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(mask, _)| mask.count_ones() as usize);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

#[derive(Clone, Debug)]
pub struct SROracle {
    inst: SRInstance,
}

impl SROracle {
    pub fn new(inst: SRInstance) -> Self {
        SROracle { inst }
    }

    pub fn instance(&self) -> &SRInstance {
        &self.inst
    }

    /// `P[T ⊆ S and S agrees with the prefix]` for every `T` with `|T| ≤ k`
    /// that has nonzero probability, read off the restricted table.
    pub fn inclusion_probabilities(&self, prefix: &[usize], k: usize) -> Result<BTreeMap<u32, Rational>> {
        let m = self.inst.m;
        if prefix.len() > m {
            return Err(Error::OutOfRange { index: prefix.len(), max: m });
        }
        let (mut fixed, mut inside) = (0u32, 0u32);
        for (i, &c) in prefix.iter().enumerate() {
            if c > 1 {
                return Err(Error::OutOfRange { index: c, max: 1 });
            }
            fixed |= 1 << i;
            if c == 1 {
                inside |= 1 << i;
            }
        }
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        for (mask, p) in self.inst.table.iter().enumerate() {
            let mask = mask as u32;
            if p.is_zero() || mask & fixed != inside {
                continue;
            }
            // Every subset of this support set of size at most k.
            let mut sub = mask;
            loop {
                if sub.count_ones() as usize <= k {
                    *out.entry(sub).or_insert_with(Rational::zero) += p;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        Ok(out)
    }
}

impl FamilyOracle for SROracle {
    fn degree(&self) -> usize {
        self.inst.n
    }

    fn depth(&self) -> usize {
        self.inst.m
    }

    fn choice_count(&self, _level: usize) -> usize {
        2
    }

    fn top_coefficients(&self, prefix: &[usize], k: usize) -> Result<Option<Vec<Rational>>> {
        if k > self.inst.n {
            return Err(Error::OutOfRange { index: k, max: self.inst.n });
        }
        let probs = self.inclusion_probabilities(prefix, k)?;
        let Some(total) = probs.get(&0).cloned() else {
            return Ok(None);
        };
        let mut out = vec![Rational::zero(); k + 1];
        out[0] = total;
        for (&t, p) in probs.iter().filter(|(&t, _)| t != 0) {
            let j = t.count_ones() as usize;
            let members: Vec<&[Rational]> = (0..self.inst.m)
                .filter(|i| t >> i & 1 == 1)
                .map(|i| self.inst.vectors[i].as_slice())
                .collect();
            let term = p * gram_det(&members);
            if j % 2 == 1 {
                out[j] -= term;
            } else {
                out[j] += term;
            }
        }
        Ok(Some(out))
    }
}
