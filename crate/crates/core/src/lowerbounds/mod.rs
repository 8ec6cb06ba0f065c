//! Pairs of real-rooted polynomials whose leading coefficients agree while
//! their largest roots differ by a certified factor.

mod noisy;
mod pairs;

pub use noisy::{noisy_pair, NoiseCertificate};
pub use pairs::{boosted_pair, girth_pair, weak_pair};

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Signing;
use crate::maxroot::{approx_max_root, ApproxResult};
use crate::poly::{isolate, largest_root, ExactPolynomial, RealRoot, RootInterval};
use crate::rational::{two_pow, Rational};
use crate::symfuncs::profile_from_polynomial;

/// Relative precision used when a ratio of irrational roots is bounded.
const RATIO_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Weak,
    Girth,
    Boosted,
    Noisy,
}

/// Construction-specific data carried alongside a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairDetails {
    Weak {
        n: usize,
    },
    Girth {
        graph_girth: usize,
        power: usize,
        signing: Signing,
        max_degree: usize,
        /// `(2|E|/n)^t / (4(deg_max − 1))^{t/2}`, when `deg_max ≥ 2`.
        #[serde(with = "crate::rational::serde_option_rational")]
        degree_ratio_bound: Option<Rational>,
    },
    Boosted {
        t: usize,
        base_provenance: Provenance,
        base_k: usize,
        /// Base roots were mapped by `x ↦ scale·x + shift` before composing.
        #[serde(with = "crate::rational::serde_rational")]
        scale: Rational,
        #[serde(with = "crate::rational::serde_rational")]
        shift: Rational,
        /// Whether the larger base root landed exactly on 1, which is what
        /// the closed-form ratio needs.
        exact_rescale: bool,
    },
    Noisy(NoiseCertificate),
}

/// Monic `p`, `q` of equal degree whose coefficients of `x^{n−1}..x^{n−k}`
/// agree, with `ratio_lower ≤ λ_max(q) / λ_max(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundPair {
    pub p: ExactPolynomial,
    pub q: ExactPolynomial,
    pub k: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub ratio_lower: Rational,
    pub provenance: Provenance,
    pub certificate: PairDetails,
}

impl LowerBoundPair {
    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }
}

/// Number of leading coefficients (below the top one) that agree, counted
/// from `x^{n−1}` downwards until the first difference.
pub fn matched_leading(p: &ExactPolynomial, q: &ExactPolynomial) -> usize {
    let n = p.degree().unwrap_or(0);
    if q.degree() != p.degree() {
        return 0;
    }
    (1..=n).take_while(|&i| p.coeff(n - i) == q.coeff(n - i)).count()
}

fn largest(p: &ExactPolynomial) -> Result<RealRoot> {
    largest_root(p)?.ok_or(Error::NotRealRooted { real: 0, degree: p.degree().unwrap_or(0) })
}

/// Decide `λ_max(q) ≥ r·λ_max(p)` exactly, for polynomials with nonnegative
/// largest roots.
pub fn ratio_at_least(p: &ExactPolynomial, q: &ExactPolynomial, r: &Rational) -> Result<bool> {
    let mut lq = largest(q)?;
    if !r.is_positive() {
        return Ok(lq.cmp_rational(&Rational::zero()) != Ordering::Less);
    }
    // Interval refinement settles every case but near-equality cheaply.
    let mut lp = largest(p)?;
    let cutoff = two_pow(-96);
    loop {
        if lq.lo() >= &(r * lp.hi()) {
            return Ok(true);
        }
        if lq.hi() < &(r * lp.lo()) {
            return Ok(false);
        }
        let (wq, wp) = (lq.width(), lp.width() * r);
        if wq.max(wp) < &cutoff * (lq.hi().abs() + Rational::one()) {
            break;
        }
        if lq.width() >= lp.width() * r {
            lq.bisect();
        } else {
            lp.bisect();
        }
    }
    let mut scaled = largest(&p.shift_scale(r, &Rational::zero())?)?;
    Ok(lq.cmp(&mut scaled) != Ordering::Less)
}

/// A rational lower bound on `λ_max(q) / λ_max(p)`, exact when both roots
/// are rational.
pub fn certified_ratio(p: &ExactPolynomial, q: &ExactPolynomial) -> Result<Rational> {
    let mut lp = largest(p)?;
    let mut lq = largest(q)?;
    crate::poly::certified_ratio_lower(&mut lq, &mut lp, RATIO_BITS)
}

/// Outcome of [`verify_pair`]: every check passed, with the evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub degree: usize,
    pub k: usize,
    /// Leading coefficients that actually agree (at least `k`).
    pub matched_leading: usize,
    pub lambda_max_p: RootInterval,
    pub lambda_max_q: RootInterval,
    #[serde(with = "crate::rational::serde_rational")]
    pub ratio_lower: Rational,
    pub checks: Vec<String>,
}

/// Re-derive every invariant of `pair` from its polynomials, failing with a
/// [`Error::Certificate`] at the first violation.
pub fn verify_pair(pair: &LowerBoundPair) -> Result<PairReport> {
    let mut checks = Vec::new();
    let (p, q) = (&pair.p, &pair.q);
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if q.degree() != Some(n) {
        return Err(Error::certificate(
            "degree",
            format!("deg p = {n}, deg q = {:?}", q.degree()),
            None,
        ));
    }
    if !p.is_monic() || !q.is_monic() {
        return Err(Error::certificate("monic", "both polynomials must be monic", None));
    }
    checks.push("degree".to_string());
    if pair.k > n {
        return Err(Error::certificate("coefficients", format!("k = {} exceeds degree {n}", pair.k), None));
    }
    let matched = matched_leading(p, q);
    if matched < pair.k {
        return Err(Error::certificate(
            "coefficients",
            format!(
                "coefficient of x^{} differs: {} versus {}",
                n - matched - 1,
                crate::rational::to_string(&p.coeff(n - matched - 1)),
                crate::rational::to_string(&q.coeff(n - matched - 1))
            ),
            Some(matched + 1),
        ));
    }
    checks.push("coefficients".to_string());
    for (name, poly) in [("p", p), ("q", q)] {
        let roots = isolate(poly)?;
        let real: usize = roots.iter().map(|r| r.multiplicity()).sum();
        if real != n {
            return Err(Error::certificate(
                "real-rooted",
                format!("{name} has {real} real roots for degree {n}"),
                None,
            ));
        }
        let mut smallest = roots[0].clone();
        if smallest.cmp_rational(&Rational::zero()) == Ordering::Less {
            return Err(Error::certificate("nonnegative", format!("{name} has a negative root"), None));
        }
    }
    checks.push("real-rooted".to_string());
    checks.push("nonnegative".to_string());
    if !ratio_at_least(p, q, &pair.ratio_lower)? {
        return Err(Error::certificate(
            "ratio",
            format!(
                "λ_max(q) / λ_max(p) < {}",
                crate::rational::to_string(&pair.ratio_lower)
            ),
            None,
        ));
    }
    checks.push("ratio".to_string());
    if let PairDetails::Noisy(cert) = &pair.certificate {
        noisy::verify_certificate(pair, cert)?;
        checks.push("noise-certificate".to_string());
    }
    let width = two_pow(-40);
    let mut lp = largest(p)?;
    let mut lq = largest(q)?;
    lp.refine_to_width(&width);
    lq.refine_to_width(&width);
    Ok(PairReport {
        degree: n,
        k: pair.k,
        matched_leading: matched,
        lambda_max_p: lp.as_root_interval(),
        lambda_max_q: lq.as_root_interval(),
        ratio_lower: pair.ratio_lower.clone(),
        checks,
    })
}

/// Run the estimator on both profiles truncated to the matched `k`. The
/// inputs are identical, so the outputs must be too.
pub fn indistinguishable(pair: &LowerBoundPair) -> Result<(ApproxResult, ApproxResult)> {
    let k = pair.k.min(pair.degree());
    if k == 0 {
        return Err(Error::Precondition("pair has no matched coefficients".into()));
    }
    let a = approx_max_root(&profile_from_polynomial(&pair.p, k)?)?;
    let b = approx_max_root(&profile_from_polynomial(&pair.q, k)?)?;
    Ok((a, b))
}
