use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{certified_ratio, matched_leading, ratio_at_least, LowerBoundPair, PairDetails, Provenance};
use crate::bounds::cos_pi;
use crate::chebyshev::{cheb_eval, cheb_poly};
use crate::error::{Error, Result};
use crate::interlacing::check_common_interlacing;
use crate::poly::{sorted_roots, ExactPolynomial, RootInterval};
use crate::rational::{int, pow, rat, two_pow, Rational};

const COS_BITS: u32 = 80;

/// Evidence for the noisy-coefficient pair `r = 2T_k(3/2 − x)²`,
/// `s = T_{2k}(3/2 − x)`, both padded by `x^{n−2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseCertificate {
    pub k: usize,
    pub n: usize,
    /// `2T_k² − T_{2k} = 1` as polynomials.
    pub identity_holds: bool,
    /// 1-based position, from the top, of the only coefficient that differs.
    pub differing_index: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub r_constant: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub s_constant: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub coefficient_ratio: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub coefficient_ratio_bound: Rational,
    pub coefficient_ratio_within_bound: bool,
    /// Certified lower bound on `λ_max(s) / λ_max(r)`; `s` has the larger root.
    #[serde(with = "crate::rational::serde_rational")]
    pub root_ratio_lower: Rational,
    /// `1 + 1/(2k²)`.
    #[serde(with = "crate::rational::serde_rational")]
    pub ratio_target: Rational,
    /// Whether `λ_max(s) / λ_max(r) ≥ ratio_target`, decided exactly.
    pub meets_ratio_target: bool,
    /// `k²·(root_ratio_lower − 1)`, a lower bound on the constant `c` in `1 + c/k²`.
    #[serde(with = "crate::rational::serde_rational")]
    pub observed_c_lower: Rational,
    /// `3/2 − cos((2j+1)π/2k)` twice each, then zeros.
    pub r_roots: Vec<RootInterval>,
    /// `3/2 − cos((2j+1)π/4k)`, then zeros.
    pub s_roots: Vec<RootInterval>,
    pub roots_match_formulas: bool,
    pub common_interlacing: bool,
}

fn formula_roots(k: usize, denominator: usize, multiplicity: usize, zeros: usize) -> Vec<RootInterval> {
    let mut roots: Vec<RootInterval> = (0..k * denominator / 2)
        .map(|j| {
            let c = cos_pi(&rat(2 * j as i64 + 1, (denominator * k) as i64), COS_BITS);
            RootInterval {
                lo: rat(3, 2) - c.hi,
                hi: rat(3, 2) - c.lo,
                multiplicity,
            }
        })
        .collect();
    if zeros > 0 {
        roots.push(RootInterval { lo: int(0), hi: int(0), multiplicity: zeros });
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    roots
}

/// Whether the certified roots of `p` (with multiplicity) meet the formula
/// enclosures one for one.
fn matches(p: &ExactPolynomial, formula: &[RootInterval]) -> Result<bool> {
    let expanded: Vec<&RootInterval> =
        formula.iter().flat_map(|r| std::iter::repeat(r).take(r.multiplicity)).collect();
    let mut roots = sorted_roots(p)?;
    if roots.len() != expanded.len() {
        return Ok(false);
    }
    let width = two_pow(-(COS_BITS as i64) + 8);
    Ok(roots.iter_mut().zip(expanded).all(|(r, f)| {
        r.refine_to_width(&width);
        r.lo() <= &f.hi && &f.lo <= r.hi()
    }))
}

fn reflected_chebyshev(k: usize) -> ExactPolynomial {
    cheb_poly(k).compose(&ExactPolynomial::new(vec![rat(3, 2), int(-1)]))
}

/// The pair `(p, q) = (monic r·x^{n−2k}, monic s·x^{n−2k})`, which agree in
/// every coefficient except that of `x^{n−2k}`.
pub fn noisy_pair(k: usize, n: usize) -> Result<LowerBoundPair> {
    if k <= 1 {
        return Err(Error::InvalidArgument(format!("k must exceed 1, got {k}")));
    }
    if 2 * k > n {
        return Err(Error::InvalidArgument(format!("need 2k ≤ n, got k = {k}, n = {n}")));
    }
    let tk = reflected_chebyshev(k);
    let r = (&tk * &tk).scale(&int(2));
    let s = reflected_chebyshev(2 * k);
    let identity_holds = &r - &s == ExactPolynomial::one();
    let pad = ExactPolynomial::monomial(Rational::one(), n - 2 * k);
    let p = &r.monic() * &pad;
    let q = &s.monic() * &pad;

    let r_constant = int(2) * pow(&cheb_eval(k, &rat(3, 2)), 2);
    let s_constant = cheb_eval(2 * k, &rat(3, 2));
    let coefficient_ratio = &r_constant / &s_constant;
    let coefficient_ratio_bound = int(1) + int(4) / pow(&int(2), 2 * k);
    let coefficient_ratio_within_bound = coefficient_ratio <= coefficient_ratio_bound;

    let root_ratio_lower = certified_ratio(&p, &q)?;
    let k2 = int((k * k) as i64);
    let ratio_target = int(1) + int(1) / (int(2) * &k2);
    let meets_ratio_target = ratio_at_least(&p, &q, &ratio_target)?;
    let observed_c_lower = (&root_ratio_lower - int(1)) * &k2;

    let r_roots = formula_roots(k, 2, 2, n - 2 * k);
    let s_roots = formula_roots(k, 4, 1, n - 2 * k);
    let roots_match_formulas = matches(&p, &r_roots)? && matches(&q, &s_roots)?;
    let common_interlacing = check_common_interlacing(&[p.clone(), q.clone()])?;

    let certificate = NoiseCertificate {
        k,
        n,
        identity_holds,
        differing_index: 2 * k,
        r_constant,
        s_constant,
        coefficient_ratio,
        coefficient_ratio_bound,
        coefficient_ratio_within_bound,
        root_ratio_lower: root_ratio_lower.clone(),
        ratio_target,
        meets_ratio_target,
        observed_c_lower,
        r_roots,
        s_roots,
        roots_match_formulas,
        common_interlacing,
    };
    Ok(LowerBoundPair {
        p,
        q,
        k: 2 * k - 1,
        ratio_lower: root_ratio_lower,
        provenance: Provenance::Noisy,
        certificate: PairDetails::Noisy(certificate),
    })
}

/// Rebuild the construction from `(k, n)` and check the pair and every
/// claim of its certificate against it. The ratio target is an observation,
/// not a requirement, and is only checked for consistency.
pub(super) fn verify_certificate(pair: &LowerBoundPair, cert: &NoiseCertificate) -> Result<()> {
    let fresh = noisy_pair(cert.k, cert.n)?;
    if fresh.p != pair.p || fresh.q != pair.q {
        return Err(Error::certificate("noise-certificate", "polynomials differ from the construction", None));
    }
    let PairDetails::Noisy(expected) = &fresh.certificate else {
        unreachable!("noisy_pair builds a noise certificate");
    };
    if expected != cert {
        return Err(Error::certificate("noise-certificate", "certificate fields differ from a fresh derivation", None));
    }
    let n = cert.n;
    let differing: Vec<usize> = (1..=n).filter(|&i| pair.p.coeff(n - i) != pair.q.coeff(n - i)).collect();
    if differing != vec![cert.differing_index] {
        return Err(Error::certificate(
            "noise-certificate",
            format!("coefficients differ at positions {differing:?}"),
            differing.first().copied(),
        ));
    }
    for (ok, what) in [
        (cert.identity_holds, "2T_k² − T_2k = 1"),
        (cert.coefficient_ratio_within_bound, "coefficient ratio bound"),
        (cert.roots_match_formulas, "root formulas"),
        (cert.common_interlacing, "common interlacing"),
    ] {
        if !ok {
            return Err(Error::certificate("noise-certificate", format!("{what} does not hold"), None));
        }
    }
    if matched_leading(&pair.p, &pair.q) != cert.differing_index - 1 {
        return Err(Error::certificate("noise-certificate", "matched count disagrees", None));
    }
    Ok(())
}
