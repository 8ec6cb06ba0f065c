use std::cmp::Ordering;

use num_traits::One;

use super::{certified_ratio, matched_leading, ratio_at_least, LowerBoundPair, PairDetails, Provenance};
use crate::bounds::cos_pi;
use crate::chebyshev::cheb_poly;
use crate::error::{Error, Result};
use crate::graphs::{best_signing_search, girth, signed_adjacency, zero_diagonal, Graph, Signing};
use crate::poly::{isolate, largest_root, ExactPolynomial, RealRoot};
use crate::rational::{int, pow, rat, Rational};

const COS_BITS: u32 = 64;

/// `T_n(x − 1) ± 1`, made monic: the `+` polynomial has roots
/// `1 + cos((π + 2πi)/n)`, the `−` one `1 + cos(2πi/n)`, and all but the
/// constant coefficients agree.
pub fn weak_pair(n: usize) -> Result<LowerBoundPair> {
    if n < 2 {
        return Err(Error::InvalidArgument("weak pairs need n ≥ 2".into()));
    }
    let t = cheb_poly(n).compose(&ExactPolynomial::from_ints(&[-1, 1]));
    let one = ExactPolynomial::one();
    let p = (&t + &one).monic();
    let q = (&t - &one).monic();
    // λ_max(q) = 2 and λ_max(p) = 1 + cos(π/n).
    let cos = cos_pi(&rat(1, n as i64), COS_BITS);
    let ratio_lower = int(2) / (int(1) + cos.hi);
    Ok(LowerBoundPair {
        p,
        q,
        k: n - 1,
        ratio_lower,
        provenance: Provenance::Weak,
        certificate: PairDetails::Weak { n },
    })
}

/// Squared-spectrum pair of a bipartite graph: `q` from the all-positive
/// signing, `p` from the best signing, both raised to the even power `t`.
/// Trace powers below the girth do not see the signing, so the first
/// `⌊(girth − 1)/t⌋` elementary symmetric functions agree.
pub fn girth_pair(g: &Graph, t: usize) -> Result<LowerBoundPair> {
    if t < 2 || t % 2 == 1 {
        return Err(Error::Precondition(format!("power must be even and at least 2, got {t}")));
    }
    if !g.is_bipartite() {
        return Err(Error::Precondition("graph must be bipartite".into()));
    }
    let graph_girth = girth(g).ok_or_else(|| Error::Precondition("graph has no cycles".into()))?;
    let k = (graph_girth - 1) / t;
    if k == 0 {
        return Err(Error::Precondition(format!("power {t} leaves nothing below girth {graph_girth}")));
    }
    let search = best_signing_search(g)?;
    let zero = zero_diagonal(g);
    let plus = signed_adjacency(g, &Signing::all_positive(g.edge_count()), &zero)?;
    let best = signed_adjacency(g, &search.signing, &zero)?;
    let q = plus.pow(t).char_poly();
    let p = best.pow(t).char_poly();
    let matched = matched_leading(&p, &q);
    if matched < k {
        return Err(Error::certificate(
            "coefficients",
            format!("only {matched} of {k} leading coefficients agree below the girth"),
            Some(matched + 1),
        ));
    }
    let mut ratio_lower = certified_ratio(&p, &q)?;
    let d = search.max_degree;
    let degree_ratio_bound = (d >= 2).then(|| {
        let avg = Rational::new((2 * g.edge_count()).into(), g.n().into());
        pow(&avg, t) / pow(&int(4 * (d as i64 - 1)), t / 2)
    });
    if let Some(bound) = &degree_ratio_bound {
        if bound > &ratio_lower && ratio_at_least(&p, &q, bound)? {
            ratio_lower = bound.clone();
        }
    }
    Ok(LowerBoundPair {
        p,
        q,
        k,
        ratio_lower,
        provenance: Provenance::Girth,
        certificate: PairDetails::Girth {
            graph_girth,
            power: t,
            signing: search.signing,
            max_degree: d,
            degree_ratio_bound,
        },
    })
}

fn smallest_root(p: &ExactPolynomial) -> Result<RealRoot> {
    isolate(p)?
        .into_iter()
        .next()
        .ok_or(Error::NotRealRooted { real: 0, degree: p.degree().unwrap_or(0) })
}

/// A rational endpoint for a root: the root itself when rational, otherwise
/// an enclosure endpoint on the requested side.
fn endpoint(root: &mut RealRoot, upper: bool) -> (Rational, bool) {
    if let Some(v) = root.to_rational() {
        return (v, true);
    }
    root.refine_relative(64);
    (if upper { root.hi().clone() } else { root.lo().clone() }, false)
}

/// Compose a base pair with `T_t` after mapping all its roots into `[−1, 1]`
/// (smallest root to −1, the larger maximum to 1), then shift by +1.
///
/// Requires the smaller maximum to land at or below 1/2, so that every root
/// of the composed `p` is at most `cos(π/3t)` while `q` keeps the root 1.
pub fn boosted_pair(base: &LowerBoundPair, t: usize) -> Result<LowerBoundPair> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let mut low_p = smallest_root(&base.p)?;
    let mut low_q = smallest_root(&base.q)?;
    let mut low = if low_p.cmp(&mut low_q) == Ordering::Greater { low_q } else { low_p };
    let mut top_q = largest_root(&base.q)?.ok_or(Error::ZeroPolynomial)?;
    let mut top_p = largest_root(&base.p)?.ok_or(Error::ZeroPolynomial)?;
    let (lo, _) = endpoint(&mut low, false);
    let (hi, exact_rescale) = endpoint(&mut top_q, true);
    if hi <= lo {
        return Err(Error::Precondition("base roots span a single point".into()));
    }
    let scale = int(2) / (&hi - &lo);
    let shift = -(&hi + &lo) / (&hi - &lo);
    // a·μ_max + b ≤ 1/2  ⇔  μ_max ≤ (1/2 − b) / a
    let limit = (rat(1, 2) - &shift) / &scale;
    if top_p.cmp_rational(&limit) == Ordering::Greater {
        return Err(Error::Precondition(
            "base ratio too small: the rescaled smaller maximum exceeds 1/2".into(),
        ));
    }
    let chebyshev = cheb_poly(t);
    let one = Rational::one();
    let lift = |poly: &ExactPolynomial| -> Result<ExactPolynomial> {
        let inner = poly.shift_scale(&scale, &shift)?.compose(&chebyshev);
        inner.shift_scale(&one, &one)
    };
    let p = lift(&base.p)?;
    let q = lift(&base.q)?;
    let k = matched_leading(&p, &q);
    let ratio_lower = if exact_rescale {
        let cos = cos_pi(&rat(1, 3 * t as i64), COS_BITS);
        int(2) / (int(1) + cos.hi)
    } else {
        certified_ratio(&p, &q)?
    };
    Ok(LowerBoundPair {
        p,
        q,
        k,
        ratio_lower,
        provenance: Provenance::Boosted,
        certificate: PairDetails::Boosted {
            t,
            base_provenance: base.provenance,
            base_k: base.k,
            scale,
            shift,
            exact_rescale,
        },
    })
}
