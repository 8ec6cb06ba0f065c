//! Exhaustive computations over all signings of a graph.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_diagonal, signed_adjacency, zero_diagonal, Graph, Signing};
use crate::bounds::sqrt_bounds;
use crate::error::{Error, Result};
use crate::poly::{largest_root, ExactPolynomial, RealRoot, RootInterval};
use crate::rational::{int, two_pow, Rational};

/// Largest edge count for which all `2^|E|` signings are enumerated.
pub const EXHAUSTION_CAP: usize = 24;

fn check_cap(g: &Graph) -> Result<()> {
    if g.edge_count() > EXHAUSTION_CAP {
        return Err(Error::ExhaustionCap { edges: g.edge_count(), cap: EXHAUSTION_CAP });
    }
    Ok(())
}

trait Entry: Clone + Zero + PartialEq + Send + Sync + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {}
impl Entry for i64 {}
impl Entry for BigInt {}

/// Trace powers of `L·(D + A_s)` for a fixed graph and diagonal, where `L`
/// clears the denominators of `D`.
struct TraceEngine<T> {
    n: usize,
    diag: Vec<T>,
    edges: Vec<(usize, usize)>,
    weight: T,
    k: usize,
}

impl<T: Entry> TraceEngine<T> {
    fn traces(&self, negative: impl Fn(usize) -> bool) -> Vec<T> {
        let n = self.n;
        let neg_weight = -self.weight.clone();
        let mut sparse: Vec<Vec<(usize, T)>> = (0..n)
            .map(|u| if self.diag[u].is_zero() { Vec::new() } else { vec![(u, self.diag[u].clone())] })
            .collect();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let w = if negative(e) { neg_weight.clone() } else { self.weight.clone() };
            sparse[u].push((v, w.clone()));
            sparse[v].push((u, w));
        }
        let half = self.k.div_ceil(2);
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(half);
        let mut first = vec![T::zero(); n * n];
        for (u, row) in sparse.iter().enumerate() {
            for (v, w) in row {
                first[u * n + v] = w.clone();
            }
        }
        powers.push(first);
        for _ in 1..half {
            let prev = powers.last().unwrap();
            let mut next = vec![T::zero(); n * n];
            for u in 0..n {
                for v in 0..n {
                    let a = &prev[u * n + v];
                    if a.is_zero() {
                        continue;
                    }
                    for (w, m) in &sparse[v] {
                        let slot = &mut next[u * n + w];
                        *slot = slot.clone() + a.clone() * m.clone();
                    }
                }
            }
            powers.push(next);
        }
        (1..=self.k)
            .map(|i| {
                if i == 1 {
                    return self.diag.iter().fold(T::zero(), |acc, d| acc + d.clone());
                }
                // trace(M^a M^b) = Σ (M^a)_{uv} (M^b)_{uv} for symmetric M.
                let a = &powers[i.div_ceil(2) - 1];
                let b = &powers[i / 2 - 1];
                a.iter()
                    .zip(b)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
            })
            .collect()
    }
}

/// The first signing found whose trace powers differ from the all-positive one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceWitness {
    pub signing: Signing,
    pub power: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub expected: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub found: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub k: usize,
    /// False for sampling runs, which can refute invariance but never prove it.
    pub certified: bool,
    pub holds: bool,
    /// Signings examined, counting the all-positive one; the scan stops at
    /// the first witness.
    pub signings_checked: u64,
    /// `trace((D + A_+)^i)` for `i = 1..k`.
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub traces: Vec<Rational>,
    pub witness: Option<InvarianceWitness>,
}

fn lcm_of_denominators(d: &[Rational]) -> BigInt {
    d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

enum Engine {
    Small(TraceEngine<i64>),
    Big(TraceEngine<BigInt>),
}

fn engine(g: &Graph, d: &[Rational], k: usize) -> (Engine, BigInt) {
    let l = lcm_of_denominators(d);
    let diag: Vec<BigInt> = d.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let degrees = g.degrees();
    // Entries of M^i are bounded by B^i, and every trace sum by n·B^k.
    let row_bound = (0..g.n())
        .map(|u| diag[u].abs() + &l * BigInt::from(degrees[u]))
        .max()
        .unwrap_or_else(BigInt::zero);
    let worst = BigInt::from(g.n().max(1)) * num_traits::pow(row_bound, k.max(1));
    let edges = g.edges().to_vec();
    let e = if worst < BigInt::from(1i64 << 62) {
        Engine::Small(TraceEngine {
            n: g.n(),
            diag: diag.iter().map(|x| x.to_i64().unwrap()).collect(),
            edges,
            weight: l.to_i64().unwrap(),
            k,
        })
    } else {
        Engine::Big(TraceEngine { n: g.n(), diag, edges, weight: l.clone(), k })
    };
    (e, l)
}

fn unscale(values: Vec<BigInt>, l: &BigInt) -> Vec<Rational> {
    values
        .into_iter()
        .enumerate()
        .map(|(i, t)| Rational::new(t, num_traits::pow(l.clone(), i + 1)))
        .collect()
}

fn run_engine<T: Entry + Into<BigInt>>(
    eng: &TraceEngine<T>,
    l: &BigInt,
    masks: &[u64],
    exhaustive_count: Option<u64>,
) -> InvarianceReport {
    let m = eng.edges.len();
    let base = eng.traces(|_| false);
    let differs = |mask: u64| eng.traces(|e| mask >> e & 1 == 1) != base;
    // (mask, signings examined through it, in enumeration order)
    let found = match exhaustive_count {
        Some(total) => (1..total).into_par_iter().find_first(|&mask| differs(mask)).map(|m| (m, m + 1)),
        None => masks
            .par_iter()
            .position_first(|&mask| differs(mask))
            .map(|i| (masks[i], i as u64 + 2)),
    };
    let signings_checked = match found {
        Some((_, seen)) => seen,
        None => exhaustive_count.unwrap_or(masks.len() as u64 + 1),
    };
    let base_q = unscale(base.iter().cloned().map(Into::into).collect(), l);
    let witness = found.map(|(mask, _)| {
        let other = unscale(eng.traces(|e| mask >> e & 1 == 1).into_iter().map(Into::into).collect(), l);
        let power = (0..eng.k).find(|&i| other[i] != base_q[i]).unwrap();
        InvarianceWitness {
            signing: Signing::from_mask(mask, m),
            power: power + 1,
            expected: base_q[power].clone(),
            found: other[power].clone(),
        }
    });
    InvarianceReport {
        k: eng.k,
        certified: exhaustive_count.is_some(),
        holds: witness.is_none(),
        signings_checked,
        traces: base_q,
        witness,
    }
}

/// Whether `trace((D + A_s)^i)` is the same for every signing `s` and every
/// `i ≤ k`, decided over all `2^|E|` signings in exact integer arithmetic.
pub fn verify_sign_invariance(g: &Graph, d: &[Rational], k: usize) -> Result<bool> {
    Ok(verify_sign_invariance_report(g, d, k)?.holds)
}

/// [`verify_sign_invariance`] with the reference traces and, on failure, a
/// witness signing with the first power at which it disagrees.
pub fn verify_sign_invariance_report(g: &Graph, d: &[Rational], k: usize) -> Result<InvarianceReport> {
    check_diagonal(g, d)?;
    check_cap(g)?;
    let total = 1u64 << g.edge_count();
    let (eng, l) = engine(g, d, k);
    Ok(match &eng {
        Engine::Small(e) => run_engine(e, &l, &[], Some(total)),
        Engine::Big(e) => run_engine(e, &l, &[], Some(total)),
    })
}

/// Check `samples` seeded random signings against the all-positive one. A
/// report with `holds == true` here certifies nothing.
pub fn sample_sign_invariance(
    g: &Graph,
    d: &[Rational],
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    check_diagonal(g, d)?;
    if g.edge_count() > 64 {
        return Err(Error::InvalidArgument("sampling supports at most 64 edges".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = g.edge_count();
    let masks: Vec<u64> = (0..samples)
        .map(|_| if m == 64 { rng.gen() } else { rng.gen_range(0..1u64 << m) })
        .collect();
    let (eng, l) = engine(g, d, k);
    Ok(match &eng {
        Engine::Small(e) => run_engine(e, &l, &masks, None),
        Engine::Big(e) => run_engine(e, &l, &masks, None),
    })
}

/// Result of the exhaustive search for the signing with smallest `λ_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigningSearch {
    pub signing: Signing,
    pub char_poly: ExactPolynomial,
    pub lambda_max: RootInterval,
    /// Signings up to switching at vertices, each of which was evaluated.
    pub switching_classes: u64,
    pub max_degree: usize,
    /// `λ_max ≤ 2√(deg_max − 1) + 2^-20`, or `None` when `deg_max < 2`.
    pub within_ramanujan_bound: Option<bool>,
}

/// Decide `λ ≤ 2√(deg_max − 1) + 2^-20` exactly; `None` for `deg_max < 2`,
/// where the bound is vacuous.
pub fn ramanujan_check(lambda: &mut RealRoot, deg_max: usize) -> Option<bool> {
    if deg_max < 2 {
        return None;
    }
    let root = sqrt_bounds(&int(4 * (deg_max as i64 - 1)), 64).expect("nonnegative");
    let bound = root.lo + two_pow(-20);
    Some(lambda.cmp_rational(&bound) != Ordering::Greater)
}

/// Edge `e` is bit `m − 1 − e`, so integer order is lexicographic order of
/// sign vectors with +1 before −1.
fn lex_bit(e: usize, m: usize) -> u64 {
    1 << (m - 1 - e)
}

fn signing_from_lex(mask: u64, m: usize) -> Signing {
    Signing((0..m).map(|e| if mask & lex_bit(e, m) != 0 { -1 } else { 1 }).collect())
}

/// Smallest element of `mask + span(cuts)` over GF(2).
struct CutSpace {
    basis: Vec<u64>,
}

impl CutSpace {
    fn new(g: &Graph) -> Self {
        let m = g.edge_count();
        let mut basis: Vec<u64> = Vec::new();
        for v in 0..g.n() {
            let mut cut = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .fold(0u64, |acc, (e, _)| acc | lex_bit(e, m));
            for b in &basis {
                if cut & top_bit(*b) != 0 {
                    cut ^= b;
                }
            }
            if cut != 0 {
                basis.push(cut);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        CutSpace { basis }
    }

    fn min_representative(&self, mut mask: u64) -> u64 {
        for b in &self.basis {
            if mask & top_bit(*b) != 0 {
                mask ^= b;
            }
        }
        mask
    }
}

fn top_bit(x: u64) -> u64 {
    1 << (63 - x.leading_zeros())
}

/// Edges outside a breadth-first spanning forest; flipping any subset of them
/// reaches every switching class exactly once.
fn cotree_edges(g: &Graph) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut seen = vec![false; g.n()];
    let mut tree = vec![false; g.edge_count()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..g.edge_count()).filter(|&e| !tree[e]).collect()
}

/// Exhaustive minimisation of `λ_max(A_s)` over all signings, with ties broken
/// lexicographically (+1 before −1) in edge order.
///
/// Switching at a vertex conjugates `A_s` by a diagonal ±1 matrix, so only one
/// signing per switching class is evaluated; the reported signing is the
/// lexicographically least member of the best classes.
pub fn best_signing_search(g: &Graph) -> Result<SigningSearch> {
    check_cap(g)?;
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let m = g.edge_count();
    let cotree = cotree_edges(g);
    let classes = 1u64 << cotree.len();
    let zero = zero_diagonal(g);
    let polys: Vec<(u64, ExactPolynomial)> = (0..classes)
        .into_par_iter()
        .map(|c| {
            let mask = cotree
                .iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0u64, |acc, (_, &e)| acc | lex_bit(e, m));
            let s = signing_from_lex(mask, m);
            (mask, signed_adjacency(g, &s, &zero).expect("sizes match").char_poly())
        })
        .collect();

    // Distinct characteristic polynomials, in order of first appearance.
    let mut order: Vec<ExactPolynomial> = Vec::new();
    let mut members: HashMap<ExactPolynomial, Vec<u64>> = HashMap::new();
    for (mask, p) in polys {
        members
            .entry(p.clone())
            .or_insert_with(|| {
                order.push(p);
                Vec::new()
            })
            .push(mask);
    }
    let mut roots: Vec<RealRoot> = order
        .par_iter()
        .map(|p| largest_root(p).map(|r| r.expect("symmetric matrices have real eigenvalues")))
        .collect::<Result<_>>()?;
    let mut best: Vec<usize> = vec![0];
    for i in 1..order.len() {
        let (head, tail) = roots.split_at_mut(i);
        match tail[0].cmp(&mut head[best[0]]) {
            Ordering::Less => best = vec![i],
            Ordering::Equal => best.push(i),
            Ordering::Greater => {}
        }
    }
    let cuts = CutSpace::new(g);
    let (winner, mask) = best
        .iter()
        .flat_map(|&i| members[&order[i]].iter().map(move |&mask| (i, mask)))
        .map(|(i, mask)| (i, cuts.min_representative(mask)))
        .min_by_key(|&(_, rep)| rep)
        .unwrap();
    let mut lambda = roots.swap_remove(winner);
    let within = ramanujan_check(&mut lambda, g.max_degree());
    lambda.refine_to_width(&two_pow(-40));
    Ok(SigningSearch {
        signing: signing_from_lex(mask, m),
        char_poly: order.swap_remove(winner),
        lambda_max: lambda.as_root_interval(),
        switching_classes: classes,
        max_degree: g.max_degree(),
        within_ramanujan_bound: within,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, heawood, hypercube, path, signed_spectrum};
    use crate::rational::rat;

    fn brute_traces(g: &Graph, s: &Signing, d: &[Rational], k: usize) -> Vec<Rational> {
        let a = signed_adjacency(g, s, d).unwrap();
        (1..=k).map(|i| a.pow(i).trace()).collect()
    }

    #[test]
    fn invariance_examples() {
        let c4 = cycle(4);
        let zero = zero_diagonal(&c4);
        assert!(verify_sign_invariance(&c4, &zero, 3).unwrap());
        let report = verify_sign_invariance_report(&c4, &zero, 4).unwrap();
        assert!(!report.holds && report.certified);
        let w = report.witness.unwrap();
        assert_eq!(w.power, 4);
        assert_eq!(w.expected, brute_traces(&c4, &Signing::all_positive(4), &zero, 4)[3]);
        assert_eq!(w.found, brute_traces(&c4, &w.signing, &zero, 4)[3]);
        assert_eq!(report.signings_checked, 2);
        assert_eq!(verify_sign_invariance_report(&c4, &zero, 3).unwrap().signings_checked, 16);

        let edge = path(2);
        for d in [vec![int(0), int(0)], vec![rat(1, 2), int(-3)]] {
            assert!(verify_sign_invariance(&edge, &d, 1).unwrap());
        }
        assert!(verify_sign_invariance(&edge, &[int(1)], 1).is_err());
    }

    #[test]
    fn engine_matches_dense_powers() {
        let g = heawood();
        let d: Vec<Rational> = (0..14).map(|i| rat(i % 5 - 2, 1 + i % 3)).collect();
        let report = verify_sign_invariance_report(&g, &d, 7).unwrap();
        assert_eq!(report.traces, brute_traces(&g, &Signing::all_positive(21), &d, 7));
        let w = report.witness.unwrap();
        assert_eq!(w.power, 6);
        let (eng, l) = engine(&g, &d, 7);
        let s = Signing::from_mask(0b1011_0110_0101, 21);
        let got = match eng {
            Engine::Small(e) => unscale(e.traces(|i| s.signs()[i] < 0).into_iter().map(Into::into).collect(), &l),
            Engine::Big(_) => unreachable!(),
        };
        assert_eq!(got, brute_traces(&g, &s, &d, 7));
    }

    #[test]
    fn big_integer_path() {
        let g = cycle(6);
        let d: Vec<Rational> = (0..6).map(|i| rat(1_000_003 * (i + 1), 999_983)).collect();
        let (eng, _) = engine(&g, &d, 7);
        assert!(matches!(eng, Engine::Big(_)));
        let report = verify_sign_invariance_report(&g, &d, 7).unwrap();
        assert_eq!(report.traces, brute_traces(&g, &Signing::all_positive(6), &d, 7));
        assert_eq!(report.witness.unwrap().power, 6);
    }

    #[test]
    fn sampling_mode() {
        let g = cycle(6);
        let r = sample_sign_invariance(&g, &zero_diagonal(&g), 5, 50, 7).unwrap();
        assert!(r.holds && !r.certified);
        let r = sample_sign_invariance(&g, &zero_diagonal(&g), 6, 50, 7).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn cap_is_enforced() {
        let g = crate::graphs::tutte_coxeter();
        assert_eq!(
            verify_sign_invariance(&g, &zero_diagonal(&g), 3),
            Err(Error::ExhaustionCap { edges: 45, cap: 24 })
        );
        assert!(best_signing_search(&g).is_err());
    }

    #[test]
    fn search_examples() {
        let edge = best_signing_search(&path(2)).unwrap();
        assert_eq!(edge.lambda_max.lo, int(1));
        assert_eq!(edge.signing, Signing::all_positive(1));
        assert_eq!(edge.within_ramanujan_bound, None);

        let c4 = best_signing_search(&cycle(4)).unwrap();
        // One negative edge gives spectrum ±√2 (each twice).
        assert_eq!(c4.char_poly, ExactPolynomial::from_ints(&[4, 0, -4, 0, 1]));
        assert_eq!(c4.signing, Signing::new(vec![1, 1, 1, -1]).unwrap());
        assert_eq!(c4.switching_classes, 2);
        assert_eq!(c4.within_ramanujan_bound, Some(true));

        let q3 = best_signing_search(&hypercube(3)).unwrap();
        assert_eq!(q3.within_ramanujan_bound, Some(true));
        assert!(q3.lambda_max.hi <= rat(283, 100));
    }

    #[test]
    fn search_matches_brute_force() {
        for g in [cycle(6), hypercube(3), crate::graphs::complete(4)] {
            let found = best_signing_search(&g).unwrap();
            let m = g.edge_count();
            let mut best: Option<(RealRoot, Signing)> = None;
            for mask in 0..1u64 << m {
                let s = signing_from_lex(mask, m);
                let spec = signed_spectrum(&g, &s, &zero_diagonal(&g), 4).unwrap();
                let mut r = largest_root(&spec.char_poly).unwrap().unwrap();
                let better = match &mut best {
                    None => true,
                    Some((b, _)) => r.cmp(b) == Ordering::Less,
                };
                if better {
                    best = Some((r, s));
                }
            }
            assert_eq!(found.signing, best.unwrap().1);
        }
    }
}
