//! Seeded desk-scale experiments, one per acceptance criterion. Both the
//! command-line `selftest` and the acceptance test target run these.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::ln_bounds;
use crate::chebyshev::cheb_poly;
use crate::error::Result;
use crate::graphs::{
    best_signing_search, catalog_names, girth, high_girth_catalog, verify_sign_invariance_report, zero_diagonal,
    Graph,
};
use crate::interlacing::{
    expected_char_poly, random_ks_instance, round_family, FamilyOracle, KSOracle, RoundOptions,
};
use crate::lowerbounds::{
    boosted_pair, girth_pair, indistinguishable, matched_leading, noisy_pair, ratio_at_least, verify_pair,
    weak_pair, LowerBoundPair, PairDetails,
};
use crate::maxroot::{
    approx_max_root, bracket_holds, iteration_bound, power_sum_estimate, Branch,
};
use crate::poly::ExactPolynomial;
use crate::rational::{int, pow, rat, to_decimal, to_string, Rational};
use crate::symfuncs::{power_sums_from_elementary, profile_from_polynomial, SymmetricProfile};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Ids of the criteria, in order.
pub const CRITERIA: [usize; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    fn new(id: usize, title: &str, checks: Vec<Check>) -> Self {
        CriterionReport {
            id,
            title: title.to_string(),
            passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One summary line: `C07 FAIL noisy pair: ...`.
    pub fn summary(&self) -> String {
        let failing: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        let tail = if failing.is_empty() {
            format!("{} checks", self.checks.len())
        } else {
            format!("failing: {}", failing.join(", "))
        };
        format!(
            "C{:02} {} {} ({tail})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title
        )
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

fn error_check(name: &str, e: crate::Error) -> Check {
    check(name, false, format!("error: {e}"))
}

pub fn run_criterion(id: usize, seed: u64) -> Result<CriterionReport> {
    match id {
        1..=3 => Ok(root_vector_criteria(seed).swap_remove(id - 1)),
        4 => Ok(weak_pairs()),
        5 => Ok(sign_invariance(seed)),
        6 => Ok(heawood_girth_pair()),
        7 => Ok(noisy_pairs()),
        8 => Ok(ramanujan_signings()),
        9 => Ok(ks_oracle(seed)),
        10 => Ok(rounding(seed)),
        11 => Ok(indistinguishability()),
        _ => Err(crate::Error::OutOfRange { index: id, max: CRITERIA.len() }),
    }
}

/// Every criterion; 1 through 3 share one corpus and are computed together.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    let mut out = root_vector_criteria(seed);
    out.push(weak_pairs());
    out.push(sign_invariance(seed));
    out.push(heawood_girth_pair());
    out.push(noisy_pairs());
    out.push(ramanujan_signings());
    out.push(ks_oracle(seed));
    out.push(rounding(seed));
    out.push(indistinguishability());
    out
}

// ---------------------------------------------------------------- 1, 2, 3

pub const ROOT_VECTORS: usize = 500;
pub const ROOT_SIZES: [usize; 4] = [4, 16, 64, 256];

/// `⌈ln n⌉`, exactly.
pub fn ceil_ln(n: usize) -> usize {
    let mut bits = 32;
    loop {
        let ln = ln_bounds(&int(n as i64), bits).expect("positive");
        let (a, b) = (ln.lo.ceil(), ln.hi.ceil());
        if a == b {
            return a.to_integer().try_into().expect("small");
        }
        bits *= 2;
    }
}

/// `{1, 2, ⌈ln n⌉, 2⌈ln n⌉, n}` restricted to `1..=n`, deduplicated.
pub fn corpus_ks(n: usize) -> Vec<usize> {
    let l = ceil_ln(n);
    let mut ks: Vec<usize> = [1, 2, l, 2 * l, n].into_iter().filter(|&k| k >= 1 && k <= n).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// A rational root vector in `[0, 10]ⁿ` of one of several shapes.
pub fn random_root_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let value = |rng: &mut dyn rand::RngCore, lo: i64, hi: i64| {
        let d = rng.gen_range(1..=8i64);
        rat(rng.gen_range(lo * d..=hi * d), d)
    };
    match rng.gen_range(0..5) {
        // spread out
        0 => (0..n).map(|_| value(rng, 0, 10)).collect(),
        // one dominant root over small noise
        1 => {
            let mut v: Vec<Rational> = (0..n).map(|_| value(rng, 0, 1)).collect();
            let i = rng.gen_range(0..n);
            v[i] = value(rng, 5, 10);
            v
        }
        // a tight cluster
        2 => {
            let c = rng.gen_range(1..=9);
            (0..n).map(|_| int(c) + rat(rng.gen_range(0..=3), 8 * rng.gen_range(1..=8))).collect()
        }
        // mostly zeros
        3 => (0..n).map(|_| if rng.gen_bool(0.8) { int(0) } else { value(rng, 0, 10) }).collect(),
        // all equal
        _ => vec![value(rng, 0, 10); n],
    }
}

pub fn root_corpus(seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..ROOT_VECTORS).map(|i| random_root_vector(&mut rng, ROOT_SIZES[i % ROOT_SIZES.len()])).collect()
}

#[derive(Default)]
struct RootTally {
    runs: usize,
    bracket_failures: Vec<String>,
    chain_runs: usize,
    chain_failures: Vec<String>,
    loop_runs: usize,
    max_iterations: usize,
    bound_failures: Vec<String>,
}

impl RootTally {
    fn merge(mut self, other: RootTally) -> RootTally {
        self.runs += other.runs;
        self.bracket_failures.extend(other.bracket_failures);
        self.chain_runs += other.chain_runs;
        self.chain_failures.extend(other.chain_failures);
        self.loop_runs += other.loop_runs;
        self.max_iterations = self.max_iterations.max(other.max_iterations);
        self.bound_failures.extend(other.bound_failures);
        self
    }
}

fn tally_vector(index: usize, roots: &[Rational]) -> RootTally {
    let n = roots.len();
    let mut t = RootTally::default();
    let max = roots.iter().max().expect("nonempty").clone();
    let ks = corpus_ks(n);
    let full = SymmetricProfile::from_roots(roots, n).expect("valid");
    for &k in &ks {
        let tag = format!("vector {index} (n = {n}, k = {k})");
        let prof = full.truncate(k).expect("k ≤ n");
        t.runs += 1;
        match approx_max_root(&prof) {
            Ok(r) => {
                if !bracket_holds(&r, roots) {
                    t.bracket_failures.push(tag.clone());
                }
                if r.branch == Branch::ChebyshevLoop {
                    t.loop_runs += 1;
                    t.max_iterations = t.max_iterations.max(r.iterations);
                    let bound = iteration_bound(k, n);
                    if r.iterations > bound {
                        t.bound_failures.push(format!("{tag}: {} > {bound}", r.iterations));
                    }
                }
            }
            Err(e) => t.bracket_failures.push(format!("{tag}: {e}")),
        }

        t.chain_runs += 1;
        let direct: Rational = roots.iter().map(|r| pow(r, k)).sum();
        let newton = power_sums_from_elementary(&prof);
        let mk = pow(&max, k);
        let mean = &direct / int(n as i64);
        let mut ok = newton.p[k - 1] == direct && mean <= mk && mk <= direct;
        if let Ok(est) = power_sum_estimate(&prof) {
            ok &= est.lo <= max && pow(&est.lo, k) <= mean && mean <= pow(&est.hi, k);
        } else {
            ok = false;
        }
        if !ok {
            t.chain_failures.push(tag);
        }
    }
    t
}

fn first_few(v: &[String]) -> String {
    if v.is_empty() {
        return String::new();
    }
    format!(": {}", v.iter().take(3).cloned().collect::<Vec<_>>().join("; "))
}

/// Criteria 1, 2 and 3, from one pass over the shared corpus.
pub fn root_vector_criteria(seed: u64) -> Vec<CriterionReport> {
    let corpus = root_corpus(seed);
    let t = corpus
        .par_iter()
        .enumerate()
        .map(|(i, v)| tally_vector(i, v))
        .reduce(RootTally::default, RootTally::merge);
    let c1 = CriterionReport::new(
        1,
        "estimate brackets the largest root",
        vec![
            check("corpus", t.runs >= ROOT_VECTORS, format!("{} vectors, {} runs", corpus.len(), t.runs)),
            check(
                "bracket",
                t.bracket_failures.is_empty(),
                format!("{} failures{}", t.bracket_failures.len(), first_few(&t.bracket_failures)),
            ),
        ],
    );
    let c2 = CriterionReport::new(
        2,
        "power-sum chain",
        vec![check(
            "chain",
            t.chain_failures.is_empty(),
            format!("{} runs, {} failures{}", t.chain_runs, t.chain_failures.len(), first_few(&t.chain_failures)),
        )],
    );
    let c3 = CriterionReport::new(
        3,
        "threshold loop iteration bound",
        vec![
            check("loop-runs", t.loop_runs > 0, format!("{} runs took the threshold loop", t.loop_runs)),
            check(
                "iteration-bound",
                t.bound_failures.is_empty(),
                format!(
                    "max iterations {}, {} over the bound {}",
                    t.max_iterations,
                    t.bound_failures.len(),
                    first_few(&t.bound_failures)
                ),
            ),
        ],
    );
    vec![c1, c2, c3]
}

// ---------------------------------------------------------------- 4

/// The integer polynomial `2^{n−1}·p`, whose coefficients are those of
/// `T_n(x − 1) ± 1` up to the leading scale.
fn integer_coefficients(p: &ExactPolynomial, n: usize) -> Option<Vec<BigInt>> {
    let scale = pow(&int(2), n - 1);
    p.coeffs()
        .iter()
        .map(|c| {
            let v = c * &scale;
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}

fn weak_pairs() -> CriterionReport {
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=64usize {
        let pair = match weak_pair(n) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("n = {n}: {e}"));
                continue;
            }
        };
        let (Some(a), Some(b)) = (integer_coefficients(&pair.p, n), integer_coefficients(&pair.q, n)) else {
            failures.push(format!("n = {n}: non-integral scaled coefficients"));
            continue;
        };
        // descending order: positions 1..n−1 after the leading one
        let equal = (1..n).all(|i| a[n - i] == b[n - i]);
        let differ = a[0] != b[0];
        let target = int(1) + rat(1, (n * n) as i64);
        let ratio_ok = pair.ratio_lower >= target && ratio_at_least(&pair.p, &pair.q, &target).unwrap_or(false);
        let verified = verify_pair(&pair).is_ok();
        if !(equal && differ && ratio_ok && verified && pair.k == n - 1) {
            failures.push(format!(
                "n = {n}: equal {equal}, differ {differ}, ratio {ratio_ok}, verified {verified}"
            ));
        }
    }
    checks.push(check("n = 2..64", failures.is_empty(), format!("{} failures{}", failures.len(), first_few(&failures))));

    match weak_pair(3) {
        Ok(pair) => {
            let prof = profile_from_polynomial(&pair.p, 2).map(|p| p.e);
            let prof_q = profile_from_polynomial(&pair.q, 2).map(|p| p.e);
            let expected = vec![int(3), rat(9, 4)];
            let ok = prof.as_ref() == Ok(&expected) && prof_q.as_ref() == Ok(&expected) && pair.ratio_lower == rat(4, 3);
            checks.push(check(
                "n = 3 values",
                ok,
                format!(
                    "profile ({}), ratio {}",
                    prof.map(|v| v.iter().map(to_string).collect::<Vec<_>>().join(", ")).unwrap_or_else(|e| e.to_string()),
                    to_string(&pair.ratio_lower)
                ),
            ));
        }
        Err(e) => checks.push(error_check("n = 3 values", e)),
    }
    CriterionReport::new(4, "weak pairs", checks)
}

// ---------------------------------------------------------------- 5

pub fn invariance_graphs() -> Vec<(String, Graph)> {
    ["C_4", "C_6", "C_8", "Q_3", "heawood"]
        .iter()
        .map(|name| (name.to_string(), high_girth_catalog(name).expect("catalog graph")))
        .collect()
}

/// `D = 0` followed by `count` seeded diagonals with entries `a/b`,
/// `|a| ≤ 3`, `1 ≤ b ≤ 3`.
pub fn random_diagonals(g: &Graph, count: usize, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let mut out = vec![zero_diagonal(g)];
    for _ in 0..count {
        out.push((0..g.n()).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect());
    }
    out
}

fn sign_invariance(seed: u64) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
    let mut checks = Vec::new();
    for (name, g) in invariance_graphs() {
        let gg = girth(&g).expect("cycles");
        let mut below = true;
        let mut witnessed = 0;
        let mut checked = 0u64;
        let mut error = None;
        for d in random_diagonals(&g, 3, &mut rng) {
            // a full pass below the girth, then a search for a witness at it
            let below_girth = verify_sign_invariance_report(&g, &d, gg - 1);
            let at_girth = verify_sign_invariance_report(&g, &d, gg);
            match below_girth.and_then(|a| at_girth.map(|b| (a, b))) {
                Ok((a, b)) => {
                    checked += a.signings_checked;
                    below &= a.holds && a.certified;
                    if b.witness.as_ref().is_some_and(|w| w.power == gg) {
                        witnessed += 1;
                    }
                }
                Err(e) => error = Some(e),
            }
        }
        if let Some(e) = error {
            checks.push(error_check(&name, e));
            continue;
        }
        checks.push(check(
            &name,
            below && witnessed > 0,
            format!(
                "girth {gg}, {} edges, {checked} signing checks, traces 1..{} agree: {below}, disagreement at {gg} for {witnessed}/4 diagonals",
                g.edge_count(),
                gg - 1
            ),
        ));
    }
    CriterionReport::new(5, "trace powers below the girth ignore the signing", checks)
}

// ---------------------------------------------------------------- 6

fn heawood_girth_pair() -> CriterionReport {
    let g = high_girth_catalog("heawood").expect("catalog graph");
    let pair = match girth_pair(&g, 2) {
        Ok(p) => p,
        Err(e) => return CriterionReport::new(6, "Heawood girth pair", vec![error_check("construct", e)]),
    };
    let report = verify_pair(&pair);
    let bound = rat(9, 8);
    let checks = vec![
        check(
            "verified",
            report.is_ok(),
            match &report {
                Ok(r) => format!("checks {}", r.checks.join(", ")),
                Err(e) => format!("{e}"),
            },
        ),
        check("matched-k", pair.k == 2 && matched_leading(&pair.p, &pair.q) >= 2, format!("k = {}", pair.k)),
        check(
            "ratio",
            pair.ratio_lower >= bound && ratio_at_least(&pair.p, &pair.q, &bound).unwrap_or(false),
            format!("ratio lower bound {} ≥ 9/8", to_string(&pair.ratio_lower)),
        ),
    ];
    CriterionReport::new(6, "Heawood girth pair", checks)
}

// ---------------------------------------------------------------- 7

pub const NOISY_KS: std::ops::RangeInclusive<usize> = 2..=16;

fn noisy_pairs() -> CriterionReport {
    let mut identity = Vec::new();
    let mut coefficient = Vec::new();
    let mut ratio = Vec::new();
    let mut interlacing = Vec::new();
    let mut verified = Vec::new();
    let mut worst_c: Option<Rational> = None;
    let mut k2_ratio = None;
    for k in NOISY_KS {
        // independent check of 2T_k² − T_2k = 1
        let t = cheb_poly(k);
        if &(&t * &t).scale(&int(2)) - &cheb_poly(2 * k) != ExactPolynomial::one() {
            identity.push(format!("k = {k}"));
        }
        let pair = match noisy_pair(k, 2 * k) {
            Ok(p) => p,
            Err(e) => {
                verified.push(format!("k = {k}: {e}"));
                continue;
            }
        };
        let PairDetails::Noisy(cert) = &pair.certificate else {
            verified.push(format!("k = {k}: wrong certificate kind"));
            continue;
        };
        if !cert.identity_holds {
            identity.push(format!("k = {k} (certificate)"));
        }
        let bound = int(1) + int(4) / pow(&int(2), 2 * k);
        if !(cert.coefficient_ratio <= bound && cert.coefficient_ratio_within_bound) {
            coefficient.push(format!("k = {k}: {}", to_string(&cert.coefficient_ratio)));
        }
        if k == 2 {
            k2_ratio = Some(cert.coefficient_ratio.clone());
        }
        let target = int(1) + rat(1, 2 * (k * k) as i64);
        if !ratio_at_least(&pair.p, &pair.q, &target).unwrap_or(false) {
            ratio.push(format!("k = {k}: ratio ≥ {} < {}", to_decimal(&cert.root_ratio_lower, 6), to_decimal(&target, 6)));
        }
        if worst_c.as_ref().map_or(true, |c| &cert.observed_c_lower < c) {
            worst_c = Some(cert.observed_c_lower.clone());
        }
        if !(cert.common_interlacing && cert.roots_match_formulas) {
            interlacing.push(format!("k = {k}"));
        }
        if let Err(e) = verify_pair(&pair) {
            verified.push(format!("k = {k}: {e}"));
        }
    }
    let report = |v: &Vec<String>| format!("{} failures{}", v.len(), first_few(v));
    let checks = vec![
        check("identity", identity.is_empty(), report(&identity)),
        check("coefficient-ratio", coefficient.is_empty(), report(&coefficient)),
        check(
            "k = 2 coefficient ratio",
            k2_ratio == Some(rat(49, 47)),
            k2_ratio.as_ref().map(to_string).unwrap_or_default(),
        ),
        check("common-interlacing", interlacing.is_empty(), report(&interlacing)),
        check("verified", verified.is_empty(), report(&verified)),
        check(
            "ratio-target",
            ratio.is_empty(),
            format!(
                "{}; smallest c with ratio ≥ 1 + c/k² is at least {}",
                report(&ratio),
                worst_c.as_ref().map(|c| to_decimal(c, 6)).unwrap_or_default()
            ),
        ),
    ];
    CriterionReport::new(7, "noisy pairs", checks)
}

// ---------------------------------------------------------------- 8

pub const RAMANUJAN_EDGE_LIMIT: usize = 24;

fn ramanujan_signings() -> CriterionReport {
    let graphs: Vec<(String, Graph)> = catalog_names()
        .into_iter()
        .filter_map(|name| high_girth_catalog(&name).ok().map(|g| (name, g)))
        .filter(|(_, g)| g.is_bipartite() && g.edge_count() <= RAMANUJAN_EDGE_LIMIT)
        .collect();
    let checks = graphs
        .par_iter()
        .map(|(name, g)| match best_signing_search(g) {
            Ok(s) => check(
                name,
                s.within_ramanujan_bound == Some(true),
                format!(
                    "λ_max ∈ [{}, {}], 2√(d−1) = {}, {} switching classes",
                    to_decimal(&s.lambda_max.lo, 6),
                    to_decimal(&s.lambda_max.hi, 6),
                    to_decimal(&(int(2) * crate::bounds::sqrt_bounds(&int(s.max_degree as i64 - 1), 32).expect("nonnegative").lo), 6),
                    s.switching_classes
                ),
            ),
            Err(e) => error_check(name, e),
        })
        .collect();
    CriterionReport::new(8, "best signings meet 2√(d − 1)", checks)
}

// ---------------------------------------------------------------- 9

pub const KS_INSTANCES: usize = 50;
pub const KS_OUTCOME_LIMIT: u64 = 1 << 12;

pub fn ks_corpus(seed: u64, count: usize, max_m: usize) -> Vec<KSOracle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(1..=max_m);
        let n = rng.gen_range(1..=4);
        let inst = random_ks_instance(&mut rng, m, n, 4);
        if inst.outcome_count() <= KS_OUTCOME_LIMIT {
            out.push(KSOracle::new(inst));
        }
    }
    out
}

fn oracle_matches(oracle: &KSOracle, prefix: &[usize]) -> Result<bool> {
    let brute = expected_char_poly(oracle.instance(), prefix)?;
    let n = oracle.degree();
    Ok(match oracle.top_coefficients(prefix, n)? {
        None => brute.is_zero(),
        Some(c) => {
            let full = ExactPolynomial::new(c.iter().rev().cloned().collect());
            full == brute && (0..n).all(|k| oracle.top_coefficients(prefix, k).ok().flatten().as_deref() == Some(&c[..=k]))
        }
    })
}

fn ks_oracle(seed: u64) -> CriterionReport {
    let corpus = ks_corpus(seed, KS_INSTANCES, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 90);
    // the empty prefix and one random path down to a leaf
    let jobs: Vec<(usize, Vec<usize>)> = corpus
        .iter()
        .enumerate()
        .flat_map(|(i, o)| {
            let path: Vec<usize> = (0..o.depth()).map(|l| rng.gen_range(0..o.choice_count(l))).collect();
            (0..=path.len()).map(move |len| (i, path[..len].to_vec())).collect::<Vec<_>>()
        })
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(i, prefix)| match oracle_matches(&corpus[*i], prefix) {
            Ok(true) => None,
            Ok(false) => Some(format!("instance {i}, prefix {prefix:?}")),
            Err(e) => Some(format!("instance {i}, prefix {prefix:?}: {e}")),
        })
        .collect();
    let outcomes: u64 = corpus.iter().map(|o| o.instance().outcome_count()).max().unwrap_or(0);
    CriterionReport::new(
        9,
        "KS oracle equals brute-force expectation",
        vec![
            check("corpus", corpus.len() == KS_INSTANCES, format!("{} instances, at most {outcomes} outcomes", corpus.len())),
            check(
                "coefficients",
                failures.is_empty(),
                format!("{} prefixes, {} failures{}", jobs.len(), failures.len(), first_few(&failures)),
            ),
        ],
    )
}

// ---------------------------------------------------------------- 10

pub const ROUNDING_INSTANCES: usize = 20;

fn rounding(seed: u64) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 10);
    let corpus: Vec<KSOracle> = (0..ROUNDING_INSTANCES)
        .map(|_| {
            let m = rng.gen_range(2..=10);
            let n = rng.gen_range(2..=4);
            KSOracle::new(random_ks_instance(&mut rng, m, n, 3))
        })
        .collect();
    let options = RoundOptions { exhaustive_check: true, ..Default::default() };
    let mut checks = Vec::new();
    for eps in [rat(1, 2), rat(1, 8)] {
        let outcomes: Vec<std::result::Result<(), String>> = corpus
            .par_iter()
            .enumerate()
            .map(|(i, oracle)| {
                let r = round_family(oracle, &eps, &options).map_err(|e| format!("instance {i}: {e}"))?;
                let ex = r.exhaustive.as_ref().ok_or_else(|| format!("instance {i}: no exhaustive check"))?;
                if r.leaf_certified && r.within_epsilon && ex.root_dominates_best_leaf {
                    Ok(())
                } else {
                    Err(format!(
                        "instance {i}: leaf {} within {} root dominates {}",
                        r.leaf_certified, r.within_epsilon, ex.root_dominates_best_leaf
                    ))
                }
            })
            .collect();
        let failures: Vec<String> = outcomes.into_iter().filter_map(|o| o.err()).collect();
        checks.push(check(
            &format!("epsilon = {}", to_string(&eps)),
            failures.is_empty(),
            format!("{} instances, {} failures{}", corpus.len(), failures.len(), first_few(&failures)),
        ));
    }
    CriterionReport::new(10, "rounding stays within 1 + ε", checks)
}

// ---------------------------------------------------------------- 11

/// Every pair the other criteria construct.
pub fn generated_pairs() -> Vec<(String, Result<LowerBoundPair>)> {
    let mut out: Vec<(String, Result<LowerBoundPair>)> = Vec::new();
    for n in 2..=64 {
        out.push((format!("weak n = {n}"), weak_pair(n)));
    }
    for name in ["heawood", "C_8", "C_12", "Q_3"] {
        let g = high_girth_catalog(name).expect("catalog graph");
        out.push((format!("girth {name} t = 2"), girth_pair(&g, 2)));
    }
    for base_n in [2, 3] {
        for t in 1..=4 {
            let pair = weak_pair(base_n).and_then(|b| boosted_pair(&b, t));
            out.push((format!("boosted weak n = {base_n} t = {t}"), pair));
        }
    }
    for k in NOISY_KS {
        out.push((format!("noisy k = {k}"), noisy_pair(k, 2 * k)));
    }
    out
}

fn indistinguishability() -> CriterionReport {
    let pairs = generated_pairs();
    let checks = pairs
        .into_par_iter()
        .map(|(name, pair)| match pair.and_then(|p| indistinguishable(&p).map(|r| (p.k, r))) {
            Ok((k, (a, b))) => check(
                &name,
                a == b,
                format!("k = {k}: estimate {} ({})", to_decimal(&a.estimate, 6), a.branch),
            ),
            Err(e) => error_check(&name, e),
        })
        .collect();
    CriterionReport::new(11, "estimator cannot tell pairs apart", checks)
}
