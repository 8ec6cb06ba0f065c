use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use rootline::graphs::{
    best_signing_search, girth, high_girth_catalog, sample_sign_invariance, verify_sign_invariance_report,
    zero_diagonal, Graph,
};
use rootline::interlacing::{
    random_ks_instance, round_family, FamilyOracle, KSInstance, KSOracle, RoundOptions, SRInstance, SROracle,
};
use rootline::lowerbounds::{boosted_pair, girth_pair, noisy_pair, verify_pair, weak_pair, LowerBoundPair};
use rootline::maxroot::{approx_max_root_with, bracket_holds, BranchChoice};
use rootline::rational::{self, Rational};
use rootline::symfuncs::{profile_from_polynomial, SymmetricProfile};
use rootline::{selftest, Error, ExactPolynomial};

use crate::output::{decorate, emit};
use crate::{
    ApproxRootArgs, BranchArg, Cli, Command, GenFamilyArgs, GenPairArgs, InvarianceArgs, OptionalGraph, PairKind,
    RoundArgs, SelftestArgs,
};

enum Failure {
    Library(Error),
    Io { path: PathBuf, message: String },
    Json { path: PathBuf, message: String },
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        let body = match self {
            Failure::Library(Error::Certificate { check, detail, index }) => json!({
                "kind": "certificate",
                "check": check,
                "index": index,
                "message": detail,
            }),
            Failure::Library(e) => json!({"kind": "library", "message": e.to_string()}),
            Failure::Io { path, message } => json!({"kind": "io", "path": path, "message": message}),
            Failure::Json { path, message } => json!({"kind": "malformed-json", "path": path, "message": message}),
            Failure::Usage(message) => json!({"kind": "usage", "message": message}),
        };
        json!({ "error": body })
    }
}

/// A result value plus whether every certificate in it checked out.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn execute(cli: Cli) -> ExitCode {
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Run(args) => return run_manifest(&args.manifest, out),
        Command::ApproxRoot(a) => approx_root(&a),
        Command::GenPair(a) => gen_pair(&a),
        Command::VerifyPair(a) => verify(&a.input),
        Command::Girth(a) => girth_cmd(&a.graph),
        Command::SignSearch(a) => sign_search(&a.graph),
        Command::VerifyInvariance(a) => invariance(&a),
        Command::GenFamily(a) => gen_family(&a),
        Command::Round(a) => round(&a),
        Command::Selftest(a) => self_test(&a),
    };
    let (value, code) = match result {
        Ok(o) => (decorate(o.value), if o.ok { 0 } else { 1 }),
        Err(f) => {
            let v = f.to_json();
            eprintln!("rootline: {}", v["error"]["message"].as_str().unwrap_or("error"));
            (v, 1)
        }
    };
    if let Err(e) = emit(&value, out.as_deref()) {
        eprintln!("rootline: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn from_value<T: DeserializeOwned>(path: &Path, v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Json { path: path.to_path_buf(), message: e.to_string() })
}

fn read_value(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Json { path: path.to_path_buf(), message: e.to_string() })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    from_value(path, read_value(path)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

fn parse_all(items: &[String]) -> Result<Vec<Rational>, Failure> {
    items.iter().map(|s| rational::parse(s.trim()).map_err(Failure::from)).collect()
}

fn load_graph(g: &OptionalGraph) -> Result<Graph, Failure> {
    match (&g.graph, &g.graph_file) {
        (Some(name), _) => Ok(high_girth_catalog(name)?),
        (None, Some(path)) => read_json(path),
        (None, None) => Err(Failure::Usage("a graph is required: pass --graph NAME or --graph-file PATH".into())),
    }
}

fn approx_root(a: &ApproxRootArgs) -> CmdResult {
    let mut roots = None;
    let profile = if let Some(path) = &a.profile {
        let mut v = read_value(path)?;
        if let Value::Object(obj) = &mut v {
            match (obj.get("n").and_then(Value::as_u64), a.n) {
                (Some(file_n), Some(n)) if file_n != n as u64 => {
                    return Err(Failure::Usage(format!("--n {n} disagrees with n = {file_n} in the profile")))
                }
                (None, Some(n)) => {
                    obj.insert("n".into(), json!(n));
                }
                _ => {}
            }
        }
        let raw: SymmetricProfile = from_value(path, v)?;
        SymmetricProfile::new(raw.n, raw.e)?
    } else if let Some(path) = &a.coeffs {
        let p: ExactPolynomial = read_json(path)?;
        if let (Some(n), Some(d)) = (a.n, p.degree()) {
            if n != d {
                return Err(Failure::Usage(format!("--n {n} disagrees with the polynomial degree {d}")));
            }
        }
        profile_from_polynomial(&p, a.k.unwrap_or(0))?
    } else if !a.roots.is_empty() {
        let r = parse_all(&a.roots)?;
        let prof = SymmetricProfile::from_roots(&r, a.k.unwrap_or(0))?;
        roots = Some(r);
        prof
    } else if let Some(n) = a.n {
        SymmetricProfile::new(n, parse_all(&a.e)?)?
    } else {
        return Err(Failure::Usage("give --profile, --coeffs, --roots, or --n with --e".into()));
    };
    let profile = match a.k {
        Some(k) if k < profile.k() => profile.truncate(k)?,
        Some(k) if k > profile.k() => return Err(Error::OutOfRange { index: k, max: profile.k() }.into()),
        _ => profile,
    };
    let choice = match a.branch {
        BranchArg::Auto => BranchChoice::Auto,
        BranchArg::PowerSum => BranchChoice::PowerSum,
        BranchArg::ChebyshevLoop => BranchChoice::ChebyshevLoop,
    };
    let res = approx_max_root_with(&profile, choice)?;
    let upper = &res.factor * &res.estimate_upper;
    let mut value = json!({
        "n": profile.n,
        "k": profile.k(),
        "e": profile.e.iter().map(rational::to_string).collect::<Vec<_>>(),
        "branch": res.branch.to_string(),
        "estimate": rational::to_string(&res.estimate),
        "estimate_upper": rational::to_string(&res.estimate_upper),
        "factor": rational::to_string(&res.factor),
        "upper_bound": rational::to_string(&upper),
        "iterations": res.iterations,
    });
    let mut ok = true;
    if let Some(r) = roots {
        let holds = bracket_holds(&res, &r);
        ok = holds;
        value["max_root"] = json!(r.iter().max().map(rational::to_string));
        value["bracket_holds"] = json!(holds);
    }
    Ok(Outcome { value, ok })
}

fn gen_pair(a: &GenPairArgs) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--kind {:?} needs {flag}", a.kind).to_lowercase()));
    let pair = match a.kind {
        PairKind::Weak => weak_pair(need(a.n, "--n")?)?,
        PairKind::Girth => girth_pair(&load_graph(&a.graph)?, a.t.unwrap_or(2))?,
        PairKind::Boosted => boosted_pair(&weak_pair(a.n.unwrap_or(2))?, need(a.t, "--t")?)?,
        PairKind::Noisy => {
            let k = need(a.k, "--k")?;
            noisy_pair(k, a.n.unwrap_or(2 * k))?
        }
    };
    Ok(Outcome::ok(to_value(&pair)))
}

fn verify(path: &Path) -> CmdResult {
    let pair: LowerBoundPair = read_json(path)?;
    let report = verify_pair(&pair)?;
    let mut value = to_value(&report);
    value["verified"] = json!(true);
    Ok(Outcome::ok(value))
}

fn girth_cmd(g: &OptionalGraph) -> CmdResult {
    let g = load_graph(g)?;
    Ok(Outcome::ok(json!({
        "n": g.n(),
        "edge_count": g.edge_count(),
        "girth": girth(&g),
        "bipartite": g.is_bipartite(),
        "max_degree": g.max_degree(),
        "components": g.components(),
    })))
}

fn sign_search(g: &OptionalGraph) -> CmdResult {
    let g = load_graph(g)?;
    let search = best_signing_search(&g)?;
    let mut value = to_value(&search);
    value["girth"] = json!(girth(&g));
    Ok(Outcome::ok(value))
}

fn invariance(a: &InvarianceArgs) -> CmdResult {
    let g = load_graph(&a.graph)?;
    let d = if a.diagonal.is_empty() { zero_diagonal(&g) } else { parse_all(&a.diagonal)? };
    let gg = girth(&g);
    let k = match (a.k, gg) {
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => return Err(Failure::Usage("the graph is a forest; pass --k".into())),
    };
    let report = match a.samples {
        Some(s) => sample_sign_invariance(&g, &d, k, s, a.seed)?,
        None => verify_sign_invariance_report(&g, &d, k)?,
    };
    let mut value = to_value(&report);
    value["girth"] = json!(gg);
    Ok(Outcome::ok(value))
}

fn gen_family(a: &GenFamilyArgs) -> CmdResult {
    if a.m == 0 || a.n == 0 || a.support == 0 {
        return Err(Failure::Usage("--m, --n and --support must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let inst = random_ks_instance(&mut rng, a.m, a.n, a.support);
    let mut value = to_value(&inst);
    value["kind"] = json!("ks");
    Ok(Outcome::ok(value))
}

fn round(a: &RoundArgs) -> CmdResult {
    let mut v = read_value(&a.family)?;
    let kind = match v.as_object_mut().and_then(|o| o.remove("kind")) {
        Some(Value::String(s)) => s,
        Some(other) => return Err(Failure::Usage(format!("family kind must be a string, found {other}"))),
        None if v.get("supports").is_some() => "ks".into(),
        None => "sr".into(),
    };
    let oracle: Box<dyn FamilyOracle> = match kind.as_str() {
        "ks" => Box::new(KSOracle::new(from_value::<KSInstance>(&a.family, v)?)),
        "sr" => Box::new(SROracle::new(from_value::<SRInstance>(&a.family, v)?)),
        other => return Err(Failure::Usage(format!("unknown family kind `{other}` (expected ks or sr)"))),
    };
    let epsilon = rational::parse(&a.epsilon)?;
    let options = RoundOptions { exhaustive_check: a.exhaustive_check, ..RoundOptions::default() };
    let result = round_family(oracle.as_ref(), &epsilon, &options)?;
    let ok = result.leaf_certified
        && result.within_epsilon
        && result.exhaustive.as_ref().map_or(true, |e| e.root_dominates_best_leaf);
    let mut value = to_value(&result);
    if let Value::Object(obj) = &mut value {
        if let Some(steps) = obj.remove("steps") {
            obj.insert("per_step_log".into(), steps);
        }
        obj.insert("kind".into(), json!(kind));
    }
    Ok(Outcome { value, ok })
}

fn self_test(a: &SelftestArgs) -> CmdResult {
    let reports = if a.criterion.is_empty() {
        selftest::run_all(a.seed)
    } else {
        let mut ids = a.criterion.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.iter().map(|&id| selftest::run_criterion(id, a.seed)).collect::<Result<Vec<_>, _>>()?
    };
    for r in &reports {
        eprintln!("{}", r.summary());
    }
    let ok = reports.iter().all(|r| r.passed);
    Ok(Outcome { value: json!({"seed": a.seed, "passed": ok, "criteria": to_value(&reports)}), ok })
}

/// A subcommand invocation stored as JSON. Relative paths are resolved
/// against the manifest's directory.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunManifest {
    subcommand: String,
    /// Flag name to file path, e.g. `{"in": "pair.json"}`.
    #[serde(default)]
    inputs: BTreeMap<String, PathBuf>,
    /// Flag name to value; `true` is a bare flag, arrays repeat the flag.
    #[serde(default)]
    parameters: BTreeMap<String, Value>,
    seed: Option<u64>,
    output: Option<PathBuf>,
}

fn scalar_arg(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn manifest_argv(m: &RunManifest, base: &Path) -> Result<Vec<String>, String> {
    let resolve = |p: &Path| base.join(p).to_string_lossy().into_owned();
    let mut argv = vec!["rootline".to_string(), m.subcommand.clone()];
    for (flag, path) in &m.inputs {
        argv.push(format!("--{flag}"));
        argv.push(resolve(path));
    }
    for (flag, value) in &m.parameters {
        match value {
            Value::Bool(true) => argv.push(format!("--{flag}")),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    let s = scalar_arg(item).ok_or_else(|| format!("parameter `{flag}` has a non-scalar entry"))?;
                    argv.push(format!("--{flag}"));
                    argv.push(s);
                }
            }
            other => {
                let s = scalar_arg(other).ok_or_else(|| format!("parameter `{flag}` is not a scalar"))?;
                argv.push(format!("--{flag}"));
                argv.push(s);
            }
        }
    }
    if let Some(seed) = m.seed {
        argv.push("--seed".into());
        argv.push(seed.to_string());
    }
    if let Some(out) = &m.output {
        argv.push("--out".into());
        argv.push(resolve(out));
    }
    Ok(argv)
}

fn run_manifest(path: &Path, out: Option<PathBuf>) -> ExitCode {
    let fail = |f: Failure| {
        let v = f.to_json();
        eprintln!("rootline: {}", v["error"]["message"].as_str().unwrap_or("error"));
        let _ = emit(&v, out.as_deref());
        ExitCode::from(1)
    };
    let manifest: RunManifest = match read_json(path) {
        Ok(m) => m,
        Err(f) => return fail(f),
    };
    if manifest.subcommand == "run" {
        return fail(Failure::Usage("manifests cannot run other manifests".into()));
    }
    let base = path.parent().unwrap_or(Path::new(""));
    let argv = match manifest_argv(&manifest, base) {
        Ok(a) => a,
        Err(msg) => return fail(Failure::Usage(msg)),
    };
    match Cli::try_parse_from(&argv) {
        Ok(mut cli) => {
            if cli.out.is_none() {
                cli.out = out;
            }
            execute(cli)
        }
        Err(e) => {
            let _ = e.print();
            ExitCode::from(2)
        }
    }
}
