//! The `lietype` command line: JSON results on stdout, a short summary on stderr.
//!
//! Exit codes: 0 success, 1 failed verification or runtime error, 2 usage error.

pub mod cache;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use lietype_core::coincidence::{
    decompose, enumerate_two_factor_pairs, two_factor_families, verify_group_axioms, CoincidencePair,
};
use lietype_core::compalg::verify_compalg;
use lietype_core::orders::{counter_sweep, order_factored, recognize_order};
use lietype_core::reconstruct::{reconstruct, verify_determination};
use lietype_core::weylchar::{self, charpolys, invariant_profile, mu, mu_joint, mu_prime};
use lietype_core::{parse_type, CharPolyFamily, CycloProduct, Letter, SemisimpleType, SimpleType};

pub use cache::{cache_load, cache_store, CacheError};

#[derive(Parser, Debug)]
#[command(name = "lietype", version, about = "Weyl group characteristic polynomials and orders of split groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn type_arg(s: &str) -> Result<SemisimpleType, String> {
    parse_type(s).map_err(|e| e.to_string())
}

fn pair_arg(s: &str) -> Result<CoincidencePair, String> {
    s.parse().map_err(|e: lietype_core::CoincidenceError| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order of the group over F_q.
    Order {
        #[arg(long = "type", value_parser = type_arg)]
        ty: SemisimpleType,
        #[arg(long)]
        q: u64,
        /// Also print q^N ∏(q^d - 1) and the prime-to-p factorization.
        #[arg(long)]
        factored: bool,
    },
    /// Characteristic polynomials of the Weyl group with multiplicities.
    Charpolys {
        #[arg(long = "type", value_parser = type_arg)]
        ty: SemisimpleType,
        /// Directory of cached exceptional tables; missing ones are written there.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// The invariants μ_i, μ'_i and μ_{i,j}.
    Invariants {
        #[arg(long = "type", value_parser = type_arg)]
        ty: SemisimpleType,
        #[arg(long)]
        mu: Option<u32>,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        joint: Option<Vec<u32>>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Recover a type from its set of characteristic polynomials.
    Reconstruct {
        /// JSON file `{"rank": n, "polys": [{"d": t, ...}, ...]}`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Reduced pairs of types with equal orders over every field.
    Coincide {
        #[arg(long, default_value_t = 2)]
        factors: u32,
        #[arg(long, default_value_t = 20)]
        max_rank: u32,
    },
    /// Write a pair `L:R` as a product of generators.
    Decompose {
        #[arg(long, value_parser = pair_arg)]
        pair: CoincidencePair,
    },
    /// All (type, q) with the given group order.
    Recognize {
        #[arg(long)]
        order: BigUint,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
    },
    /// Run one of the built-in verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_rank: Option<u32>,
        /// Prime power bound for `prop-counter`.
        #[arg(long, default_value_t = 16)]
        q_bound: u64,
        /// Sample count for the randomized suites.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Determination,
    PropCounter,
    Pairs,
    GroupAxioms,
    Compalg,
}

enum Outcome {
    Ok(Value, String),
    Failed(Value, String),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Runs the command line with `argv` (program name first), writing to the
/// process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let (value, summary, code) = match execute(cli.command) {
        Ok(Outcome::Ok(v, s)) => (Some(v), s, 0),
        Ok(Outcome::Failed(v, s)) => (Some(v), s, 1),
        Err(CliError::Usage(s)) => (None, format!("error: {s}"), 2),
        Err(CliError::Runtime(s)) => (None, format!("error: {s}"), 1),
    };
    if let Some(v) = value {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
    }
    let _ = writeln!(err, "{summary}");
    code
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Order { ty, q, factored } => order(&ty, q, factored),
        Command::Charpolys { ty, cache } => charpolys_cmd(&ty, cache.as_deref()),
        Command::Invariants { ty, mu, joint, cache } => invariants(&ty, mu, joint, cache.as_deref()),
        Command::Reconstruct { input, cache } => reconstruct_cmd(&input, cache.as_deref()),
        Command::Coincide { factors, max_rank } => coincide(factors, max_rank),
        Command::Decompose { pair } => decompose_cmd(&pair),
        Command::Recognize { order, max_rank } => recognize(&order, max_rank),
        Command::Verify {
            suite,
            max_rank,
            q_bound,
            samples,
            seed,
        } => verify(suite, max_rank, q_bound, samples, seed),
    }
}

fn order(ty: &SemisimpleType, q: u64, factored: bool) -> Result<Outcome, CliError> {
    let f = order_factored(ty, q).map_err(|e| CliError::Usage(e.to_string()))?;
    let value = f.value();
    let mut v = json!({
        "type": ty.to_string(),
        "q": q,
        "order": value.to_string(),
    });
    if factored {
        let primes: BTreeMap<String, u32> = f
            .prime_to_p_factorization()?
            .into_iter()
            .map(|(p, k)| (p.to_string(), k))
            .collect();
        v["factored"] = json!(f.to_string());
        v["n"] = json!(f.n_exp);
        v["degrees"] = json!(f.degrees);
        v["prime_to_p"] = json!(primes);
    }
    Ok(Outcome::Ok(v, format!("|{ty}(F_{q})| = {value}")))
}

/// Loads or computes the tables of the exceptional factors of `ty`, using `dir`
/// as a cache when given.
fn prepare_tables(ty: &SemisimpleType, dir: Option<&Path>) -> Result<(), CliError> {
    let exceptional: BTreeSet<SimpleType> = ty
        .factors()
        .iter()
        .copied()
        .filter(|f| matches!(f.letter(), Letter::E | Letter::F | Letter::G))
        .collect();
    for f in exceptional {
        let label = SemisimpleType::from(f);
        if let Some(dir) = dir {
            if let Some(table) = cache_load(&label, dir)? {
                if !weylchar::is_table_cached(f) {
                    weylchar::register_table(table)?;
                }
                continue;
            }
        }
        let table = weylchar::charpolys_exceptional(f)?;
        if let Some(dir) = dir {
            cache_store(&table, dir)?;
        }
    }
    Ok(())
}

fn charpolys_cmd(ty: &SemisimpleType, dir: Option<&Path>) -> Result<Outcome, CliError> {
    prepare_tables(ty, dir)?;
    let table = charpolys(ty, None)?;
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|(p, c)| json!({"exps": p, "count": c.to_string()}))
        .collect();
    let summary = format!(
        "{ty}: {} distinct characteristic polynomials over {} elements",
        entries.len(),
        table.group_order()
    );
    Ok(Outcome::Ok(
        json!({
            "type": ty.to_string(),
            "group_order": table.group_order().to_string(),
            "distinct": entries.len(),
            "entries": entries,
        }),
        summary,
    ))
}

/// Values that need a missing E8 table become `None` (JSON null).
fn resolved(r: Result<u32, weylchar::WeylError>) -> Result<Option<u32>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(weylchar::WeylError::Unresolvable { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn shown(v: Option<u32>) -> String {
    v.map_or_else(|| "unresolved without an E8 table".to_string(), |v| v.to_string())
}

fn invariants(
    ty: &SemisimpleType,
    i: Option<u32>,
    joint: Option<Vec<u32>>,
    dir: Option<&Path>,
) -> Result<Outcome, CliError> {
    if ty.contains(SimpleType::e(8)) {
        // E8 only contributes degree data unless a table is available.
        if let Some(dir) = dir {
            if let Some(table) = cache_load(&SimpleType::e(8).into(), dir)? {
                weylchar::register_table(table)?;
            }
        }
    }
    let others: Vec<SimpleType> = ty.factors().iter().copied().filter(|&f| f != SimpleType::e(8)).collect();
    prepare_tables(&SemisimpleType::new(others), dir)?;
    let mut v = json!({"type": ty.to_string()});
    let mut summary = Vec::new();
    if let Some(i) = i {
        if i == 0 {
            return Err(CliError::Usage("--mu needs a positive index".into()));
        }
        let m = mu(ty, i);
        v["mu"] = json!({"i": i, "value": m});
        summary.push(format!("mu_{i} = {m}"));
        if i > 2 {
            let mp = resolved(mu_prime(ty, i, None))?;
            v["mu_prime"] = json!({"i": i, "value": mp});
            summary.push(format!("mu'_{i} = {}", shown(mp)));
        }
    }
    if let Some(j) = joint {
        let (a, b) = (j[0], j[1]);
        if a == b || a == 0 || b == 0 {
            return Err(CliError::Usage(format!("--joint needs distinct positive indices, got {a} {b}")));
        }
        let m = resolved(mu_joint(ty, a, b, None))?;
        v["mu_joint"] = json!({"i": a, "j": b, "value": m});
        summary.push(format!("mu_({a},{b}) = {}", shown(m)));
    }
    if summary.is_empty() {
        let profile = invariant_profile(ty, None)?;
        v["profile"] = serde_json::to_value(&profile)?;
        summary.push(format!(
            "profile up to index {}, {} unresolved entries",
            profile.index_bound,
            profile.unresolved_mu_prime.len() + profile.unresolved_mu_joint.len()
        ));
    }
    Ok(Outcome::Ok(v, format!("{ty}: {}", summary.join(", "))))
}

fn parse_family(text: &str) -> Result<CharPolyFamily, CliError> {
    let usage = |m: String| CliError::Usage(format!("family input: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| usage(e.to_string()))?;
    let rank = v["rank"]
        .as_u64()
        .and_then(|r| u32::try_from(r).ok())
        .ok_or_else(|| usage("\"rank\" must be a non-negative integer".into()))?;
    let polys = v["polys"]
        .as_array()
        .ok_or_else(|| usage("\"polys\" must be a list".into()))?;
    let mut set = BTreeSet::new();
    for p in polys {
        let obj = p.as_object().ok_or_else(|| usage(format!("{p} is not an object")))?;
        let mut pairs = Vec::new();
        for (d, t) in obj {
            let d: u32 = d.parse().map_err(|_| usage(format!("index {d:?} is not an integer")))?;
            let t = t
                .as_u64()
                .and_then(|t| u32::try_from(t).ok())
                .ok_or_else(|| usage(format!("exponent {t} is not an integer")))?;
            pairs.push((d, t));
        }
        set.insert(CycloProduct::from_pairs(pairs).map_err(|e| usage(e.to_string()))?);
    }
    Ok(CharPolyFamily::new(rank, set)?)
}

fn reconstruct_cmd(input: &Path, dir: Option<&Path>) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
    let family = parse_family(&text)?;
    if let Some(dir) = dir {
        if let Some(table) = cache_load(&SimpleType::e(8).into(), dir)? {
            weylchar::register_table(table)?;
        }
    }
    let ty = reconstruct(&family)?;
    Ok(Outcome::Ok(
        json!({"type": ty.to_string(), "degrees": ty.degrees(), "polys": family.polys().len()}),
        format!("reconstructed {ty}"),
    ))
}

fn coincide(factors: u32, max_rank: u32) -> Result<Outcome, CliError> {
    if factors != 2 {
        return Err(CliError::Usage(format!("only --factors 2 is supported, got {factors}")));
    }
    let pairs = enumerate_two_factor_pairs(max_rank);
    let list: Vec<Value> = pairs
        .iter()
        .map(|p| json!({"pair": p, "left": p.left(), "right": p.right(), "degrees": p.degrees()}))
        .collect();
    Ok(Outcome::Ok(
        json!({"factors": 2, "max_rank": max_rank, "count": pairs.len(), "pairs": list}),
        format!("{} reduced two-factor pairs up to rank {max_rank}", pairs.len()),
    ))
}

fn decompose_cmd(pair: &CoincidencePair) -> Result<Outcome, CliError> {
    let word = decompose(pair)?;
    let value = word.evaluate()?;
    let v = json!({"pair": pair, "word": word, "evaluates_to": value});
    if value != *pair {
        return Ok(Outcome::Failed(v, format!("word {word} evaluates to {value}, not {pair}")));
    }
    Ok(Outcome::Ok(v, format!("{pair} = {word}")))
}

fn recognize(m: &BigUint, max_rank: u32) -> Result<Outcome, CliError> {
    let found = recognize_order(m, max_rank)?;
    let list: Vec<Value> = found
        .iter()
        .map(|(t, q)| json!({"type": t, "q": q.value()}))
        .collect();
    Ok(Outcome::Ok(
        json!({"order": m.to_string(), "max_rank": max_rank, "groups": list}),
        format!("{} group(s) of order {m} up to rank {max_rank}", found.len()),
    ))
}

fn verify(
    suite: Suite,
    max_rank: Option<u32>,
    q_bound: u64,
    samples: Option<usize>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let finish = |v: Value, ok: bool, summary: String| {
        Ok(if ok {
            Outcome::Ok(v, format!("PASS: {summary}"))
        } else {
            Outcome::Failed(v, format!("FAIL: {summary}"))
        })
    };
    match suite {
        Suite::Determination => {
            let bound = max_rank.unwrap_or(8);
            let letters = [Letter::A, Letter::B, Letter::D, Letter::G, Letter::F, Letter::E];
            let report = verify_determination(bound, &letters)?;
            let summary = format!(
                "{} types up to rank {bound}, {} violations",
                report.types_checked,
                report.violations()
            );
            finish(serde_json::to_value(&report)?, report.violations() == 0, summary)
        }
        Suite::PropCounter => {
            let bound = max_rank.unwrap_or(6);
            let report = counter_sweep(bound, q_bound)?;
            let summary = format!(
                "{} cases, {} exceptions, {} disagree with the exception list",
                report.cases_checked,
                report.exceptions_found.len(),
                report.mismatches.len()
            );
            finish(serde_json::to_value(&report)?, report.mismatches.is_empty(), summary)
        }
        Suite::Pairs => {
            let bound = max_rank.unwrap_or(20);
            let found: BTreeSet<CoincidencePair> = enumerate_two_factor_pairs(bound).into_iter().collect();
            let families = two_factor_families(bound);
            let extra: Vec<_> = found.difference(&families).collect();
            let missing: Vec<_> = families.difference(&found).collect();
            let ok = extra.is_empty() && missing.is_empty();
            let summary = format!("{} pairs up to rank {bound}, {} unexplained, {} missing", found.len(), extra.len(), missing.len());
            finish(
                json!({"max_rank": bound, "found": found, "not_in_families": extra, "missing": missing}),
                ok,
                summary,
            )
        }
        Suite::GroupAxioms => {
            let bound = max_rank.unwrap_or(20);
            let report = verify_group_axioms(samples.unwrap_or(100), bound, seed)?;
            let summary = format!("{} samples, {} violations", report.samples, report.violations.len());
            finish(serde_json::to_value(&report)?, report.violations.is_empty(), summary)
        }
        Suite::Compalg => {
            let report = verify_compalg(samples.unwrap_or(1000), seed)?;
            let summary = format!("{} checks, {} failures", report.checks.len(), report.failures());
            finish(serde_json::to_value(&report)?, report.passed(), summary)
        }
    }
}
