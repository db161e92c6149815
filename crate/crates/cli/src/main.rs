//! `gwmirror`: virtual structure constants, two-point invariants and exact
//! verification runs from the command line.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 when two exact
//! computations that must agree do not, 1 on I/O or cache failures.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use gwmirror::algebra::{format_rational, set_default_gcd_threshold};
use gwmirror::io::{table_to_json, CacheFile};
use gwmirror::localization::gw_value;
use gwmirror::mirror::{verify_transform, verify_transform_at};
use gwmirror::vsc::{compare_pipelines, comparison_grid, vsc_recursive, vsc_residue, PipelineComparison};
use gwmirror::{
    cache_read, cache_write, identity_suite, Error, ExactRational, GwRequest, IdentityReport, Pipeline, Provenance,
    TransformReport, VscKey, VscTable,
};

#[derive(Parser)]
#[command(name = "gwmirror", version, about = "Exact virtual structure constants and mirror transformation checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for residue evaluation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Term count above which normalization runs a full polynomial gcd.
    #[arg(long, global = true, default_value_t = 500)]
    gcd_threshold: usize,

    /// Cache file that computed tables are merged into.
    #[arg(long, global = true, env = "GWMIRROR_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Virtual structure constants L(N, k, d; n).
    Vsc(VscArgs),
    /// Two-point invariants <O_{h^a} O_{h^b}>_{0,d}.
    Gw(GwArgs),
    /// Exact verification suites.
    Verify(VerifyArgs),
    /// Build or inspect the cache file.
    Cache(CacheArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VscPipeline {
    Recursion,
    Residue,
    Both,
}

#[derive(Args)]
struct VscArgs {
    #[arg(long = "N")]
    big_n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: u32,
    /// A single index; the whole row when omitted.
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, value_enum, default_value_t = VscPipeline::Recursion)]
    pipeline: VscPipeline,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GwPipeline {
    Residue,
    Equivariant,
}

#[derive(Args)]
struct GwArgs {
    #[arg(long = "N")]
    big_n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    d: u32,
    /// Selects a = N - 2 - n and b = n - 1 + (N - k) d.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["a", "b"], required_unless_present_all = ["a", "b"])]
    n: Option<i64>,
    #[arg(long, requires = "b")]
    a: Option<u32>,
    #[arg(long, requires = "a")]
    b: Option<u32>,
    #[arg(long, value_enum, default_value_t = GwPipeline::Residue)]
    pipeline: GwPipeline,
    /// Shifts the prime characters used by the equivariant pipeline.
    #[arg(long, default_value_t = 0)]
    lambda_seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Theorem1,
    Theorem2,
    Identities,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long, default_value_t = 6)]
    k_max: u32,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    d_max: u32,
    /// Restricts theorem2 to one (N, k, d); all three are required together.
    #[arg(long = "N", requires_all = ["k", "d"])]
    big_n: Option<u32>,
    #[arg(long, requires_all = ["big_n", "d"])]
    k: Option<u32>,
    #[arg(long, requires_all = ["big_n", "k"], value_parser = clap::value_parser!(u32).range(1..=3))]
    d: Option<u32>,
    /// Also writes the JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Computes the grid 1 <= k <= k-max, 3 <= N <= 2k + 2 by both pipelines
    /// and writes it to the cache.
    Build {
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
        d_max: u32,
    },
    /// Prints the cached table.
    Show,
    /// Recomputes every cached entry by the recursion.
    Check,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Range(_) | Error::UnsupportedDegree(_) | Error::OrderMismatch(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    set_default_gcd_threshold(cli.gcd_threshold);
    let result = match &cli.command {
        Command::Vsc(args) => cmd_vsc(&cli, args),
        Command::Gw(args) => cmd_gw(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Cache(args) => cmd_cache(&cli, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn write_csv<I>(header: &[&str], rows: I) -> Outcome
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    let csv_err = |e: csv::Error| Failure::Runtime(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn print_table(table: &VscTable, format: Format) -> Outcome {
    match format {
        Format::Text => {
            let values: Vec<String> = table.entries().map(|(_, e)| format_rational(&e.value)).collect();
            println!("{}", values.join(" "));
            Ok(())
        }
        Format::Json => {
            print!("{}", table_to_json(table));
            Ok(())
        }
        Format::Csv => write_csv(
            &["N", "k", "d", "n", "value", "provenance"],
            table.entries().map(|(key, e)| {
                let prov = serde_json::to_value(e.provenance).ok().and_then(|v| v.as_str().map(String::from));
                vec![
                    key.big_n.to_string(),
                    key.k.to_string(),
                    key.d.to_string(),
                    key.n.to_string(),
                    format_rational(&e.value),
                    prov.unwrap_or_default(),
                ]
            }),
        ),
    }
}

/// Merges `table` into the cache file, if one is configured.
fn store(cli: &Cli, table: VscTable) -> Outcome {
    let Some(path) = &cli.cache else { return Ok(()) };
    let mut cached = load_or_empty(path)?;
    cached.merge(table).map_err(|e| Failure::Mismatch(format!("cache disagrees with new values: {e}")))?;
    cache_write(&cached, path)?;
    Ok(())
}

fn load_or_empty(path: &Path) -> Result<VscTable, Failure> {
    if path.exists() {
        Ok(cache_read(path)?)
    } else {
        Ok(VscTable::new())
    }
}

fn cmd_vsc(cli: &Cli, args: &VscArgs) -> Outcome {
    let row = VscKey::new(args.big_n, args.k, args.d, 0);
    let keys: Vec<VscKey> = match args.n {
        Some(n) => vec![VscKey::new(args.big_n, args.k, args.d, n)],
        None => (0..=row.window_top()).map(|n| VscKey::new(args.big_n, args.k, args.d, n)).collect(),
    };
    let mut scratch = VscTable::new();
    let recursion: Vec<ExactRational> = match args.pipeline {
        VscPipeline::Residue => Vec::new(),
        _ => keys.iter().map(|&key| vsc_recursive(key, &mut scratch)).collect::<Result<_, _>>()?,
    };
    let residue: Vec<ExactRational> = match args.pipeline {
        VscPipeline::Recursion => Vec::new(),
        _ => keys.par_iter().map(|&key| vsc_residue(key)).collect::<Result<_, _>>()?,
    };
    let (values, provenance) = match args.pipeline {
        VscPipeline::Recursion => (recursion, Provenance::Recursion),
        VscPipeline::Residue => (residue, Provenance::Residue),
        VscPipeline::Both => {
            let bad: Vec<String> = keys
                .iter()
                .zip(recursion.iter().zip(&residue))
                .filter(|(_, (r, s))| r != s)
                .map(|(key, (r, s))| format!("{key}: recursion {} residue {}", format_rational(r), format_rational(s)))
                .collect();
            if !bad.is_empty() {
                return Err(Failure::Mismatch(bad.join("; ")));
            }
            (recursion, Provenance::Both)
        }
    };

    let mut table = VscTable::new();
    for (&key, value) in keys.iter().zip(&values) {
        if key.in_window() {
            table.record(key, value.clone(), provenance)?;
        }
    }
    if args.n.is_some() && cli.format == Format::Text {
        println!("{}", format_rational(&values[0]));
    } else {
        print_table(&table, cli.format)?;
    }
    store(cli, table)
}

fn cmd_gw(cli: &Cli, args: &GwArgs) -> Outcome {
    let req = match (args.n, args.a, args.b) {
        (Some(n), _, _) => GwRequest::from_n(args.big_n, args.k, args.d, n)?,
        (None, Some(a), Some(b)) => GwRequest::new(args.big_n, args.k, args.d, a, b),
        _ => return Err(Failure::Usage("give either --n or both --a and --b".into())),
    };
    let pipeline = match args.pipeline {
        GwPipeline::Residue => Pipeline::Residue,
        GwPipeline::Equivariant => Pipeline::Equivariant,
    };
    let value = gw_value(&req, pipeline, args.lambda_seed)?;
    match cli.format {
        Format::Text => {
            println!("{}", format_rational(&value.value));
            Ok(())
        }
        Format::Json => print_json(&value),
        Format::Csv => write_csv(
            &["N", "k", "d", "a", "b", "pipeline", "value"],
            [vec![
                req.big_n.to_string(),
                req.k.to_string(),
                req.d.to_string(),
                req.a.to_string(),
                req.b.to_string(),
                match pipeline {
                    Pipeline::Residue => "residue".into(),
                    Pipeline::Equivariant => "equivariant".into(),
                },
                format_rational(&value.value),
            ]],
        ),
    }
}

#[derive(Serialize)]
struct RecursionReport {
    k_max: u32,
    d_max: u32,
    keys: usize,
    passed: bool,
    mismatches: Vec<PipelineComparison>,
}

#[derive(Serialize)]
struct TransformSuiteReport {
    passed: bool,
    instances: Vec<TransformReport>,
}

#[derive(Serialize)]
struct IdentitiesReport {
    passed: bool,
    #[serde(flatten)]
    report: IdentityReport,
}

#[derive(Default, Serialize)]
struct VerifyReport {
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem1: Option<RecursionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem2: Option<TransformSuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<IdentitiesReport>,
}

/// The instances checked when no `(N, k, d)` is given.
const TRANSFORM_DEFAULTS: [(u32, u32, u32, Option<i64>); 8] = [
    (5, 6, 1, None),
    (5, 6, 2, Some(3)),
    (7, 9, 2, Some(5)),
    (6, 7, 3, Some(4)),
    (5, 5, 1, None),
    (5, 5, 2, None),
    (5, 5, 3, None),
    (6, 5, 1, None),
];

fn recursion_suite(cli: &Cli, args: &VerifyArgs, lines: &mut Vec<String>) -> Result<RecursionReport, Failure> {
    let rows = compare_pipelines(&comparison_grid(args.k_max), args.d_max)?;
    let passed = rows.iter().all(PipelineComparison::agrees);
    let mut table = VscTable::new();
    for r in rows.iter().filter(|r| r.agrees()) {
        table.record(r.key, r.recursion.clone(), Provenance::Both)?;
    }
    let mismatches: Vec<PipelineComparison> = rows.iter().filter(|r| !r.agrees()).cloned().collect();
    lines.push(format!(
        "{} theorem1: {} keys, k <= {}, d <= {}, {} mismatches",
        tag(passed),
        rows.len(),
        args.k_max,
        args.d_max,
        mismatches.len()
    ));
    for m in &mismatches {
        lines.push(format!(
            "  {}: recursion {} residue {}",
            m.key,
            format_rational(&m.recursion),
            format_rational(&m.residue)
        ));
    }
    store(cli, table)?;
    Ok(RecursionReport { k_max: args.k_max, d_max: args.d_max, keys: rows.len(), passed, mismatches })
}

fn transform_suite(args: &VerifyArgs, lines: &mut Vec<String>) -> Result<TransformSuiteReport, Failure> {
    let cases: Vec<(u32, u32, u32, Option<i64>)> = match (args.big_n, args.k, args.d) {
        (Some(big_n), Some(k), Some(d)) => vec![(big_n, k, d, None)],
        _ => TRANSFORM_DEFAULTS.to_vec(),
    };
    let mut instances = Vec::new();
    for (big_n, k, d, n) in cases {
        match n {
            Some(n) => instances.extend(verify_transform_at(big_n, k, d, &[n])?),
            None => instances.extend(verify_transform(big_n, k, d)?),
        }
    }
    let passed = instances.iter().all(|r| r.equal);
    lines.push(format!("{} theorem2: {} instances", tag(passed), instances.len()));
    for r in &instances {
        lines.push(format!(
            "  {} {}: invariant/k {} transform {}",
            tag(r.equal),
            r.key,
            format_rational(&r.lhs),
            format_rational(&r.rhs)
        ));
    }
    Ok(TransformSuiteReport { passed, instances })
}

fn identities(lines: &mut Vec<String>) -> IdentitiesReport {
    let report = identity_suite();
    let passed = report.passed();
    lines.push(format!("{} identities", tag(passed)));
    for c in &report.checks {
        lines.push(format!("  {} {} ({} instances)", tag(c.passed()), c.name, c.instances));
        for f in &c.failures {
            lines.push(format!("    failed at {f}"));
        }
    }
    IdentitiesReport { passed, report }
}

fn tag(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Outcome {
    let mut lines = Vec::new();
    let mut report = VerifyReport::default();
    let all = args.target == Target::All;
    if all || args.target == Target::Theorem1 {
        report.theorem1 = Some(recursion_suite(cli, args, &mut lines)?);
    }
    if all || args.target == Target::Theorem2 {
        report.theorem2 = Some(transform_suite(args, &mut lines)?);
    }
    if all || args.target == Target::Identities {
        report.identities = Some(identities(&mut lines));
    }
    report.passed = report.theorem1.as_ref().is_none_or(|r| r.passed)
        && report.theorem2.as_ref().is_none_or(|r| r.passed)
        && report.identities.as_ref().is_none_or(|r| r.passed);

    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.to_string()))?;
    if let Some(path) = &args.report {
        gwmirror::io::write_atomic(path, format!("{json}\n").as_bytes())?;
    }
    match cli.format {
        Format::Json => println!("{json}"),
        _ => {
            let mut out = io::stdout().lock();
            for line in &lines {
                writeln!(out, "{line}")?;
            }
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Mismatch("verification failed".into()))
    }
}

fn cmd_cache(cli: &Cli, args: &CacheArgs) -> Outcome {
    let path = cli
        .cache
        .as_deref()
        .ok_or_else(|| Failure::Usage("no cache file: pass --cache or set GWMIRROR_CACHE".into()))?;
    match &args.action {
        CacheAction::Build { k_max, d_max } => {
            let rows = compare_pipelines(&comparison_grid(*k_max), *d_max)?;
            let mut table = VscTable::new();
            let mut bad = Vec::new();
            for r in rows {
                if r.agrees() {
                    table.record(r.key, r.recursion, Provenance::Both)?;
                } else {
                    bad.push(r.key.to_string());
                }
            }
            if !bad.is_empty() {
                return Err(Failure::Mismatch(bad.join("; ")));
            }
            let mut cached = load_or_empty(path)?;
            cached.merge(table).map_err(|e| Failure::Mismatch(e.to_string()))?;
            cache_write(&cached, path)?;
            println!("{} entries in {}", cached.len(), path.display());
            Ok(())
        }
        CacheAction::Show => {
            let table = cache_read(path)?;
            if cli.format != Format::Text {
                return print_table(&table, cli.format);
            }
            let mut rows: Vec<((u32, u32, u32), Vec<String>)> = Vec::new();
            for (key, e) in table.entries() {
                let id = (key.big_n, key.k, key.d);
                match rows.last_mut() {
                    Some((last, values)) if *last == id => values.push(format_rational(&e.value)),
                    _ => rows.push((id, vec![format_rational(&e.value)])),
                }
            }
            let mut out = io::stdout().lock();
            for ((big_n, k, d), values) in rows {
                writeln!(out, "N={big_n} k={k} d={d}: {}", values.join(" "))?;
            }
            Ok(())
        }
        CacheAction::Check => {
            let file = CacheFile::from_table(&cache_read(path)?);
            let mut scratch = VscTable::new();
            let mut bad = Vec::new();
            for entry in &file.entries {
                let expected = vsc_recursive(entry.key(), &mut scratch)?;
                if entry.value.to_rational().as_ref() != Some(&expected) {
                    bad.push(entry.key().to_string());
                }
            }
            if !bad.is_empty() {
                return Err(Failure::Mismatch(format!("cached values differ from the recursion at {}", bad.join("; "))));
            }
            println!("{} entries agree with the recursion", file.entries.len());
            Ok(())
        }
    }
}
