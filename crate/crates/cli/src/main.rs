use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use idforge::algebras::{build_ly, AnyAlgebra, StructureConstantAlgebra, VerifyMode};
use idforge::exactfield::{FieldDescriptor, QuadSqrt2};
use idforge::freeops::{catalog_identity_in, OpSelection};
use idforge::idfinder::{
    default_known, new_identities_with, translated_ly_identities, IdentityReport, KnownIdentity, OrbitStrategy, SearchConfig,
};
use idforge_cli::io::{self, Family};
use idforge_cli::reproduce::{self, Options, Suite};
use serde_json::json;

/// Exit statuses.
const MISMATCH: u8 = 1;
const USAGE: u8 = 2;
const RECONSTRUCTION: u8 = 3;

#[derive(Parser)]
#[command(name = "idforge", version, about = "Polynomial identities of Lie-Yamaguti type algebras")]
struct Cli {
    /// Worker threads; falls back to IDFORGE_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write its structure constants as JSON.
    Build(BuildArgs),
    /// Check named identities on an algebra file.
    Verify(VerifyArgs),
    /// Search for new identities of one degree.
    Find(FindArgs),
    /// Write catalog identities as a known-identity file.
    Catalog(CatalogArgs),
    /// Recompute the reference results and compare.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// ly, ljy, ly3-transvection, ly4-tensor or jordan-h
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// gfp:P, gfp:P:sqrt2=R or q-sqrt2
    #[arg(long, default_value = "gfp:103:sqrt2=38")]
    field: FieldDescriptor,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    algebra: PathBuf,
    /// Suites (LY, LieJordan, LJY3-deg5, LJY3-deg6) or catalog names,
    /// comma separated.
    #[arg(long)]
    identities: String,
    #[arg(long, value_enum, default_value = "random")]
    mode: ModeArg,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct FindArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    degree: usize,
    /// binary, ternary or mixed
    #[arg(long, default_value = "mixed")]
    ops: OpSelection,
    #[arg(long, default_value_t = 103)]
    prime: u32,
    /// Residue chosen for √2; the smaller root when absent.
    #[arg(long)]
    sqrt2: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    stabilize: usize,
    /// Iteration cap; max(200, 2 ceil(q/m) + s) when absent.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    orbit: OrbitArg,
    /// JSON list of {name, poly}; the built-in catalog when absent.
    #[arg(long)]
    known: Option<PathBuf>,
    /// Also treat as known the degree-d identities of LY_n rewritten in
    /// the operations of LJY_n (n read from the algebra file).
    #[arg(long)]
    rewritten_ly: bool,
    /// JSON report file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitArg {
    Full,
    Spin,
    Auto,
}

#[derive(Args)]
struct CatalogArgs {
    /// Suites or catalog names, comma separated.
    #[arg(long)]
    names: String,
    /// ly or ljy
    #[arg(long, default_value = "ly")]
    ops: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// ly4, ljy, properties or all
    #[arg(long)]
    suite: Suite,
    #[arg(long)]
    out_dir: PathBuf,
    /// Include the slower optional degree-6 runs.
    #[arg(long)]
    extended: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// An error with the exit status it maps to.
struct Failure(u8, anyhow::Error);

fn usage(e: anyhow::Error) -> Failure {
    Failure(USAGE, e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = io::configure_threads(cli.threads).map_err(usage).and_then(|_| match cli.command {
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Find(a) => find(a),
        Command::Catalog(a) => catalog(a),
        Command::Reproduce(a) => run_reproduce(a),
    });
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn emit(out: Option<&Path>, v: &serde_json::Value) -> Result<()> {
    match out {
        Some(p) => io::write_json(p, v),
        None => {
            println!("{}", serde_json::to_string_pretty(v)?);
            Ok(())
        }
    }
}

fn build(a: BuildArgs) -> Result<(), Failure> {
    let alg = io::build_family(a.family, a.n, a.field).map_err(usage)?;
    emit(a.out.as_deref(), &alg.to_json()).map_err(usage)?;
    if a.out.is_some() {
        println!("{}: dimension {} over {}", alg.name(), alg.dim(), alg.descriptor());
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let alg = io::load_algebra(&a.algebra).map_err(usage)?;
    let names = io::identity_names(&a.identities).map_err(usage)?;
    let ids = names
        .iter()
        .map(|n| Ok((n.clone(), catalog_identity_in(n, alg.ops()).with_context(|| format!("{n} over {}", alg.ops().name()))?)))
        .collect::<Result<Vec<_>>>()
        .map_err(usage)?;
    let mode = match a.mode {
        ModeArg::Exhaustive => VerifyMode::Exhaustive,
        ModeArg::Random => VerifyMode::Random { trials: a.trials, seed: a.seed },
    };
    let results = match &alg {
        AnyAlgebra::Prime(x) => idforge::algebras::verify_axioms(x, &ids, mode, true),
        AnyAlgebra::Exact(x) => idforge::algebras::verify_axioms(x, &ids, mode, true),
    }
    .map_err(|e| usage(e.into()))?;
    let w = results.iter().map(|r| r.name.len()).max().unwrap_or(4).max(8);
    println!("{:<w$}  degree  {:<6}  checked  witness", "identity", "result");
    for r in &results {
        let witness = match (&r.witness, &r.value) {
            (Some(wt), Some(v)) => format!("{wt:?} -> {v}"),
            (Some(wt), None) => format!("{wt:?}"),
            _ => String::new(),
        };
        println!("{:<w$}  {:>6}  {:<6}  {:>7}  {witness}", r.name, r.degree, if r.holds { "holds" } else { "FAILS" }, r.checked);
    }
    if results.iter().all(|r| r.holds) {
        Ok(())
    } else {
        Err(Failure(MISMATCH, anyhow::anyhow!("some identities fail")))
    }
}

fn find(a: FindArgs) -> Result<(), Failure> {
    let alg = io::load_algebra(&a.algebra).map_err(usage)?;
    let prime = io::prime_version(&alg, a.prime, a.sqrt2).map_err(usage)?;
    let exact: Option<&StructureConstantAlgebra<QuadSqrt2>> = match &alg {
        AnyAlgebra::Exact(x) => Some(x),
        AnyAlgebra::Prime(_) => None,
    };
    let mut cfg = SearchConfig::new(a.degree, a.ops).with_prime(a.prime, prime.field().sqrt2_residue().unwrap_or(0)).with_seed(a.seed);
    cfg.stabilize = a.stabilize;
    cfg.cap = a.cap;
    cfg.orbit = match a.orbit {
        OrbitArg::Full => OrbitStrategy::Full,
        OrbitArg::Spin => OrbitStrategy::Spin,
        OrbitArg::Auto => OrbitStrategy::Auto,
    };
    let known: Vec<KnownIdentity> = match &a.known {
        Some(p) => io::load_known(p, prime.ops()).map_err(usage)?,
        None => default_known(&prime, a.degree, a.seed).map_err(|e| usage(e.into()))?,
    };
    let extra = if a.rewritten_ly {
        let n = prime.n().context("the algebra file records no n").map_err(usage)?;
        let ly = build_ly(n, *prime.field()).map_err(|e| usage(e.into()))?;
        Some(translated_ly_identities(&ly, &cfg).map_err(|e| usage(e.into()))?)
    } else {
        None
    };
    let report: IdentityReport =
        new_identities_with(&prime, exact, &known, extra.as_deref(), &cfg).map_err(|e| Failure(MISMATCH, e.into()))?;
    print!("{}", report.to_text());
    if let Some(p) = &a.out {
        io::write_json(p, &report.to_json()).map_err(usage)?;
    }
    if report.reconstruction_failed() {
        return Err(Failure(RECONSTRUCTION, anyhow::anyhow!("some generators have no rational form; rerun with a larger --prime")));
    }
    if report.char0_failed() {
        return Err(Failure(MISMATCH, anyhow::anyhow!("a reconstructed identity fails in characteristic 0")));
    }
    Ok(())
}

fn catalog(a: CatalogArgs) -> Result<(), Failure> {
    let ops = idforge::freeops::OpSet::preset(&a.ops).map_err(|e| usage(e.into()))?;
    let names = io::identity_names(&a.names).map_err(usage)?;
    let items = names
        .iter()
        .map(|n| Ok(json!({"name": n, "poly": catalog_identity_in(n, &ops)?.to_json()})))
        .collect::<Result<Vec<_>>>()
        .map_err(usage)?;
    emit(a.out.as_deref(), &json!(items)).map_err(usage)
}

fn run_reproduce(a: ReproduceArgs) -> Result<(), Failure> {
    let o = Options { extended: a.extended, seed: a.seed, parallel: true };
    let r = reproduce::run(a.suite, &o).map_err(|e| Failure(MISMATCH, e))?;
    let table = r.table();
    let summary = r.summary();
    print!("{table}\n{summary}");
    let write = || -> Result<()> {
        std::fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
        std::fs::write(a.out_dir.join("summary.txt"), format!("{table}\n{summary}"))?;
        io::write_json(&a.out_dir.join("checks.json"), &r.to_json())?;
        for (name, v) in &r.reports {
            io::write_json(&a.out_dir.join("reports").join(format!("{name}.json")), v)?;
        }
        Ok(())
    };
    write().map_err(usage)?;
    if r.all_passed() {
        Ok(())
    } else {
        Err(Failure(MISMATCH, anyhow::anyhow!("some reference results were not reproduced")))
    }
}
