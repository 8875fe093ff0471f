//! `qgroup verify` runs verification suites; `qgroup dump` writes computed
//! objects as JSON.
//!
//! Exit codes: 0 when every check passes (erratum-corrected checks count as
//! passing), 1 on a verification failure or internal error, 2 on a usage or
//! configuration error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qgroup::labels::BlockLabel;
use qgroup::serial::{dump_target, DumpTarget, TableCache, VerifyOutput};
use qgroup::suites::{run_suites, RunConfig, Suite};
use qgroup::{Algebra, Params};

#[derive(Parser)]
#[command(
    name = "qgroup",
    version,
    about = "Exact verification of the restricted quantum group of sl2 x sl2 at coprime roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Write a computed object as JSON.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DumpFormat {
    Json,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    p1: usize,
    #[arg(long)]
    p2: usize,
    /// Comma-separated suites: relations, hopf, modules, ideals,
    /// idempotents, blocks, shapes, slf, integrals, radford, qchar, center
    /// or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Sample count for randomized checks.
    #[arg(long, default_value_t = 1000)]
    sample: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Structure-constant table: loaded when the file exists, written after
    /// the run when it does not and the table was built.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict the per-block suites to these blocks, written `r1-r2` and
    /// separated by commas.
    #[arg(long)]
    blocks: Option<String>,
}

#[derive(clap::Args)]
struct DumpArgs {
    #[arg(long)]
    p1: usize,
    #[arg(long)]
    p2: usize,
    /// `block <r1> <r2>`, `slf`, `idempotents` or `integrals`.
    #[arg(long, num_args = 1..=3, required = true)]
    target: Vec<String>,
    #[arg(long, value_enum, default_value_t = DumpFormat::Json)]
    format: DumpFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<qgroup::Error> for Failure {
    fn from(e: qgroup::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn parse_blocks(s: &str, p: &Params) -> Result<Vec<BlockLabel>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Failure::Usage(format!("block {t:?} is not of the form r1-r2")))?;
            let parse = |x: &str| x.parse::<usize>().map_err(|_| Failure::Usage(format!("bad block {t:?}")));
            BlockLabel::new(p, parse(a)?, parse(b)?).map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect()
}

fn params(p1: usize, p2: usize) -> Result<Params, Failure> {
    Params::new(p1, p2).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_cache(alg: &Algebra, path: &Path) -> Result<bool, Failure> {
    if !path.exists() {
        return Ok(false);
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cache: TableCache =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))?;
    let table = cache
        .to_table(alg)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    alg.install_structure_table(table)?;
    Ok(true)
}

fn save_cache(alg: &Algebra, path: &Path) -> Result<(), Failure> {
    let cache = TableCache::from_table(alg, &alg.structure_table());
    let text = serde_json::to_string(&cache).map_err(|e| Failure::Internal(e.to_string()))?;
    fs::write(path, text).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let p = params(args.p1, args.p2)?;
    let suites = Suite::parse_list(&args.suite).map_err(|e| Failure::Usage(e.to_string()))?;
    let blocks = args.blocks.as_deref().map(|s| parse_blocks(s, &p)).transpose()?;
    let alg = Algebra::new(p);
    let loaded = match &args.cache {
        Some(path) => load_cache(&alg, path)?,
        None => false,
    };
    let config = RunConfig {
        suites,
        sample: args.sample,
        seed: args.seed,
        blocks,
    };
    let outcome = run_suites(&alg, &config)?;
    if let (Some(path), false) = (&args.cache, loaded) {
        if alg.has_structure_table() {
            save_cache(&alg, path)?;
        }
    }
    let output = VerifyOutput::from_run(&alg, &config, outcome);
    let text = match args.format {
        Format::Json => to_json(&output)?,
        Format::Text => render_text(&output),
    };
    emit(args.out.as_deref(), &text)?;
    if output.report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn render_text(o: &VerifyOutput) -> String {
    let h = &o.header;
    let mut s = format!(
        "{} | p1 = {}, p2 = {}, N = {}, phi digest {}\nsuites: {} | sample {} | seed {}\nalgebra dimension {}, {} blocks",
        h.version,
        h.p1,
        h.p2,
        h.n,
        h.phi_digest,
        o.suites.join(","),
        o.sample,
        o.seed,
        o.dim,
        o.blocks
    );
    if let Some(n) = o.slf_count {
        s.push_str(&format!(", {n} symmetric functions"));
    }
    s.push('\n');
    s.push_str(&o.report.render_text());
    s
}

fn dump(args: DumpArgs) -> Result<(), Failure> {
    let p = params(args.p1, args.p2)?;
    let target = DumpTarget::parse(&args.target.join(" "), &p).map_err(|e| Failure::Usage(e.to_string()))?;
    let alg = Algebra::new(p);
    if let Some(path) = &args.cache {
        load_cache(&alg, path)?;
    }
    let text = to_json(&dump_target(&alg, &target)?)?;
    emit(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Dump(args) => dump(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
