use clap::{Args, Parser, Subcommand, ValueEnum};
use germcoh_core::json::{GeneratorDto, ProblemFile, FORMAT_VERSION};
use germcoh_core::scalar;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod commands;

/// Exact local cohomology, residue pairings and reductions for holomorphic
/// families of finite complexes.
#[derive(Parser, Debug)]
#[command(name = "germcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a problem file is well formed and its maps form a complex.
    Validate(Common),
    /// Boundary spectrum, cohomology and pairing verdict per spectrum point.
    Analyze(Common),
    /// Recursive reduction certificate at the expansion center.
    Reduce(Common),
    /// Adjoint pairing of strip data, broken down by point pairs.
    Strip(Common),
    /// Ideal boundary conditions: membership, cohomology and chart equations.
    Ibc(Common),
    /// Write a corpus of generator problem files.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Problem files; several files are processed in parallel.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Explicit depth for cohomology windows instead of the certified one.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skip representative-perturbation checks.
    #[arg(long)]
    pub fast: bool,
    /// Comma-separated candidate points, replacing the determinant roots.
    #[arg(long, value_delimiter = ',')]
    pub candidates: Option<Vec<String>>,
    /// Restrict to one degree.
    #[arg(long)]
    pub degree: Option<i64>,
    /// Number of chart sample points.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Output directory.
    dir: PathBuf,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
}

/// Exit status of one command run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Input = 1,
    Certification = 2,
}

fn set_workers() {
    if let Some(n) = std::env::var("GERMCOH_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn run_file(cmd: &Command, path: &Path, opts: &Common) -> (Value, Status) {
    let problem = std::fs::read_to_string(path)
        .map_err(|e| germcoh_core::Error::Parse(format!("{}: {e}", path.display())))
        .and_then(|t| ProblemFile::parse(&t));
    let problem = match problem {
        Ok(p) => p,
        Err(e) => return commands::error_report(&e),
    };
    let out = match cmd {
        Command::Validate(_) => commands::validate(&problem),
        Command::Analyze(_) => commands::analyze(&problem, opts),
        Command::Reduce(_) => commands::reduce(&problem, opts),
        Command::Strip(_) => commands::strip(&problem),
        Command::Ibc(_) => commands::ibc(&problem, opts),
        Command::Corpus(_) => unreachable!("handled separately"),
    };
    out.unwrap_or_else(|e| commands::error_report(&e))
}

fn corpus(args: &CorpusArgs) -> (Value, Status) {
    if let Err(e) = std::fs::create_dir_all(&args.dir) {
        return (json!({"ok": false, "error": e.to_string()}), Status::Input);
    }
    let mut written = Vec::new();
    for (k, g) in corpus_profiles(args.count, args.seed).into_iter().enumerate() {
        let file = ProblemFile { version: FORMAT_VERSION, generator: Some(g), ..Default::default() };
        let path = args.dir.join(format!("gauge_{k:03}.json"));
        let text = serde_json::to_string_pretty(&file).expect("serializable");
        if let Err(e) = std::fs::write(&path, text + "\n") {
            return (json!({"ok": false, "error": e.to_string()}), Status::Input);
        }
        written.push(path.display().to_string());
    }
    (json!({"ok": true, "files": written}), Status::Ok)
}

/// Deterministic generator profiles: lengths 1 to 4, at most two elementary
/// blocks of exponent at most 3, gauge degree at most 2.
fn corpus_profiles(count: usize, seed: u64) -> Vec<GeneratorDto> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=4usize);
            let nblocks = rng.gen_range(1..=2usize);
            let blocks: Vec<(usize, u32)> = (0..nblocks).map(|_| (rng.gen_range(0..m), rng.gen_range(1..=3))).collect();
            let mut dims = vec![0usize; m + 1];
            for &(q, _) in &blocks {
                dims[q] += 1;
                dims[q + 1] += 1;
            }
            // one identity block between random neighbours
            let q = rng.gen_range(0..m);
            dims[q] += 1;
            dims[q + 1] += 1;
            GeneratorDto {
                seed: rng.gen(),
                dims,
                blocks,
                gauge_degree: Some(rng.gen_range(0..=2)),
                center: scalar::format(&scalar::gauss(rng.gen_range(-2..=2), rng.gen_range(-2..=2))),
            }
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_workers();
    let (report, status) = match &cli.command {
        Command::Corpus(args) => corpus(args),
        Command::Validate(o) | Command::Analyze(o) | Command::Reduce(o) | Command::Strip(o) | Command::Ibc(o) => {
            let results: Vec<(Value, Status)> = o.files.par_iter().map(|f| run_file(&cli.command, f, o)).collect();
            let status = results.iter().map(|r| r.1).max().unwrap_or(Status::Ok);
            if results.len() == 1 {
                results.into_iter().next().unwrap()
            } else {
                let files = o
                    .files
                    .iter()
                    .zip(results)
                    .map(|(f, (r, _))| json!({"file": f.display().to_string(), "report": r}))
                    .collect::<Vec<_>>();
                (json!({"files": files}), status)
            }
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(status as u8)
}
