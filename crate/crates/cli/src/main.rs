use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

mod run;

use run::{Kind, Opts};

/// Complexity of 3-manifolds from 4-coloured graphs and Heegaard diagrams.
///
/// Exit status: 0 success, 1 validation failure, 2 budget exhausted,
/// 3 cross-check mismatch, 4 usage or I/O error.
#[derive(Parser, Debug)]
#[command(name = "gmhm", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Print one JSON report per input.
    #[arg(long, global = true)]
    json: bool,
    /// Print only the numeric value.
    #[arg(long, global = true, conflicts_with = "json")]
    quiet: bool,
    /// Restrict to the splittings containing these colour pairs, e.g. `01,02`.
    #[arg(long, global = true, value_delimiter = ',')]
    pairs: Vec<String>,
    /// Maximum number of forests (and reductions) enumerated per colour pair.
    #[arg(long, global = true, default_value_t = gmhm::gm::DEFAULT_FOREST_CAP)]
    forest_cap: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check GEM or HDG files.
    Validate { files: Vec<PathBuf> },
    /// Print residue counts and flags of a gem, or the surface of a diagram.
    Info { file: PathBuf },
    /// GM-complexity of a gem with its minimizing choice.
    Gm { file: PathBuf },
    /// Write the diagrams a gem induces, one per splitting.
    Induce {
        file: PathBuf,
        /// Directory for `<name>.hdg` files; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Modified Heegaard complexity of a diagram, or of a gem's induced diagrams.
    Hm { file: PathBuf },
    /// Compare the gem-side and diagram-side complexities.
    Crosscheck {
        files: Vec<PathBuf>,
        /// Process every GEM file in this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Enumerate crystallizations, or filter an existing catalogue.
    Census(CensusArgs),
    /// Run a subcommand over a directory, one JSON line per file.
    Batch {
        #[arg(value_enum)]
        command: BatchCommand,
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Also identify gems that differ by a colour permutation.
    #[arg(long)]
    colour_free: bool,
    /// Work budget in enumeration steps.
    #[arg(long, default_value_t = gmhm::census::DEFAULT_CENSUS_BUDGET)]
    budget: u64,
    /// Keep only entries with this first homology, e.g. `Z2` or `0`.
    #[arg(long)]
    fingerprint: Option<String>,
    /// Read this JSON-lines catalogue instead of enumerating.
    #[arg(long)]
    catalogue: Option<PathBuf>,
    /// Write the catalogue here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write each entry as `<name>.gem` into this directory.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BatchCommand {
    Validate,
    Info,
    Gm,
    Hm,
    Crosscheck,
}

impl From<BatchCommand> for Kind {
    fn from(c: BatchCommand) -> Kind {
        match c {
            BatchCommand::Validate => Kind::Validate,
            BatchCommand::Info => Kind::Info,
            BatchCommand::Gm => Kind::Gm,
            BatchCommand::Hm => Kind::Hm,
            BatchCommand::Crosscheck => Kind::Crosscheck,
        }
    }
}

/// Failure that ends the run before any report is produced.
pub struct Fatal {
    pub code: u8,
    pub message: String,
}

impl Fatal {
    pub fn usage(message: impl Into<String>) -> Self {
        Fatal { code: 4, message: message.into() }
    }
}

fn parse_pairs(tokens: &[String]) -> Result<Vec<usize>, Fatal> {
    tokens
        .iter()
        .map(|t| {
            let digits: Vec<u8> = t.trim().bytes().map(|b| b.wrapping_sub(b'0')).collect();
            match digits[..] {
                [a, b] if a < 4 && b < 4 && a != b => Ok(gmhm::embedding::splitting_of(a, b).expect("pair")),
                _ => Err(Fatal::usage(format!("bad colour pair `{t}`; expected two distinct digits 0-3"))),
            }
        })
        .collect()
}

fn files_in(dir: &Path, ext: Option<&str>) -> Result<Vec<PathBuf>, Fatal> {
    let entries = std::fs::read_dir(dir).map_err(|e| Fatal::usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| match ext {
            Some(x) => p.extension().is_some_and(|e| e == x),
            None => p.extension().is_some_and(|e| e == "gem" || e == "hdg"),
        })
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Runs `kind` on every file in parallel and prints the results in input order.
fn run_many(kind: Kind, files: &[PathBuf], opts: &Opts) -> u8 {
    let results: Vec<_> = files.par_iter().map(|f| run::analyse(kind, f, opts)).collect();
    let mut code = 0;
    for r in results {
        run::emit(kind, &r.report, opts);
        code = code.max(r.code);
    }
    code
}

fn execute(cli: Cli) -> Result<u8, Fatal> {
    let g = &cli.global;
    if g.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(g.jobs)
            .build_global()
            .map_err(|e| Fatal::usage(e.to_string()))?;
    }
    let mut opts = Opts {
        json: g.json,
        quiet: g.quiet,
        gm: gmhm::GmOptions {
            forest_cap: g.forest_cap,
            splittings: parse_pairs(&g.pairs)?,
        },
    };
    match cli.command {
        Command::Validate { files } => {
            if files.is_empty() {
                return Err(Fatal::usage("validate needs at least one file"));
            }
            Ok(run_many(Kind::Validate, &files, &opts))
        }
        Command::Info { file } => Ok(run_many(Kind::Info, &[file], &opts)),
        Command::Gm { file } => Ok(run_many(Kind::Gm, &[file], &opts)),
        Command::Hm { file } => Ok(run_many(Kind::Hm, &[file], &opts)),
        Command::Induce { file, out } => run::induce(&file, out.as_deref(), &opts),
        Command::Crosscheck { mut files, dir } => {
            if let Some(dir) = dir {
                files.extend(files_in(&dir, Some("gem"))?);
            }
            if files.is_empty() {
                return Err(Fatal::usage("crosscheck needs files or --dir"));
            }
            Ok(run_many(Kind::Crosscheck, &files, &opts))
        }
        Command::Census(args) => run::census(&args, &opts),
        Command::Batch { command, dir } => {
            opts.json = true;
            opts.quiet = false;
            let files = files_in(&dir, None)?;
            Ok(run_many(command.into(), &files, &opts))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gmhm: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
