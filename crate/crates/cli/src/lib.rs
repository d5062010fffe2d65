//! Command-line front end: module files, reports and the snapshot cache.

pub mod cache;
pub mod commands;
pub mod error;
pub mod file;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;
pub use output::{Format, Output};

use cache::Cache;
use commands::Options;
use file::{load_module, Loaded};

#[derive(Debug, Parser)]
#[command(name = "npj", version, about = "Growth of non-projective parts of tensor powers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of tensor powers (cc, npj) or largest n checked (harness).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest module dimension any computation may build.
    #[arg(long, global = true)]
    pub budget_dim: Option<usize>,
    /// Random trials behind indecomposability and isomorphism verdicts.
    #[arg(long, global = true)]
    pub budget_trials: Option<usize>,
    /// Snapshot cache directory (also read from NPJ_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Comma-separated exponent words, e.g. `1:0,1:1` (or `10,11` for small p).
    #[arg(long, global = true)]
    pub restrict: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a module file.
    Validate { module: String },
    /// Core dimensions of tensor powers.
    Cc { module: String },
    /// Reconciled bounds and certified value of npj.
    Npj {
        module: String,
        /// Skip the omega table.
        #[arg(long)]
        no_table: bool,
    },
    /// Indecomposable summands.
    Decompose { module: String },
    /// Transition table over syzygy classes.
    OmegaTable { module: String },
    /// Projective / endotrivial / sqrt2-class / general.
    Classify { module: String },
    /// Exact value over a cyclic group, or over `--restrict` subgroups.
    CyclicExact { module: String },
    /// Finite-n checks of the tensor-power laws.
    Harness {
        modules: Vec<String>,
        /// Use this many random modules instead of files.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
    },
}

/// Parses `1:0,0:1`, or digit strings like `10,01`.
pub fn parse_words(s: &str) -> Result<Vec<Vec<u32>>, CliError> {
    s.split(',')
        .map(|w| {
            let w = w.trim();
            let parts: Vec<&str> = if w.contains(':') {
                w.split(':').collect()
            } else {
                w.char_indices().map(|(i, c)| &w[i..i + c.len_utf8()]).collect()
            };
            parts
                .iter()
                .map(|e| {
                    e.parse::<u32>()
                        .map_err(|_| CliError::Input(format!("bad exponent {e:?} in word {w:?}")))
                })
                .collect()
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let default_n = match cli.command {
        Command::Harness { .. } => 5,
        _ => 12,
    };
    let restrict = cli.restrict.as_deref().map(parse_words).transpose()?;
    let o = Options {
        n: cli.n.unwrap_or(default_n),
        seed: cli.seed,
        dim_budget: cli.budget_dim,
        trials: cli.budget_trials,
        restrict,
    };
    match &cli.command {
        Command::Validate { module } => commands::validate(&load_module(module)?, &o),
        Command::Cc { module } => {
            let cache = Cache::from_flag(cli.cache_dir.as_deref())?;
            commands::cc(&load_module(module)?, &o, cache.as_ref())
        }
        Command::Npj { module, no_table } => commands::npj(&load_module(module)?, &o, !no_table),
        Command::Decompose { module } => commands::decompose_cmd(&load_module(module)?, &o),
        Command::OmegaTable { module } => commands::omega_table_cmd(&load_module(module)?, &o),
        Command::Classify { module } => commands::classify_cmd(&load_module(module)?, &o),
        Command::CyclicExact { module } => commands::cyclic_exact_cmd(&load_module(module)?, &o),
        Command::Harness {
            modules,
            random,
            p,
            rank,
            max_dim,
        } => {
            let mut loaded: Vec<Loaded> = modules.iter().map(|m| load_module(m)).collect::<Result<_, _>>()?;
            if let Some(k) = random {
                npj_core::rep::GroupSpec::new(*p, *rank)?;
                let ms = npj_core::engine::random_modules(*p, *rank, *max_dim, *k, cli.seed);
                loaded.extend(ms.into_iter().enumerate().map(|(i, module)| Loaded {
                    module,
                    name: format!("random-{i}"),
                }));
            }
            commands::harness(&loaded, &o)
        }
    }
}

/// Runs one command line, writing the report and returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(CliError::Input(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result.and_then(|out| out.write(cli.format, cli.out.as_deref()).map(|_| out.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a command line and returns its output instead of writing it.
pub fn run_captured<I, T>(args: I) -> Result<(Output, Format), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Input(e.to_string()))?;
    let out = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?
            .install(|| dispatch(&cli))?,
        None => dispatch(&cli)?,
    };
    Ok((out, cli.format))
}
