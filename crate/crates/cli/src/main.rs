//! `gordual`: Gorenstein duality data for presented graded-commutative
//! algebras, spectral-sequence schedules, shift ledgers and the example
//! corpus.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gordual", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Internal degree bound for algebras and resolutions.
    #[arg(long, global = true, default_value_t = 48)]
    pub max_degree: u32,
    /// Number of resolution stages.
    #[arg(long, global = true, default_value_t = 12)]
    pub hom_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Directory for cached resolutions.
    #[arg(long, global = true, env = "GORDUAL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    /// Monospace bigraded chart (spectral sequences); tables elsewhere.
    Chart,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert series and its functional equation.
    Hilbert { presentation: PathBuf },
    /// Gorenstein certificate and structural shift.
    Gorenstein { presentation: PathBuf },
    /// Socle of an Artinian algebra.
    Socle { presentation: PathBuf },
    /// Ext(k, A) and Tor(k, k) tables from the minimal resolution.
    Ext { presentation: PathBuf },
    /// Koszul homology of a sequence of elements.
    Koszul {
        presentation: PathBuf,
        /// Elements, e.g. `x^2` `x*y + z`.
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Run a differential schedule on E_2 = pi_*(Q) (x) pi_*(S).
    Ss {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Presentation of the expected abutment, for a convergence check.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Solve a shift ledger.
    Shift { ledger: PathBuf },
    /// Hochschild homology or cohomology.
    Hh {
        presentation: PathBuf,
        #[arg(long, value_enum, default_value_t = Coeffs::Ring)]
        coeffs: Coeffs,
        #[arg(long)]
        cohomology: bool,
        /// Largest bar degree for cohomology.
        #[arg(long, default_value_t = 4)]
        max_bar: u32,
        /// Check HH^* = Sigma^a HH_* for this shift instead.
        #[arg(long, allow_hyphen_values = true)]
        duality: Option<i32>,
    },
    /// Predicted THH(R; k) Hilbert series: THH(k) (x) Tor^R(k, k).
    Predict { presentation: PathBuf },
    /// The built-in example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeffs {
    Ring,
    Field,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Run every check; exit status 1 if a theorem check fails.
    Verify {
        /// Entry name filter (`*` wildcards, otherwise substring).
        #[arg(long)]
        filter: Option<String>,
        /// Override entry windows with the global bounds.
        #[arg(long)]
        override_windows: bool,
    },
    /// List entries.
    List,
    /// Print the merged ledger of all entries.
    Ledger,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli.global, cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
