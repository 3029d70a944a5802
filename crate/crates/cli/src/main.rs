mod commands;
mod error;

use clap::{Parser, Subcommand, ValueEnum};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "e10pairs",
    version,
    about = "Exact lattice computations for root pairs in E10"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Stepwise,
    Closed,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Lemma1,
    Lemma2,
    Lemma4,
    Theorem1,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Jordan decomposition symbol of a Gram matrix at a prime.
    Symbol {
        #[arg(long)]
        gram: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mass of the complement genus for k, or of the genus of a rank-8 Gram matrix.
    Mass {
        #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
        k: Option<i64>,
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV table of masses and lower bounds for k through k-max.
    Bound {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        k_max: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a root pair with the given inner product and a saturated span.
    Pair {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 60)]
        max_height: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthogonal complement of a root pair and its genus.
    Complement {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 60)]
        max_height: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue the pair span with a complement along every anti-isometry of discriminant forms.
    Glue {
        #[arg(long)]
        k: i64,
        /// Complement Gram matrix; computed from a root pair when absent.
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long, default_value_t = 60)]
        max_height: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named battery of checks and print a JSON report.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 200)]
        k_max: i64,
        #[arg(long, default_value_t = 4)]
        max_height: i64,
        #[arg(long, default_value_t = 30)]
        max_word_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Symbol { gram, p, out } => commands::symbol(&gram, p, out.as_deref()),
        Command::Mass {
            k,
            gram,
            method,
            out,
        } => commands::mass(k, gram.as_deref(), method, out.as_deref()),
        Command::Bound { k, k_max, out } => commands::bound(k, k_max.unwrap_or(k), out.as_deref()),
        Command::Pair { k, max_height, out } => commands::pair(k, max_height, out.as_deref()),
        Command::Complement { k, max_height, out } => {
            commands::complement(k, max_height, out.as_deref())
        }
        Command::Glue {
            k,
            gram,
            max_height,
            out,
        } => commands::glue(k, gram.as_deref(), max_height, out.as_deref()),
        Command::Verify {
            suite,
            k_max,
            max_height,
            max_word_len,
            out,
        } => {
            let env = e10pairs::verify::Envelope {
                k_max,
                max_height,
                max_word_len,
            };
            commands::verify(suite, &env, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
