//! `lyndon-klr`: good Lyndon words, root vectors and KLR modules from the
//! command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on a
//! usage error. Structured output (`--format structured`) is one JSON
//! record per line.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lyndon_klr::cartan::Series;
use lyndon_klr::error::AlgebraError;

#[derive(Parser, Debug)]
#[command(name = "lyndon-klr", version, about = "Good Lyndon words, dual canonical bases and KLR modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Largest word height any command will work at.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_height: usize,
    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Compute everything afresh and leave the cache alone.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Cache directory; defaults to $LYNDON_KLR_CACHE, then the user cache directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Cartan series, one of A B C D E F G.
    #[arg(long = "type", value_parser = parse_series)]
    pub series: Series,
    #[arg(long)]
    pub rank: usize,
    /// Use the left-to-right order instead of the right-to-left one.
    #[arg(long)]
    pub opposite: bool,
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse().map_err(|e: AlgebraError| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the good Lyndon words grouped by height.
    GoodLyndon {
        #[command(flatten)]
        ty: TypeArgs,
        /// Compare with the embedded reference tables and report differences.
        #[arg(long)]
        check_paper: bool,
    },
    /// Print b* of a good Lyndon word, or E* of a good word.
    RootVector {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        word: String,
    },
    /// Build the cuspidal modules and check them.
    VerifyCuspidal {
        #[command(flatten)]
        ty: TypeArgs,
        /// Only this word; otherwise every good Lyndon word up to --max-height.
        #[arg(long)]
        word: Option<String>,
    },
    /// Build a standard module by induction and compare its character with E*.
    StandardCharacter {
        #[command(flatten)]
        ty: TypeArgs,
        /// The good Lyndon factors separated by dots, as in "2.01".
        #[arg(long)]
        good_word: String,
    },
    /// The quantum shuffle product of two words.
    Shuffle {
        #[command(flatten)]
        ty: TypeArgs,
        left: String,
        right: String,
    },
    /// Write a cuspidal or standard module to a module file.
    ExportModule {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, conflicts_with = "good_word", required_unless_present = "good_word")]
        word: Option<String>,
        #[arg(long)]
        good_word: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a module file and run the relation suite on it.
    VerifyModule { file: PathBuf },
}

/// How a command ended, short of an error.
pub enum Outcome {
    Ok,
    Failed,
}

/// Errors carry the exit status they map to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        use AlgebraError::*;
        match e {
            InvalidType { .. } | UnknownLetter(_) | Parse(_) | NotLyndon(_) | NotGood(_) | EmptyWord | ResourceCap { .. }
            | NotARoot(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.common.jobs > 0 {
        // Fails only if a pool exists already, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global();
    }
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
