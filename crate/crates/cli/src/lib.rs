//! Front end for the `steklov` binary.
//!
//! Exit codes: 0 success, 1 verifier mismatch, 2 usage, 3 malformed edge
//! list, 4 invalid family string, 5 unsupported `--n-max`, 6 IO, 7 numeric
//! failure.

pub mod commands;
pub mod edgelist;
pub mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use steklov::enumeration::EnumerationError;
use steklov::families::FamilyError;

use crate::edgelist::EdgeListError;
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "steklov",
    version,
    about = "Steklov spectra of trees: compute, search, verify"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Numerical tolerance, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = steklov::EIGEN_TOL)]
    pub tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include per-path, per-eigenfunction and per-row detail.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steklov spectrum of a tree read from an edge list (`-` for stdin).
    Spectrum {
        input: PathBuf,
        /// Include the Dirichlet-to-Neumann matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Build a family tree and compare its spectrum with the closed form.
    Family {
        /// e.g. `af:3,1`, `cg:2,2,1`, `barbell:2,1,3`, `as:2,3,1`, `ruler:2,1`, `path:5`.
        descriptor: String,
        /// Also write the generated tree as an edge list.
        #[arg(long)]
        edges_out: Option<PathBuf>,
    },
    /// Maximal sigma_k over a class of trees on n vertices.
    Search {
        /// Class of trees with this many leaves.
        #[arg(
            long,
            conflicts_with = "diameter",
            required_unless_present = "diameter"
        )]
        leaves: Option<usize>,
        /// Class of trees with this diameter.
        #[arg(long)]
        diameter: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Run the theorem verifiers and family checks; exits 1 on any mismatch.
    Verify {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "all")]
        theorem: commands::Theorem,
    },
    /// Odd-diameter maxima next to the conjectured seesaw values.
    Conjecture {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Randomized property suites and the deformation limit check.
    Properties {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed edge list: {0}")]
    EdgeList(#[from] EdgeListError),
    #[error("invalid family string: {0}")]
    Family(#[from] FamilyError),
    #[error("unsupported n_max: {0}")]
    NMax(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::EdgeList(_) => 3,
            Self::Family(_) => 4,
            Self::NMax(_) => 5,
            Self::Io { .. } => 6,
            Self::Numeric(_) => 7,
        }
    }

    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn numeric(e: impl std::fmt::Display) -> Self {
        Self::Numeric(e.to_string())
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::OrderOutOfRange { .. } => Self::NMax(e.to_string()),
            EnumerationError::InvalidQuery(_) => Self::Usage(e.to_string()),
            other => Self::numeric(other),
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

pub fn build_report(cli: &Cli) -> Result<Report, CliError> {
    let tol = cli.common.tol;
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(CliError::Usage(format!(
            "--tol must lie in (0, 1e-3], got {tol}"
        )));
    }
    let verbose = cli.common.verbose;
    match &cli.command {
        Command::Spectrum { input, matrix } => {
            let tree = edgelist::parse_tree(&read_input(input)?)?;
            commands::spectrum(&tree, &input.display().to_string(), tol, verbose, *matrix)
        }
        Command::Family {
            descriptor,
            edges_out,
        } => commands::family(descriptor, edges_out.as_deref(), tol, verbose),
        Command::Search {
            leaves,
            diameter,
            n,
            k,
        } => commands::search(*leaves, *diameter, *n, *k, tol, verbose),
        Command::Verify { n_max, theorem } => commands::verify(*n_max, *theorem, tol, verbose),
        Command::Conjecture { n_max } => commands::conjecture(*n_max, tol),
        Command::Properties {
            trials,
            n_max,
            seed,
        } => commands::properties(*trials, *n_max, *seed, tol, verbose),
    }
}

/// Runs the parsed command and writes the report; returns the exit code.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let report = build_report(cli)?;
    let rendered = report.render(cli.common.format);
    match &cli.common.out {
        Some(path) => fs::write(path, rendered).map_err(|e| CliError::io(path, e))?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
        }
    }
    Ok(u8::from(report.failed))
}
