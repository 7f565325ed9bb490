//! `rcat`: check and construct finite restriction categories.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rcat_core::report::DEFAULT_CAP;
use rcat_core::{CatError, CheckOptions};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "rcat", version, about = "Finite restriction category workbench")]
struct Cli {
    /// Print the report as one JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Collect every violation instead of stopping at the first.
    #[arg(long, global = true)]
    all: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the constructed category here; without it the category goes to
    /// stdout and the report to stderr.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Restriction axioms R.1-R.4, plus optional structure.
    Check {
        file: PathBuf,
        /// Search binary coproducts and check they are restriction coproducts.
        #[arg(long)]
        coproducts: bool,
        /// Check for a restriction zero.
        #[arg(long)]
        zero: bool,
        /// Search restriction products and check them.
        #[arg(long)]
        products: bool,
    },
    /// The decision of `f : C → A + B + ...`.
    Decide {
        file: PathBuf,
        #[arg(long)]
        morphism: String,
        /// Summands, e.g. "A+B"; a literal `+` in a name is written `\+`.
        #[arg(long)]
        coproduct: String,
    },
    /// The matrix calculus of maps between coproducts.
    Matrix {
        #[command(subcommand)]
        op: MatrixOp,
    },
    /// Split the restriction idempotents: K_r(X).
    Split {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The subcategory of total maps.
    Total {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Total(K_r(D₊₁)) for a distributive category D.
    Complete {
        /// FinSet on sizes 0..=N.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        finset: Option<usize>,
        /// Distributive category data with explicit δ⁻¹.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Restriction limits of an arrow or a diagram, or a total equalizer.
    Limits {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["diagram", "equalizer"])]
        morphism: Option<String>,
        #[arg(long, conflicts_with = "equalizer")]
        diagram: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        equalizer: Option<Vec<String>>,
    },
    /// The lattice of restriction idempotents on an object.
    Lattice { file: PathBuf, object: String },
    /// Extensivity of a category, or of one map.
    Extensive {
        file: PathBuf,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Tabulate Par (or FinSet) on sizes 0..=N.
    Par {
        n: usize,
        /// Total functions only.
        #[arg(long)]
        finset: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixOp {
    /// Entries and row witnesses of `f : ΣA → ΣB`.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        morphism: String,
        /// Comma separated row objects.
        #[arg(long)]
        rows: String,
        /// Comma separated column objects.
        #[arg(long)]
        cols: String,
    },
    /// The map a matrix denotes.
    Recompose { file: PathBuf, matrix: PathBuf },
    /// `G F` as a matrix.
    Multiply { file: PathBuf, g: PathBuf, f: PathBuf },
}

fn cap() -> Result<usize, CatError> {
    match std::env::var("RCAT_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CatError::Parse { location: "RCAT_CAP".into(), message: format!("`{v}` is not a size") }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let started = Instant::now();
    let run = || -> Result<(Report, Option<String>, Option<Output>), CatError> {
        let opts = CheckOptions { cap: cap()?, all_violations: cli.all };
        let mut report = Report::new(argv[1..].to_vec());
        let (artifact, out) = commands::run(&cli.command, opts, &mut report)?;
        Ok((report, artifact, out))
    };
    let (mut report, artifact, out) = match run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        report.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    let mut to_stderr = false;
    if let Some(text) = artifact {
        match out.and_then(|o| o.output) {
            Some(path) => {
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                report.artifact = Some(path.display().to_string());
            }
            None => {
                print!("{text}");
                to_stderr = true;
            }
        }
    }
    let rendered = if cli.json { report.to_json() } else { report.to_text() };
    if to_stderr {
        eprint!("{rendered}");
    } else {
        print!("{rendered}");
    }
    ExitCode::from(report.exit_code() as u8)
}
