//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 bad input.

pub mod input;
pub mod region;
pub mod report;
pub mod sample;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::ppt::DEFAULT_TOL;

pub use input::StateInput;
pub use region::{cmd_region, Plane, RegionScan};
pub use report::{cmd_classify, ClassifyOutcome};
pub use sample::{cmd_sample, SampleReport, SampleRow};
pub use verify::{cmd_verify, Suite, SuiteResult, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "MUBW_THREADS";

#[derive(Debug, Parser)]
#[command(name = "mubw", version, about = "PPT tests, witnesses and bound-entanglement classification for three-qubit GHZ-diagonal states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one state.
    Classify {
        /// Eight comma-separated probabilities.
        #[arg(long, conflicts_with_all = ["r", "file"], allow_hyphen_values = true)]
        p: Option<String>,
        /// Seven comma-separated correlations r1..r7.
        #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
        r: Option<String>,
        /// File whose first line holds eight comma-separated probabilities.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Classify uniformly sampled states.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Per-state CSV output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan a two-dimensional slice on a grid.
    Region {
        /// One of p1p2, p1p3, p3p4, p2p4, p5p6, p7p8, cat1-triangle.
        #[arg(long)]
        plane: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
        /// SVG scatter of the scan.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Sampled states tallied per cell (coordinate planes).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the self-verification suites.
    Verify {
        /// oracle, envelope, identities or witnesses; all when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturb the inequality side of the oracle suite (negative control).
        #[arg(long)]
        inject_fault: bool,
    },
}

/// Sizes the global thread pool from [`THREADS_ENV`] if set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse(format!("{THREADS_ENV}={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Parse(e.to_string()))
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn io_err(e: io::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Executes a parsed command, writing reports to `out`; returns the exit
/// code.
pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    match cli.command {
        Command::Classify { p, r, file, tol } => {
            let input = match (p, r, file) {
                (Some(p), _, _) => StateInput::parse_p(&p)?,
                (_, Some(r), _) => StateInput::parse_r(&r)?,
                (_, _, Some(f)) => StateInput::read_file(&f)?,
                _ => return Err(Error::Parse("one of --p, --r or --file is required".into())),
            };
            let outcome = cmd_classify(&input, tol)?;
            write!(out, "{}\n{}", outcome.text(), outcome.csv()?).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Sample { n, seed, tol, out: path } => {
            let (report, rows) = cmd_sample(n, seed, tol)?;
            if let Some(path) = path {
                sample::write_rows(&rows, create(&path)?)?;
            }
            write!(out, "{report}").map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Region {
            plane,
            grid,
            out: path,
            svg,
            samples,
            seed,
            tol,
        } => {
            let plane: Plane = plane.parse()?;
            let scan = cmd_region(plane, grid, samples, seed, tol)?;
            region::write_csv(&scan, create(&path)?)?;
            if let Some(svg) = svg {
                region::write_svg(&scan, create(&svg)?)?;
            }
            writeln!(out, "plane: {plane}").map_err(io_err)?;
            writeln!(out, "grid: {grid}").map_err(io_err)?;
            writeln!(out, "feasible cells: {}", scan.feasible_points().len()).map_err(io_err)?;
            let hull: Vec<String> = scan
                .hull()
                .iter()
                .map(|(x, y)| format!("({x:.4}, {y:.4})"))
                .collect();
            writeln!(out, "hull: {}", hull.join(" ")).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            seed,
            inject_fault,
        } => {
            let suite = suite.map(|s| s.parse::<Suite>()).transpose()?;
            let opts = VerifyOptions {
                seed,
                fault: if inject_fault { verify::INJECTED_FAULT } else { 0.0 },
            };
            let results = cmd_verify(suite, &opts)?;
            for r in &results {
                writeln!(out, "{r}").map_err(io_err)?;
            }
            Ok(if results.iter().all(SuiteResult::passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}
