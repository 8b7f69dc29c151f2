//! The `latpoly` command-line tool.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use latpoly::checks::{check, Status, Theorem, VerificationReport};
use latpoly::constructions::{dilate, lawrence_prism, pyramid_k};
use latpoly::ehrhart::h_star;
use latpoly::enumeration::{
    check_member, enumerate_polygons, sample_3d_corpus, scott_reports, summarize_corpus,
    summarize_scott,
};
use latpoly::equivalence::equivalent;
use latpoly::lattice_count::{
    count_interior_points_in_dilate, count_points_in_dilate, interior_points_in_dilate,
    points_in_dilate,
};
use latpoly::LatticePolytope;
use rayon::prelude::*;
use serde_json::json;

use crate::format::{json_int_vec, json_number, parse_polytope, print_polytope, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "latpoly",
    version,
    about = "Exact Ehrhart data and degree-2 bounds for lattice polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TheoremArg {
    Scott,
    Deg2,
    Star,
    Remark,
    Vpick,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Scott => Theorem::Scott,
            TheoremArg::Deg2 => Theorem::Deg2,
            TheoremArg::Star => Theorem::Star,
            TheoremArg::Remark => Theorem::Remark,
            TheoremArg::Vpick => Theorem::Vpick,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h*-polynomial, degree and normalized volume
    Hstar {
        file: PathBuf,
        /// Print a JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Normalized volume
    Volume { file: PathBuf },
    /// Lattice points of a dilate
    Points {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        dilate: u64,
        /// Count only interior points
        #[arg(long)]
        interior: bool,
        /// Print the points, one per line, before the count
        #[arg(long)]
        list: bool,
    },
    /// Iterated standard pyramid
    Pyramid {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Lawrence prism over a basic simplex
    Lawrence {
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<u64>,
    },
    /// k-th dilate
    Dilate { file: PathBuf, k: u64 },
    /// Unimodular equivalence; exit 0 with a witness or 1
    Equiv { a: PathBuf, b: PathBuf },
    /// Check one statement and print a JSON report
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        /// Identifier recorded in the report; defaults to the vertex list
        #[arg(long)]
        id: Option<String>,
    },
    /// Enumerate lattice polygons in [0,B]^2 and check Scott's bound
    Enumerate {
        #[arg(long = "box")]
        box_size: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Sample degree-2 3-polytopes and run every degree-2 check
    Corpus3d {
        #[arg(long = "box")]
        box_size: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    NoInput { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Polytope(#[from] latpoly::Error),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NoInput { .. } => EXIT_NO_INPUT,
            CliError::Parse {
                source: ParseError::Polytope(latpoly::Error::Internal(_)),
                ..
            } => EXIT_INTERNAL,
            CliError::Parse { .. } => EXIT_DATA,
            CliError::Polytope(latpoly::Error::Internal(_)) => EXIT_INTERNAL,
            CliError::Polytope(_) => EXIT_DATA,
            CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn load(path: &Path) -> CliResult<LatticePolytope> {
    let text = fs::read_to_string(path).map_err(|source| CliError::NoInput {
        path: path.to_path_buf(),
        source,
    })?;
    parse_polytope(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn exit_for(status: Status) -> i32 {
    match status {
        Status::Holds | Status::Exceptional => EXIT_OK,
        Status::Violated => EXIT_VIOLATED,
        Status::NotApplicable => EXIT_NOT_APPLICABLE,
    }
}

fn install_pool(jobs: Option<usize>) -> CliResult<Option<rayon::ThreadPool>> {
    match jobs {
        None => Ok(None),
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(Some)
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn with_pool<T: Send>(pool: Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// Runs one report; precondition failures become not-applicable reports.
pub fn verify(p: &LatticePolytope, theorem: Theorem) -> CliResult<VerificationReport> {
    match check(p, theorem) {
        Ok(r) => Ok(r),
        Err(
            e @ (latpoly::Error::DegreeMismatch { .. } | latpoly::Error::DimensionMismatch { .. }),
        ) => Ok(VerificationReport::not_applicable(
            p,
            theorem,
            e.to_string(),
        )?),
        Err(e) => Err(e.into()),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Hstar { file, json } => {
            let p = load(&file)?;
            let h = h_star(&p)?;
            if json {
                let v = json!({
                    "h_star": json_int_vec(h.coeffs()),
                    "degree": h.degree(),
                    "volume": json_number(&h.volume()),
                });
                writeln!(out, "{v}")?;
            } else {
                let coeffs: Vec<String> = h.trimmed().iter().map(|c| c.to_string()).collect();
                writeln!(out, "h*: {}", coeffs.join(" "))?;
                writeln!(out, "degree: {}", h.degree())?;
                writeln!(out, "volume: {}", h.volume())?;
            }
        }
        Command::Volume { file } => {
            writeln!(out, "{}", load(&file)?.normalized_volume()?)?;
        }
        Command::Points {
            file,
            dilate: k,
            interior,
            list,
        } => {
            let p = load(&file)?;
            if interior && k == 0 {
                return Err(CliError::Usage(
                    "--interior needs --dilate of at least 1".into(),
                ));
            }
            if list {
                let pts = if interior {
                    interior_points_in_dilate(&p, k)?
                } else {
                    points_in_dilate(&p, k)?
                };
                for x in &pts {
                    writeln!(out, "{x}")?;
                }
            }
            let n = if interior {
                count_interior_points_in_dilate(&p, k)?
            } else {
                count_points_in_dilate(&p, k)?
            };
            writeln!(out, "{n}")?;
        }
        Command::Pyramid { file, times } => {
            writeln!(out, "{}", print_polytope(&pyramid_k(&load(&file)?, times)?))?;
        }
        Command::Lawrence { heights } => {
            writeln!(out, "{}", print_polytope(&lawrence_prism(&heights)?))?;
        }
        Command::Dilate { file, k } => {
            writeln!(out, "{}", print_polytope(&dilate(&load(&file)?, k)?))?;
        }
        Command::Equiv { a, b } => {
            let (p, q) = (load(&a)?, load(&b)?);
            match equivalent(&p, &q)? {
                Some(map) => {
                    let v = json!({
                        "equivalent": true,
                        "matrix": map.matrix.iter().map(|r| json_int_vec(r)).collect::<Vec<_>>(),
                        "translation": json_int_vec(&map.translation),
                    });
                    writeln!(out, "{v}")?;
                }
                None => {
                    writeln!(out, "not equivalent")?;
                    return Ok(EXIT_NOT_EQUIVALENT);
                }
            }
        }
        Command::Verify { file, theorem, id } => {
            let p = load(&file)?;
            let mut r = verify(&p, theorem.into())?;
            if let Some(id) = id {
                r = r.with_id(id);
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&r).expect("serializable")
            )?;
            return Ok(exit_for(r.status));
        }
        Command::Enumerate { box_size, jobs } => {
            let pool = install_pool(jobs)?;
            let reports = with_pool(pool, || -> CliResult<_> {
                let polys = enumerate_polygons(box_size)?;
                Ok(scott_reports(&polys)?)
            })?;
            for (k, r) in reports.iter().enumerate() {
                writeln!(out, "{}", json!({"type": "class", "index": k, "report": r}))?;
            }
            let summary = summarize_scott(box_size, &reports);
            writeln!(out, "{}", json!({"type": "summary", "summary": summary}))?;
            if !summary.violations.is_empty() {
                return Ok(EXIT_VIOLATED);
            }
        }
        Command::Corpus3d {
            box_size,
            count,
            seed,
            jobs,
        } => {
            let pool = install_pool(jobs)?;
            let (corpus, members) = with_pool(pool, || -> CliResult<_> {
                let corpus = sample_3d_corpus(box_size, count, seed)?;
                let members = corpus
                    .members
                    .par_iter()
                    .map(check_member)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((corpus, members))
            })?;
            for (k, m) in members.iter().enumerate() {
                writeln!(
                    out,
                    "{}",
                    json!({"type": "member", "index": k, "reports": m})
                )?;
            }
            let summary = summarize_corpus(&members);
            writeln!(
                out,
                "{}",
                json!({
                    "type": "summary",
                    "box": box_size,
                    "seed": seed,
                    "sampled": corpus.sampled,
                    "degree_two": corpus.degree_two,
                    "summary": summary,
                })
            )?;
            if !summary.is_clean() {
                return Ok(EXIT_VIOLATED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Help and version requests go to `out` with code 0.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut command = Cli::command();
    if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        command = command.color(ColorChoice::Never);
    }
    let parsed = command
        .try_get_matches_from(args)
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "latpoly: {e}");
            e.exit_code()
        }
    }
}
