//! Command-line front end. `run` is separated from `main` so tests can drive it
//! with in-memory streams.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{convergence_report, SumKind};
use crate::counting::{a_closed, c_closed};
use crate::dirichlet::series;
use crate::enumeration::{descriptor_is_normal, AmbientGroup, Oracle, SubgroupDescriptor};
use crate::group::IVec3;
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "crystalzeta",
    version,
    about = "Subgroup counts of the plane-group-like crystallographic groups p1, p-1, p2, pm and p2m"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the number of (normal) subgroups of index n.
    Count {
        group: AmbientGroup,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        normal: bool,
    },
    /// Print the counts for n = 1..=max as CSV.
    Series {
        group: AmbientGroup,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long)]
        normal: bool,
        #[arg(long, value_enum, default_value_t = Method::Convolution)]
        method: Method,
    },
    /// List the subgroups of index n, one JSON object per line.
    Enumerate {
        group: AmbientGroup,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        normal: bool,
    },
    /// Compare partial sums with their leading terms.
    Sum {
        #[arg(long)]
        kind: SumKind,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<u64>,
    },
    /// Run the verification suites and write a markdown report.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed forms (p2m only).
    Formula,
    /// Dirichlet convolution of zeta products.
    Convolution,
    /// Brute-force enumeration, bounded by CRYSTALZETA_ORACLE_MAX.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Exact,
    Oracle,
    Asymptotic,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Exact => vec![Suite::Exact],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::Asymptotic => vec![Suite::Asymptotic],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Serialize)]
struct EnumeratedSubgroup {
    point_image: Vec<&'static str>,
    lattice: [IVec3; 3],
    shifts: BTreeMap<&'static str, IVec3>,
    index: u64,
    normal: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Count { group, n, normal } => {
            let value = if group == AmbientGroup::P2m {
                if normal {
                    c_closed(n)
                } else {
                    a_closed(n)
                }
            } else {
                let n = to_usize(n)?;
                series(group, n, normal)
                    .map_err(|e| Failure::Runtime(e.to_string()))?
                    .get(n)
            };
            writeln!(out, "{value}")?;
        }
        Command::Series {
            group,
            max,
            normal,
            method,
        } => {
            let counts = series_counts(group, max, normal, method)?;
            writeln!(out, "n,count")?;
            for (n, c) in counts.iter().enumerate() {
                writeln!(out, "{},{c}", n + 1)?;
            }
        }
        Command::Enumerate { group, n, normal } => {
            let oracle = oracle_from_env()?;
            let subgroups = oracle
                .enumerate_subgroups(group, n, normal)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            for d in &subgroups {
                let line = serde_json::to_string(&enumerated(d, group)?)
                    .map_err(|e| Failure::Runtime(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
        Command::Sum { kind, points } => {
            let report =
                convergence_report(kind, &points).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "x,raw_sum,normalized,target,rel_err")?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{:.12},{:.12},{:.6e}",
                    r.x, r.raw_sum, r.normalized, r.target, r.rel_err
                )?;
            }
            writeln!(out, "fitted_exponent,{:.6}", report.fitted_exponent)?;
        }
        Command::Verify { suite, out: path } => {
            let oracle = oracle_from_env()?;
            let report = verify::run(&suite.suites(), oracle);
            let md = report.to_markdown();
            match path {
                Some(p) => std::fs::write(&p, md)
                    .map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?,
                None => out.write_all(md.as_bytes())?,
            }
            return Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            });
        }
    }
    Ok(EXIT_OK)
}

fn series_counts(
    group: AmbientGroup,
    max: u64,
    normal: bool,
    method: Method,
) -> Result<Vec<i64>, Failure> {
    match method {
        Method::Formula => {
            if group != AmbientGroup::P2m {
                return Err(Failure::Usage(format!(
                    "--method formula is only available for p2m, not {}",
                    group.symbol()
                )));
            }
            let f = if normal { c_closed } else { a_closed };
            Ok((1..=max).map(f).collect())
        }
        Method::Convolution => {
            let table = series(group, to_usize(max)?, normal)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            Ok(table.as_slice().to_vec())
        }
        Method::Oracle => {
            let oracle = oracle_from_env()?;
            (1..=max)
                .map(|n| {
                    oracle
                        .oracle_count(group, n, normal)
                        .map(|c| c as i64)
                        .map_err(|e| Failure::Usage(e.to_string()))
                })
                .collect()
        }
    }
}

fn enumerated(d: &SubgroupDescriptor, group: AmbientGroup) -> Result<EnumeratedSubgroup, Failure> {
    let normal = descriptor_is_normal(d, group).map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(EnumeratedSubgroup {
        point_image: d.point_image.tags(),
        lattice: d.lattice.rows(),
        shifts: d.shifts.iter().map(|(q, t)| (q.tag(), *t)).collect(),
        index: d.index(group),
        normal,
    })
}

fn oracle_from_env() -> Result<Oracle, Failure> {
    Oracle::from_env().map_err(|e| Failure::Usage(e.to_string()))
}

fn to_usize(n: u64) -> Result<usize, Failure> {
    usize::try_from(n).map_err(|_| Failure::Usage(format!("{n} is too large")))
}
