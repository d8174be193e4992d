//! `syscodes code | scan | verify`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 precondition failure,
//! 4 a checked mathematical statement failed.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use syscodes_core::chain_complex::{homological_code_bounded, CellComplex, DistanceRoute};
use syscodes_core::hyperbolic::MinTraceReport;
use syscodes_core::surface_family::FamilyDescriptor;

use crate::complex_file::{load_complex, ComplexFile, FormatError};
use crate::parallel;
use crate::random::DEFAULT_SEED;
use crate::report::{decimal, write_scan_csv};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "syscodes",
    version,
    about = "Homological quantum codes, systoles and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the homological code of a family member or a JSON complex file.
    Code {
        /// Family descriptor (torus:4, tritorus:3, genus:2, rp2,
        /// subdiv:torus:2:rounds=2) or path to a complex file.
        target: String,
        /// Cell dimension carrying the qubits.
        #[arg(long = "i", default_value_t = 1)]
        dimension: usize,
        /// Largest weight tried by the distance searches.
        #[arg(long)]
        max_weight: Option<usize>,
        /// Print a minimum-weight logical operator.
        #[arg(long)]
        witness: bool,
        /// Also write the complex as JSON.
        #[arg(long, value_name = "PATH")]
        write_complex: Option<PathBuf>,
    },
    /// Tabulate d²/n and related ratios over family members as CSV.
    Scan {
        #[arg(required = true, num_args = 1..)]
        descriptors: Vec<String>,
        /// CSV destination; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Prime p ≡ 3 (mod 4) for the fuchsian suite.
        #[arg(long)]
        p: Option<i64>,
        /// Congruence modulus N for the fuchsian suite.
        #[arg(long = "N")]
        modulus: Option<i64>,
        /// Coefficient bound B for the fuchsian suite (default 2N²).
        #[arg(long = "B")]
        bound: Option<i64>,
        /// Write the fuchsian rows as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// η for the metric suite, as a decimal or a fraction.
        #[arg(long, default_value = "1/2")]
        eta: String,
        /// Qubits for the oracle suite.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Random instances per oracle check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Fuchsian,
    Metric,
    Oracle,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Precondition(String),
    Violation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Violation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Precondition(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Code {
            target,
            dimension,
            max_weight,
            witness,
            write_complex,
        } => cmd_code(&target, dimension, max_weight, witness, write_complex.as_deref(), out),
        Command::Scan { descriptors, output } => cmd_scan(&descriptors, output.as_deref(), out),
        Command::Verify {
            suite,
            p,
            modulus,
            bound,
            csv,
            eta,
            n,
            trials,
            seed,
        } => match suite {
            Suite::Fuchsian => cmd_fuchsian(p, modulus, bound, csv.as_deref(), out),
            Suite::Metric => {
                let eta = verify::parse_ratio(&eta).map_err(Failure::Usage)?;
                let outcome = verify::metric(eta).map_err(Failure::Precondition)?;
                finish_suite("metric", &outcome, out)
            }
            Suite::Oracle => {
                let outcome = verify::oracle(n, trials, seed).map_err(Failure::Precondition)?;
                finish_suite("oracle", &outcome, out)
            }
        },
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("cannot write output: {e}"))
}

fn resolve_target(target: &str) -> Result<(String, CellComplex), Failure> {
    match target.parse::<FamilyDescriptor>() {
        Ok(d) => {
            let member = d.build().map_err(|e| Failure::Precondition(format!("{target}: {e}")))?;
            Ok((d.to_string(), member.complex))
        }
        Err(_) if Path::new(target).exists() => Ok((target.to_string(), load_complex(Path::new(target))?)),
        Err(_) => Err(Failure::Usage(format!(
            "{target:?} is neither a family descriptor nor an existing file"
        ))),
    }
}

fn cmd_code(
    target: &str,
    i: usize,
    max_weight: Option<usize>,
    witness: bool,
    write_complex: Option<&Path>,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let (name, complex) = resolve_target(target)?;
    if let Some(path) = write_complex {
        std::fs::write(path, ComplexFile::from_complex(&complex).to_json())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if i > complex.dim() {
        return Err(Failure::Precondition(format!(
            "dimension {i} exceeds complex dimension {}",
            complex.dim()
        )));
    }
    let cap = max_weight.unwrap_or(complex.cell_count(i));
    let code = homological_code_bounded(&complex, i, cap).map_err(|e| Failure::Precondition(e.to_string()))?;
    let p = &code.params;
    let d = p.d.expect("distance computed");
    let w = |e| io_failure(e);
    writeln!(out, "target: {name}").map_err(w)?;
    writeln!(out, "{p}").map_err(w)?;
    writeln!(out, "n={} k={} d={d}", p.n, p.k).map_err(w)?;
    let show = |s: &Option<syscodes_core::Systole>| s.as_ref().map_or(format!("> {cap}"), |s| s.weight.to_string());
    match code.route {
        DistanceRoute::Systoles => {
            writeln!(
                out,
                "csys_{i}(primal)={} csys_{}(dual)={}",
                show(&code.primal_systole),
                complex.dim() - i,
                show(&code.dual_systole)
            )
            .map_err(w)?;
            writeln!(out, "route: systoles").map_err(w)?;
        }
        DistanceRoute::Css => writeln!(out, "route: css search").map_err(w)?,
    }
    let ratio = Ratio::new((d * d) as u64, p.n as u64);
    writeln!(out, "d^2/n={}", decimal(ratio, 6)).map_err(w)?;
    if witness {
        let text = match code.route {
            DistanceRoute::Systoles => {
                let mut best = None;
                for (side, s) in [("primal", &code.primal_systole), ("dual", &code.dual_systole)] {
                    if let Some(s) = s {
                        if s.weight == d && best.is_none() {
                            best = Some(format!("{side} cycle on cells {:?}", s.witness.support()));
                        }
                    }
                }
                best.expect("one side attains d")
            }
            DistanceRoute::Css => {
                let found = code
                    .css
                    .distance(cap)
                    .map_err(|e| Failure::Precondition(e.to_string()))?;
                format!("{:?}-type logical on cells {:?}", found.kind, found.witness.support())
            }
        };
        writeln!(out, "witness: {text}").map_err(w)?;
    }
    Ok(())
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    Ok(parallel::pool(parallel::thread_count().map_err(Failure::Usage)?))
}

fn cmd_scan(descriptors: &[String], output: Option<&Path>, out: &mut impl Write) -> Result<(), Failure> {
    let parsed = descriptors
        .iter()
        .map(|s| s.parse::<FamilyDescriptor>().map_err(|e| Failure::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let file = match output {
        Some(path) => Some(File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?),
        None => None,
    };
    let pool = thread_pool()?;
    let mut reports = Vec::with_capacity(parsed.len());
    for (d, r) in parsed.iter().zip(parallel::scan(&pool, &parsed, None)) {
        reports.push(r.map_err(|e| Failure::Precondition(format!("{d}: {e}")))?);
    }
    let written = match file {
        Some(f) => write_scan_csv(f, &reports),
        None => write_scan_csv(&mut *out, &reports),
    };
    written.map_err(|e| Failure::Usage(format!("cannot write CSV: {e}")))?;
    let violations: Vec<&str> = reports
        .iter()
        .filter(|r| r.is_triangulation && !r.bound_36_satisfied)
        .map(|r| r.descriptor.as_str())
        .collect();
    if !violations.is_empty() {
        return Err(Failure::Violation(format!(
            "d^2 <= 36n fails on triangulation members {}",
            violations.join(", ")
        )));
    }
    Ok(())
}

fn cmd_fuchsian(
    p: Option<i64>,
    modulus: Option<i64>,
    bound: Option<i64>,
    csv: Option<&Path>,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let grid = if p.is_none() && modulus.is_none() && bound.is_none() {
        verify::fuchsian_grid()
    } else {
        let n = modulus.unwrap_or(2);
        vec![(p.unwrap_or(3), n, bound.unwrap_or(2 * n * n))]
    };
    let pool = thread_pool()?;
    let (outcome, reports) = verify::fuchsian(&pool, &grid).map_err(Failure::Precondition)?;
    if let Some(path) = csv {
        let mut text = String::from(MinTraceReport::CSV_HEADER);
        text.push('\n');
        for r in &reports {
            text.push_str(&r.csv_row());
            text.push('\n');
        }
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    finish_suite("fuchsian", &outcome, out)
}

fn finish_suite(name: &str, outcome: &verify::SuiteOutcome, out: &mut impl Write) -> Result<(), Failure> {
    for line in &outcome.lines {
        writeln!(out, "{line}").map_err(io_failure)?;
    }
    for line in &outcome.info {
        writeln!(out, "{line}").map_err(io_failure)?;
    }
    let failed = outcome.lines.iter().filter(|l| !l.passed).count();
    if failed == 0 {
        let total = outcome.lines.len();
        let noun = if total == 1 { "check" } else { "checks" };
        writeln!(out, "verify {name}: pass ({total} {noun})").map_err(io_failure)?;
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "verify {name}: {failed} of {} checks failed",
            outcome.lines.len()
        )))
    }
}
