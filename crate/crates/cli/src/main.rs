//! `dirac1d`: CSV sweeps over the exact 1-D Dirac scattering solutions.
//!
//! Energies, momenta and lengths are in units of the rest mass (`m = 1`),
//! except for the `massless` command which has no mass scale.
//!
//! Exit codes: 0 success, 1 usage, 2 physics or parse error, 3 numerical failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirac1d::profile::parse_profile;
use dirac1d::sweep::{
    run_barrier_sweep, run_massless_sweep, run_overlap_sweep, run_step_sweep, verify_barrier,
    verify_massless, verify_overlap, verify_step, write_csv, Axis, CsvRecord, GridSpec,
    ProfileRecord, Quantity, SweepSpec, VerifyReport,
};
use dirac1d::transfer::solve_profile_direct;
use dirac1d::{classify_mode, scatter_profile, Error, PhysParams, PotentialProfile, Side};

#[derive(Parser, Debug)]
#[command(
    name = "dirac1d",
    version,
    about = "Exact scattering of the 1-D Dirac equation on piecewise-constant potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check a random 1% of the records against an independent solve.
    #[arg(long)]
    verify: bool,
    /// Tolerance for --verify and for quadratures.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Seed choosing the records checked by --verify.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Massive commands always work in units of `m`; the flag only acknowledges it.
#[derive(Args, Debug)]
struct MassUnits {
    /// Energies, momenta and inverse lengths are in units of m (always on).
    #[arg(long = "mass-units", default_value_t = true)]
    _mass_units: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reflection off a single step of height V0 over a grid of incident momenta.
    StepSweep {
        #[arg(long, allow_negative_numbers = true)]
        v0: f64,
        /// start:end:count
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        /// Sweep total energy E instead of momentum k (shows the gap).
        #[arg(long)]
        energy_axis: bool,
        #[command(flatten)]
        units: MassUnits,
        #[command(flatten)]
        common: Common,
    },
    /// Reflection off a square barrier of height V0 and width a over incident momenta.
    BarrierSweep {
        #[arg(long, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long)]
        width: f64,
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        #[command(flatten)]
        units: MassUnits,
        #[command(flatten)]
        common: Common,
    },
    /// Overlap per unit length over a grid of step heights V0.
    OverlapSweep {
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        #[command(flatten)]
        units: MassUnits,
        #[command(flatten)]
        common: Common,
    },
    /// Massless step over a grid of energies, in absolute units.
    Massless {
        #[arg(long, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, allow_hyphen_values = true)]
        grid: GridSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Scatter at one energy off a profile file.
    Profile {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        #[command(flatten)]
        units: MassUnits,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
    fn physics(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
    fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSweep(_) => Failure::usage(e.to_string()),
            _ if e.is_numerical() => Failure::numerical(e.to_string()),
            _ => Failure::physics(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::physics(format!("I/O: {e}"))
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::physics(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<R: CsvRecord>(records: &[R], common: &Common) -> Result<(), Failure> {
    write_csv(records, output(&common.out)?)?;
    Ok(())
}

fn report(rep: VerifyReport) -> Result<(), Failure> {
    if rep.passed() {
        eprintln!("verified {} record(s)", rep.checked);
        Ok(())
    } else {
        Err(Failure::numerical(format!(
            "verification failed for {} of {} record(s):\n  {}",
            rep.failures.len(),
            rep.checked,
            rep.failures.join("\n  ")
        )))
    }
}

/// Exit 3 if any record failed numerically; other row errors are left in the CSV.
fn row_errors<'a>(errors: impl Iterator<Item = &'a Error>) -> Result<(), Failure> {
    let numerical: Vec<String> = errors
        .filter(|e| e.is_numerical())
        .map(|e| e.to_string())
        .collect();
    if numerical.is_empty() {
        Ok(())
    } else {
        Err(Failure::numerical(format!(
            "{} record(s) failed numerically; first: {}",
            numerical.len(),
            numerical[0]
        )))
    }
}

fn lead_diagnosis(profile: &PotentialProfile, energy: f64, side: Side) -> String {
    let v = match side {
        Side::Left => profile.left_lead(),
        Side::Right => profile.right_lead(),
    };
    let mode = classify_mode(energy, PhysParams::new(1.0, v));
    format!(
        "{side} lead at V = {v}: E - V = {} lies in the gap (-1, 1), mode {:?}",
        energy - v,
        mode.kind
    )
}

fn read_profile(path: &Path) -> Result<PotentialProfile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::physics(format!("cannot read {}: {e}", path.display())))?;
    parse_profile(&text).map_err(|e| Failure::physics(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::StepSweep {
            v0,
            grid,
            energy_axis,
            common,
            ..
        } => {
            let spec = SweepSpec {
                v0,
                axis: if energy_axis {
                    Axis::Energy
                } else {
                    Axis::Momentum
                },
                ..SweepSpec::new(Quantity::StepR, grid)
            };
            let records = run_step_sweep(&spec)?;
            emit(&records, &common)?;
            if common.verify {
                report(verify_step(&records, common.seed, common.tol))?;
            }
        }
        Command::BarrierSweep {
            v0,
            width,
            grid,
            common,
            ..
        } => {
            let spec = SweepSpec {
                v0,
                width: Some(width),
                ..SweepSpec::new(Quantity::BarrierR, grid)
            };
            let records = run_barrier_sweep(&spec)?;
            emit(&records, &common)?;
            row_errors(records.iter().filter_map(|r| r.result.as_ref().err()))?;
            if common.verify {
                report(verify_barrier(&records, v0, width, common.tol, common.seed))?;
            }
        }
        Command::OverlapSweep { grid, common, .. } => {
            let spec = SweepSpec {
                tol: common.tol,
                ..SweepSpec::new(Quantity::OverlapN, grid)
            };
            let records = run_overlap_sweep(&spec)?;
            emit(&records, &common)?;
            row_errors(records.iter().filter_map(|r| r.report.as_ref().err()))?;
            if common.verify {
                report(verify_overlap(&records, common.tol, common.seed))?;
            }
        }
        Command::Massless { v0, grid, common } => {
            let spec = SweepSpec {
                v0,
                ..SweepSpec::new(Quantity::MasslessR, grid)
            };
            let records = run_massless_sweep(&spec)?;
            emit(&records, &common)?;
            if common.verify {
                report(verify_massless(&records, common.tol, common.seed))?;
            }
        }
        Command::Profile {
            file,
            energy,
            common,
            ..
        } => {
            let profile = read_profile(&file)?;
            let result = scatter_profile(&profile, energy, 1.0).map_err(|e| match e {
                Error::EvanescentLead { side, .. } => {
                    Failure::physics(format!("{e}; {}", lead_diagnosis(&profile, energy, side)))
                }
                other => other.into(),
            })?;
            let record = ProfileRecord {
                k: result.k_left,
                energy,
                result: Ok(result),
            };
            emit(std::slice::from_ref(&record), &common)?;
            if common.verify {
                let direct = solve_profile_direct(&profile, energy, 1.0)?;
                let close = |a: dirac1d::Complex64, b: dirac1d::Complex64| {
                    (a - b).norm() <= common.tol * (1.0 + b.norm())
                };
                let unitary = (result.reflection + result.transmission - 1.0).abs() <= common.tol;
                let mut rep = VerifyReport {
                    checked: 1,
                    failures: Vec::new(),
                };
                if !close(result.f, direct.f) || !close(result.g, direct.g) || !unitary {
                    rep.failures
                        .push(format!("E = {energy}: transfer and direct solves disagree"));
                }
                report(rep)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
