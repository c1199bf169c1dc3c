//! Command-line surface: `nogo defect|signalling|locc|characterize|report`.
//!
//! Exit codes: 0 when a result was computed (whatever the verdict), 1 when
//! `--fail-on-violation` is set and a violation was found, 2 on input or
//! output errors, 3 on a degenerate LOCC resource.

mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::characterize::{sweep, trajectory, SweepGrid, TrajectoryKind};
use crate::locc::locc_verdict;
use crate::numeric::c;
use crate::qubit::{universality_defect, EnsembleParam, QubitSpec, Sign};
use crate::signalling::signalling_verdict;
use crate::tolerance::VIOLATION_TOL;
use crate::Error;

pub use render::{format_complex, format_float, records_csv, trajectory_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// Largest deviation of `‖(a, b)‖` from one accepted without `--renormalize`.
pub const INGEST_NORM_TOL: f64 = 1e-6;
pub const TOL_ENV: &str = "NOGO_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "nogo",
    version,
    about = "Checks a hypothetical universal Hadamard machine against no-signalling and LOCC monotonicity"
)]
struct Cli {
    /// Violation threshold (overrides NOGO_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Exit with status 1 when a violation is detected.
    #[arg(long, global = true)]
    fail_on_violation: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between the linear Hadamard and the machine's required output.
    Defect(StateArgs),
    /// No-signalling protocol on the four-level resource.
    Signalling(StateArgs),
    /// Entanglement protocol on the product resource.
    Locc(StateArgs),
    /// Grid sweep or ensemble trajectory as CSV.
    Characterize(CharacterizeArgs),
    /// Full reproduction of both protocols with every intermediate object.
    Report(StateArgs),
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Amplitude of |0>, as real and imaginary parts.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true,
          conflicts_with = "ensemble_beta", requires = "b")]
    a: Option<Vec<f64>>,
    /// Amplitude of |1>, as real and imaginary parts.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true,
          conflicts_with = "ensemble_beta", requires = "a")]
    b: Option<Vec<f64>>,
    /// Pick the ensemble state (alpha + i beta)|0> + alpha|1>.
    #[arg(long, allow_negative_numbers = true)]
    ensemble_beta: Option<f64>,
    /// Sign of alpha for --ensemble-beta.
    #[arg(long, value_parser = parse_sign, default_value = "+", requires = "ensemble_beta")]
    sign: Sign,
    /// Rescale --a/--b to unit norm instead of rejecting them.
    #[arg(long)]
    renormalize: bool,
}

#[derive(Debug, Args)]
struct CharacterizeArgs {
    #[arg(long, default_value_t = 10)]
    theta: usize,
    #[arg(long, default_value_t = 10)]
    phi: usize,
    #[arg(long, default_value_t = 1)]
    chi: usize,
    /// Emit a Bloch trajectory instead of a grid sweep.
    #[arg(long, value_enum)]
    trajectory: Option<Which>,
    #[arg(long, default_value_t = 41)]
    points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Ensemble,
    Complement,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// How the user specified the state; echoed back in reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSource {
    Amplitudes,
    Ensemble(EnsembleParam),
    Default,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Degenerate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateResource(_) | Error::DegenerateNormalization(_) => {
                Failure::Degenerate(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

/// Entry point used by the binary: reads `NOGO_TOL` from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_tol = std::env::var(TOL_ENV).ok();
    run_with_env(args, env_tol.as_deref(), out, err)
}

pub fn run_with_env<I, T>(
    args: I,
    env_tol: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli, env_tol, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Degenerate(msg)) => {
            let _ = writeln!(err, "degenerate configuration: {msg}");
            EXIT_DEGENERATE
        }
    }
}

fn resolve_tol(flag: Option<f64>, env: Option<&str>) -> Result<f64, Failure> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| Failure::Input(format!("{TOL_ENV}={s:?} is not a number")))?,
        (None, None) => VIOLATION_TOL,
    };
    if !tol.is_finite() || tol < 0.0 {
        return Err(Failure::Input(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    Ok(tol)
}

fn ingest_state(args: &StateArgs, allow_default: bool) -> Result<(QubitSpec, StateSource), Failure> {
    if let Some(beta) = args.ensemble_beta {
        let param = EnsembleParam::new(beta, args.sign)?;
        return Ok((param.state(), StateSource::Ensemble(param)));
    }
    match (&args.a, &args.b) {
        (Some(a), Some(b)) => {
            let (a, b) = (c(a[0], a[1]), c(b[0], b[1]));
            if ![a.re, a.im, b.re, b.im].iter().all(|x| x.is_finite()) {
                return Err(Failure::Input("amplitudes must be finite".into()));
            }
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if !args.renormalize && (norm - 1.0).abs() > INGEST_NORM_TOL {
                return Err(Failure::Input(format!(
                    "state norm {norm} deviates from 1 by more than {INGEST_NORM_TOL}; pass --renormalize to rescale"
                )));
            }
            Ok((QubitSpec::normalized(a, b)?, StateSource::Amplitudes))
        }
        _ if allow_default => Ok((default_state(), StateSource::Default)),
        _ => Err(Failure::Input(
            "a state is required: --a RE IM --b RE IM, or --ensemble-beta B [--sign +|-]".into(),
        )),
    }
}

/// `(|0⟩ + i|1⟩)/√2`.
pub fn default_state() -> QubitSpec {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    QubitSpec::new(c(r, 0.0), c(0.0, r)).expect("normalized")
}

/// Ensemble state with `β = 1/√3`, `α = +1/√3`.
pub fn reference_state() -> (QubitSpec, EnsembleParam) {
    let p = EnsembleParam::new(1.0 / 3f64.sqrt(), Sign::Plus).expect("beta in range");
    (p.state(), p)
}

fn emit(cli: &Cli, out: &mut dyn Write, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(body.as_bytes())?;
            w.flush()?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli, env_tol: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    let tol = resolve_tol(cli.tol, env_tol)?;
    let (body, violated) = match &cli.command {
        Command::Defect(args) => {
            let (psi, source) = ingest_state(args, false)?;
            let body = render::defect(&psi, source, tol, cli.format);
            (body, universality_defect(&psi) > tol)
        }
        Command::Signalling(args) => {
            let (psi, source) = ingest_state(args, false)?;
            let v = signalling_verdict(&psi, tol);
            (render::signalling(&psi, source, &v, cli.format), v.signalling)
        }
        Command::Locc(args) => {
            let (psi, source) = ingest_state(args, false)?;
            let v = locc_verdict(&psi, tol)?;
            (render::locc(&psi, source, &v, cli.format), v.violation)
        }
        Command::Characterize(args) => {
            if cli.format == Format::Json {
                return Err(Failure::Input("characterize emits CSV only".into()));
            }
            let body = match args.trajectory {
                Some(which) => {
                    let kind = match which {
                        Which::Ensemble => TrajectoryKind::Ensemble,
                        Which::Complement => TrajectoryKind::Complement,
                    };
                    trajectory_csv(&trajectory(args.points, kind)?)
                }
                None => {
                    let grid = SweepGrid::new(args.theta, args.phi, args.chi)?;
                    records_csv(&sweep(&grid)?)
                }
            };
            (body, false)
        }
        Command::Report(args) => {
            if cli.format == Format::Csv {
                return Err(Failure::Input("report supports text or json".into()));
            }
            let (psi, source) = ingest_state(args, true)?;
            let user = render::ReportRun::new(&psi, source, tol)?;
            let (reference, param) = reference_state();
            let reference = render::ReportRun::new(&reference, StateSource::Ensemble(param), tol)?;
            let violated = user.signalling.signalling || user.locc.violation;
            (render::report(&user, &reference, tol, cli.format), violated)
        }
    };
    emit(cli, out, &body)?;
    Ok(if cli.fail_on_violation && violated {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}
