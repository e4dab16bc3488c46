//! `trijunction`: braiding checks, adiabatic runs and resource sweeps.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trijunction_core::compiler::SweepSettings;
use trijunction_core::{LayoutKind, Method, Sign, TrijunctionParams};

use output::Format;

#[derive(Parser)]
#[command(name = "trijunction", version, about = "Majorana braiding on a trijunction, simulated and compiled")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative ground-space phase and per-step conjugation checks.
    Verify(VerifyArgs),
    /// Six-step braid from Ψ± and its overlap with Ψ∓.
    Braid(BraidArgs),
    /// Trotterized interpolation through the six configurations.
    Adiabatic(AdiabaticArgs),
    /// Two-qubit gate count and depth of the compiled circuits.
    Resources(ResourcesArgs),
}

#[derive(Args, Clone, Copy)]
struct ModelArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Junction coupling t_ab.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    tcoupling: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    mu: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<TrijunctionParams, String> {
        for (name, v) in [("delta", self.delta), ("alpha", self.alpha), ("tcoupling", self.tcoupling), ("mu", self.mu)] {
            if !v.is_finite() {
                return Err(format!("--{name} must be finite"));
            }
        }
        Ok(TrijunctionParams {
            delta: self.delta,
            alpha: self.alpha,
            coupling: self.tcoupling,
            mu: self.mu,
            ..Default::default()
        })
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout; timing goes to `<out>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Debug)]
struct Sites(Vec<usize>);

/// `3`, `1-4` or `1,2,5`.
fn parse_sites(s: &str) -> Result<Sites, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid site count {t:?}"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    if let Some(bad) = out.iter().find(|&&n| n == 0) {
        return Err(format!("sites must be at least 1, got {bad}"));
    }
    out.sort_unstable();
    out.dedup();
    Ok(Sites(out))
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "1", value_parser = parse_sites)]
    sites: Sites,
    #[arg(long, value_delimiter = ',', default_value = "coupler")]
    mapping: Vec<LayoutKind>,
    /// Step counts to check; 0, 3 or 6.
    #[arg(long, value_delimiter = ',', default_value = "3,6")]
    steps: Vec<usize>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BraidArgs {
    #[arg(long, default_value = "1", value_parser = parse_sites)]
    sites: Sites,
    #[arg(long, value_delimiter = ',', default_value = "coupler")]
    mapping: Vec<LayoutKind>,
    /// Protocol steps to apply; the Ψ∓ check needs all 6.
    #[arg(long, default_value_t = 6)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
    /// Include initial and final state amplitudes.
    #[arg(long)]
    amplitudes: bool,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AdiabaticArgs {
    #[arg(long, default_value = "1", value_parser = parse_sites)]
    sites: Sites,
    #[arg(long, value_delimiter = ',', default_value = "coupler")]
    mapping: Vec<LayoutKind>,
    /// Duration of each of the six interpolations.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, value_delimiter = ',', default_value = "10")]
    trotter_steps: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
    /// Fail (exit 1) if any fidelity is below this.
    #[arg(long)]
    min_fidelity: Option<f64>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ResourcesArgs {
    #[arg(long, default_value = "1-4", value_parser = parse_sites)]
    sites: Sites,
    #[arg(long, value_delimiter = ',', default_value = "braiding,adiabatic")]
    method: Vec<Method>,
    #[arg(long, value_delimiter = ',', default_value = "coupler,continuous")]
    mapping: Vec<LayoutKind>,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, default_value_t = 10)]
    trotter_steps: usize,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn check_tau(tau: f64) -> Result<(), String> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(format!("--tau must be positive, got {tau}"))
    }
}

fn check_counts(name: &str, values: &[usize]) -> Result<(), String> {
    match values.iter().find(|&&v| v == 0) {
        Some(_) => Err(format!("--{name} must be at least 1")),
        None if values.is_empty() => Err(format!("--{name} needs a value")),
        None => Ok(()),
    }
}

fn run(command: Command) -> Result<(output::Report, Format, Option<PathBuf>, &'static str), String> {
    let core = |e: trijunction_core::Error| e.to_string();
    Ok(match command {
        Command::Verify(a) => {
            if let Some(bad) = a.steps.iter().find(|&&k| k % 3 != 0 || k > 6) {
                return Err(format!("--steps must be 0, 3 or 6, got {bad}"));
            }
            let r = commands::verify(&a.sites.0, &a.mapping, &a.steps, a.model.params()?).map_err(core)?;
            (r, a.output.format, a.output.out, "verify")
        }
        Command::Braid(a) => {
            if a.steps > 6 {
                return Err(format!("--steps must be at most 6, got {}", a.steps));
            }
            let r = commands::braid(&a.sites.0, &a.mapping, a.steps, a.sign.into(), a.amplitudes, a.model.params()?)
                .map_err(core)?;
            (r, a.output.format, a.output.out, "braid")
        }
        Command::Adiabatic(a) => {
            check_tau(a.tau)?;
            check_counts("trotter-steps", &a.trotter_steps)?;
            check_counts("reps", &[a.reps])?;
            let opts = commands::AdiabaticOptions {
                tau: a.tau,
                trotter_steps: a.trotter_steps,
                reps: a.reps,
                sign: a.sign.into(),
                min_fidelity: a.min_fidelity,
            };
            let r = commands::adiabatic(&a.sites.0, &a.mapping, &opts, a.model.params()?).map_err(core)?;
            (r, a.output.format, a.output.out, "adiabatic")
        }
        Command::Resources(a) => {
            check_tau(a.tau)?;
            check_counts("trotter-steps", &[a.trotter_steps])?;
            check_counts("reps", &[a.reps])?;
            let settings = SweepSettings {
                params: a.model.params()?,
                tau: a.tau,
                trotter_steps: a.trotter_steps,
                reps: a.reps,
            };
            let r = commands::resources(&a.sites.0, &a.method, &a.mapping, &settings).map_err(core)?;
            (r, a.output.format, a.output.out, "resources")
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (report, format, out, name) = match run(cli.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    eprintln!("{name}: wall time {seconds:.3} s");
    if let Err(e) = output::emit(&report, format, out.as_deref(), name, seconds) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("{name}: check failed");
        ExitCode::from(1)
    }
}
