//! Argument definitions and flag-value parsing.

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "unruh-discord",
    about = "Quantum correlations of fermionic Unruh modes for an accelerated observer",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate the correlation measures of one sector state; prints JSON.
    Compute(ComputeArgs),
    /// Sweep measures over parameter ranges; emits CSV or JSON rows.
    Sweep(SweepArgs),
    /// Emit the preset figure datasets (1-4) as CSV files plus notes.
    Figure(FigureArgs),
    /// Run the convention-search and closed-form reconciliation harnesses.
    Reconcile(ReconcileArgs),
}

#[derive(Args)]
pub struct StateArgs {
    /// Input family: phi+, phi- or werner.
    #[arg(long)]
    pub family: String,
    /// Family angle alpha in radians (phi+ / phi-).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Werner fidelity F.
    #[arg(long)]
    pub fidelity: Option<f64>,
    /// Acceleration angle gamma in radians, in [0, pi/4].
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Alternative to --gamma: mode frequency, proper acceleration and light
    /// speed as "OMEGA,A,C"; A accepts "inf".
    #[arg(long)]
    pub accel: Option<String>,
    /// Right-branch Unruh weight q_R in [0, 1].
    #[arg(long)]
    pub qr: f64,
    /// Trace convention id, or "plain".
    #[arg(long, default_value = "plain")]
    pub convention: String,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Sector: I+, I-, II+ or II-.
    #[arg(long)]
    pub sector: String,
    /// Measure: geometric, entropic, mutual, classical or all.
    #[arg(long, default_value = "all")]
    pub measure: String,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Input family: phi+, phi- or werner.
    #[arg(long)]
    pub family: String,
    /// Comma-separated sectors, e.g. "I+,II-".
    #[arg(long)]
    pub sector: String,
    /// Comma-separated measures from {geometric, entropic, mutual, classical}.
    #[arg(long, default_value = "geometric")]
    pub measure: String,
    /// Gamma value or range "start:stop:count" (radians).
    #[arg(long)]
    pub gamma: String,
    /// q_R value or range "start:stop:count".
    #[arg(long, default_value = "1")]
    pub qr: String,
    /// Alpha value or range "start:stop:count" (phi+ / phi-).
    #[arg(long)]
    pub alpha: Option<String>,
    /// Fidelity value or range "start:stop:count" (werner).
    #[arg(long)]
    pub fidelity: Option<String>,
    /// Trace convention id, or "plain".
    #[arg(long, default_value = "plain")]
    pub convention: String,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    pub format: String,
    /// Output path; "-" writes to stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct FigureArgs {
    /// Figure preset number, 1-4.
    pub number: u32,
    /// Directory the CSV files and notes are written into.
    #[arg(long)]
    pub outdir: String,
    /// Trace convention id, or "plain".
    #[arg(long, default_value = "plain")]
    pub convention: String,
}

#[derive(Args)]
pub struct ReconcileArgs {
    /// Directory the report files are written into.
    #[arg(long)]
    pub outdir: String,
    /// Alpha grid points over [0, pi/2] for the closed-form comparison.
    #[arg(long, default_value_t = 21)]
    pub alpha_points: usize,
    /// Gamma grid points over [0, pi/4].
    #[arg(long, default_value_t = 21)]
    pub gamma_points: usize,
    /// q_R grid points over [0, 1].
    #[arg(long, default_value_t = 5)]
    pub qr_points: usize,
}

/// Parse "v" or "start:stop:count" into a grid.
pub fn parse_range(flag: &str, spec: &str) -> Result<Vec<f64>, crate::CliError> {
    let bad = || crate::CliError::domain(format!("{flag} expects a value or start:stop:count, got \"{spec}\""));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![v.parse().map_err(|_| bad())?]),
        [start, stop, count] => {
            let start: f64 = start.parse().map_err(|_| bad())?;
            let stop: f64 = stop.parse().map_err(|_| bad())?;
            let count: usize = count.parse().map_err(|_| bad())?;
            if count < 1 {
                return Err(crate::CliError::domain(format!(
                    "{flag} range count must be >= 1"
                )));
            }
            Ok(unruh_discord::closed_form::linspace(start, stop, count))
        }
        _ => Err(bad()),
    }
}

/// Parse the --accel "OMEGA,A,C" triple; A accepts "inf".
pub fn parse_accel(spec: &str) -> Result<(f64, f64, f64), crate::CliError> {
    let bad = || crate::CliError::domain(format!("--accel expects \"OMEGA,A,C\", got \"{spec}\""));
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let omega: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let a: f64 = match parts[1].trim() {
        "inf" | "Inf" | "INF" => f64::INFINITY,
        other => other.parse().map_err(|_| bad())?,
    };
    let c: f64 = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((omega, a, c))
}
