// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! `lgcavity`: scans, minima, fits and oracle checks for two-time LG
//! inequalities of a qubit coupled to a thermal cavity mode.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical or truncation
//! failure, 4 fit did not converge.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lgcavity::analysis::{
    fit_points, fit_power_law, scan, sweep_coupling, sweep_temperature, FitResult, LgProblem, MinimumRecord,
};
use lgcavity::engine::{lg_quad_with_trace, CorrelatorMode};
use lgcavity::model::qubit_moments;
use lgcavity::oracle::{default_dim, CouplingModel, FockOracle, JointOracle, TruncatedSpace};
use lgcavity::vtrace::{LinearExact, Perturbative};
use lgcavity::{ModelParams, VTraceProvider};
use serde::Serialize;

use config::{CommonArgs, ProviderKind, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("fit did not converge")]
    FitNotConverged,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::FitNotConverged => 4,
        }
    }
}

impl From<lgcavity::Error> for CliError {
    fn from(e: lgcavity::Error) -> Self {
        if e.is_argument_error() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lgcavity", version, about = "Two-time Leggett-Garg inequalities of a qubit in a thermal cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// LG values on a time grid (CSV).
    Scan(OutArgs),
    /// First violating minimum of LG_{1,-1} per temperature (CSV).
    Minima(OutArgs),
    /// Fit `a·x^b + c` to a minima CSV against 1/beta (JSON).
    Fit(FitArgs),
    /// Fitted exponents b1, b2 per coupling (CSV).
    SweepG(OutArgs),
    /// Compare the analytic traces against the dense Fock-space oracle (JSON).
    OracleCheck(OutArgs),
}

#[derive(Debug, clap::Args)]
struct OutArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FitTarget {
    /// log(-LG_min)
    Lgmin,
    /// log(T_min)
    Tmin,
}

#[derive(Debug, clap::Args)]
struct FitArgs {
    /// CSV produced by `minima`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "lgmin")]
    target: FitTarget,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("LGCAVITY_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("LGCAVITY_THREADS: `{value}` is not a nonnegative integer")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("LGCAVITY_THREADS: {e}")))?;
    }
    Ok(())
}

fn provider_for(cfg: &RunConfig) -> Box<dyn VTraceProvider> {
    match cfg.provider {
        ProviderKind::Perturbative => Box::new(Perturbative),
        ProviderKind::Exact => Box::new(LinearExact),
        ProviderKind::Oracle => Box::new(FockOracle::new(cfg.model, cfg.oracle_dim)),
    }
}

fn problem<'a>(cfg: &RunConfig, provider: &'a dyn VTraceProvider) -> LgProblem<'a> {
    LgProblem {
        mode: cfg.mode,
        provider,
        params: cfg.params,
        obs: cfg.obs,
        rho_q: cfg.rho_q,
        tol: cfg.tol,
    }
}

fn cmd_scan(cfg: &RunConfig) -> Result<String, CliError> {
    let provider = provider_for(cfg);
    let series = scan(&problem(cfg, provider.as_ref()), &cfg.t_grid)?;
    Ok(output::scan_csv(&series))
}

fn cmd_minima(cfg: &RunConfig) -> Result<String, CliError> {
    let provider = provider_for(cfg);
    let records = sweep_temperature(&problem(cfg, provider.as_ref()), &cfg.betas, &cfg.t_grid, cfg.refine_tol)?;
    if records.len() < cfg.betas.len() {
        eprintln!(
            "{} of {} temperatures produced no violating minimum (sweep stops at the first)",
            cfg.betas.len() - records.len(),
            cfg.betas.len()
        );
    }
    Ok(output::minima_csv(&records))
}

fn cmd_sweep_g(cfg: &RunConfig) -> Result<String, CliError> {
    let provider = provider_for(cfg);
    let rows = sweep_coupling(&problem(cfg, provider.as_ref()), &cfg.g_grid, &cfg.betas, &cfg.t_grid, cfg.refine_tol)?;
    for r in &rows {
        if let Some(note) = &r.note {
            eprintln!("g={}: {note}", r.coupling);
        }
    }
    Ok(output::sweep_csv(&rows))
}

#[derive(Debug, Serialize)]
struct FitReport {
    a: f64,
    b: f64,
    c: f64,
    residual_rms: f64,
    converged: bool,
    n_points: usize,
}

impl From<FitResult> for FitReport {
    fn from(f: FitResult) -> Self {
        Self { a: f.a, b: f.b, c: f.c, residual_rms: f.residual_rms, converged: f.converged, n_points: f.n_points }
    }
}

fn cmd_fit(args: &FitArgs) -> Result<(String, bool), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.input.display())))?;
    let records: Vec<MinimumRecord> = output::parse_minima_csv(&text)?;
    let (lg_pts, t_pts) = fit_points(&records);
    let skipped = records.len() - lg_pts.len();
    if skipped > 0 {
        eprintln!("skipped {skipped} rows without a finite-temperature violation");
    }
    let pts = match args.target {
        FitTarget::Lgmin => lg_pts,
        FitTarget::Tmin => t_pts,
    };
    let fit = fit_power_law(&pts, None)?;
    let json = serde_json::to_string_pretty(&FitReport::from(fit)).expect("serialisable");
    Ok((json + "\n", fit.converged))
}

#[derive(Debug, Serialize)]
struct OracleReport {
    max_vtrace_err: f64,
    g6_ratio: Option<f64>,
    prob_norm_err: f64,
    mode_discrepancy_max: f64,
}

/// Points of the time grid used for the joint-space simulation.
const JOINT_SAMPLES: usize = 17;

fn analytic_provider(model: CouplingModel) -> Box<dyn VTraceProvider> {
    match model {
        CouplingModel::Quadratic => Box::new(Perturbative),
        CouplingModel::Linear => Box::new(LinearExact),
    }
}

fn max_trace_error(params: &ModelParams, cfg: &RunConfig) -> Result<f64, CliError> {
    let analytic = analytic_provider(cfg.model);
    let oracle = FockOracle::new(cfg.model, cfg.oracle_dim);
    let mut worst = 0.0f64;
    for &t in &cfg.t_grid {
        let a = analytic.v_trace(params, t, cfg.tol)?;
        let b = oracle.v_trace(params, t, cfg.tol)?;
        worst = worst.max((a.value - b.value).norm());
    }
    Ok(worst)
}

fn cmd_oracle_check(cfg: &RunConfig) -> Result<String, CliError> {
    let params = cfg.params;
    let max_vtrace_err = max_trace_error(&params, cfg)?;
    let g6_ratio = match cfg.model {
        CouplingModel::Quadratic => {
            let half = params.with_coupling(params.coupling() * 0.5)?;
            let denom = max_trace_error(&half, cfg)?;
            Some(max_vtrace_err / denom)
        }
        CouplingModel::Linear => None,
    };
    let dim = match cfg.oracle_dim {
        Some(d) => d,
        None => default_dim(&params)?,
    };
    let joint = JointOracle::new(&params, &TruncatedSpace::new(dim)?, cfg.model)?;
    let stride = cfg.t_grid.len().div_ceil(JOINT_SAMPLES).max(1);
    let mut prob_norm_err = 0.0f64;
    for &t in cfg.t_grid.iter().step_by(stride) {
        let sim = joint.lg(&cfg.obs, &cfg.rho_q, t)?;
        prob_norm_err = prob_norm_err.max((sim.total_probability() - 1.0).abs());
    }
    let analytic = analytic_provider(cfg.model);
    let moments = qubit_moments(&cfg.obs, &cfg.rho_q);
    let mut mode_discrepancy_max = 0.0f64;
    for &t in &cfg.t_grid {
        let v = analytic.v_trace(&params, t, cfg.tol)?;
        let paper = lg_quad_with_trace(CorrelatorMode::Paper, &v, &params, &cfg.obs, &moments, t);
        let derived = lg_quad_with_trace(CorrelatorMode::Derived, &v, &params, &cfg.obs, &moments, t);
        mode_discrepancy_max = mode_discrepancy_max.max((paper.lg_pm - derived.lg_pm).abs());
    }
    let report = OracleReport { max_vtrace_err, g6_ratio, prob_norm_err, mode_discrepancy_max };
    Ok(serde_json::to_string_pretty(&report).expect("serialisable") + "\n")
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
}

fn write_output(out: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write output: {e}")))
        }
    }
}

/// `<out>.meta.json` next to a data file.
fn write_meta(out: Option<&PathBuf>, command: &str, cfg: &RunConfig) -> Result<(), CliError> {
    let Some(path) = out else {
        return Ok(());
    };
    let mut meta_path = path.clone().into_os_string();
    meta_path.push(".meta.json");
    let meta = Meta { tool: "lgcavity", version: env!("CARGO_PKG_VERSION"), command, config: cfg };
    let body = serde_json::to_string_pretty(&meta).expect("serialisable") + "\n";
    std::fs::write(&meta_path, body)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", PathBuf::from(&meta_path).display())))
}

fn run_config_command(
    name: &str,
    args: &OutArgs,
    f: fn(&RunConfig) -> Result<String, CliError>,
) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&args.common)?;
    let body = f(&cfg)?;
    write_output(args.out.as_ref(), &body)?;
    write_meta(args.out.as_ref(), name, &cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match &cli.command {
        Command::Scan(a) => run_config_command("scan", a, cmd_scan),
        Command::Minima(a) => run_config_command("minima", a, cmd_minima),
        Command::SweepG(a) => run_config_command("sweep-g", a, cmd_sweep_g),
        Command::OracleCheck(a) => run_config_command("oracle-check", a, cmd_oracle_check),
        Command::Fit(a) => {
            let (body, converged) = cmd_fit(a)?;
            write_output(a.out.as_ref(), &body)?;
            if converged {
                Ok(())
            } else {
                Err(CliError::FitNotConverged)
            }
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_ansi(std::io::IsTerminal::is_terminal(&std::io::stderr()))
        .without_time()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn,lgcavity=info")),
        )
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lgcavity: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
