// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: built-in defaults, overridden by a JSON file, overridden
//! by command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use lgcavity::analysis::{default_beta_grid, log_spaced_betas, time_grid, DEFAULT_REFINE_TOL, DEFAULT_TOL};
use lgcavity::engine::CorrelatorMode;
use lgcavity::oracle::CouplingModel;
use lgcavity::{ModelParams, Observable, QubitState};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Photon-trace source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProviderKind {
    Perturbative,
    Exact,
    Oracle,
}

impl std::str::FromStr for ProviderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "perturbative" => Ok(ProviderKind::Perturbative),
            "exact" => Ok(ProviderKind::Exact),
            "oracle" => Ok(ProviderKind::Oracle),
            other => Err(format!("unknown provider `{other}` (expected perturbative|exact|oracle)")),
        }
    }
}

const DEFAULT_G_GRID: [f64; 5] = [0.065, 0.13, 0.26, 0.39, 0.52];

/// Flags shared by the computing subcommands. All optional; unset flags fall
/// back to the config file, then to the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// quadratic | linear
    #[arg(long)]
    pub model: Option<String>,
    /// paper | derived
    #[arg(long)]
    pub mode: Option<String>,
    /// perturbative | exact | oracle
    #[arg(long)]
    pub provider: Option<String>,
    #[arg(long, value_name = "OMEGA")]
    pub omega_qubit: Option<f64>,
    #[arg(long, value_name = "OMEGA")]
    pub omega_cavity: Option<f64>,
    /// Coupling constant (real).
    #[arg(long)]
    pub g: Option<f64>,
    /// Inverse temperature, or `inf`.
    #[arg(long)]
    pub beta: Option<String>,
    /// `lo:hi:n` for n log-spaced temperatures 1/beta in [lo, hi], or a comma
    /// list of beta values (`inf` allowed).
    #[arg(long, allow_hyphen_values = true)]
    pub beta_grid: Option<String>,
    /// Comma list of couplings for `sweep-g`.
    #[arg(long)]
    pub g_grid: Option<String>,
    /// Observable components `ax,ay,az`.
    #[arg(long, allow_hyphen_values = true)]
    pub obs: Option<String>,
    /// ground | excited | plus | mixed | bloch:x,y,z
    #[arg(long, allow_hyphen_values = true)]
    pub qubit_init: Option<String>,
    /// `start:stop:step`, or three separate values.
    #[arg(long, num_args = 1..=3)]
    pub t_grid: Option<Vec<String>>,
    /// Thermal-sum tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Golden-section width for minimum refinement; 0 disables refinement.
    #[arg(long)]
    pub refine_tol: Option<f64>,
    /// Fock dimension for the oracle (default: chosen from beta).
    #[arg(long)]
    pub oracle_dim: Option<usize>,
    /// JSON configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Scalar or string JSON value (`beta: 10` or `beta: "inf"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Num(f64),
    Str(String),
}

/// List or string JSON value (`obs: [1, 0, 0]` or `obs: "1,0,0"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ListOrStr {
    List(Vec<NumOrStr>),
    Str(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: Option<String>,
    mode: Option<String>,
    provider: Option<String>,
    omega_qubit: Option<f64>,
    omega_cavity: Option<f64>,
    g: Option<f64>,
    beta: Option<NumOrStr>,
    beta_grid: Option<ListOrStr>,
    g_grid: Option<ListOrStr>,
    obs: Option<ListOrStr>,
    qubit_init: Option<String>,
    t_grid: Option<ListOrStr>,
    tol: Option<f64>,
    refine_tol: Option<f64>,
    oracle_dim: Option<usize>,
}

/// Fully resolved, validated configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "ser_name")]
    pub model: CouplingModel,
    #[serde(serialize_with = "ser_name")]
    pub mode: CorrelatorMode,
    pub provider: ProviderKind,
    #[serde(serialize_with = "ser_params")]
    pub params: ModelParams,
    #[serde(serialize_with = "ser_obs")]
    pub obs: Observable,
    pub qubit_init: String,
    #[serde(skip)]
    pub rho_q: QubitState,
    #[serde(serialize_with = "ser_grid")]
    pub t_grid: Vec<f64>,
    #[serde(serialize_with = "ser_betas")]
    pub betas: Vec<f64>,
    pub g_grid: Vec<f64>,
    pub tol: f64,
    pub refine_tol: Option<f64>,
    pub oracle_dim: Option<usize>,
}

fn beta_json(b: f64) -> serde_json::Value {
    if b.is_infinite() {
        serde_json::Value::String("inf".into())
    } else {
        serde_json::json!(b)
    }
}

fn ser_name<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_params<S: serde::Serializer>(p: &ModelParams, s: S) -> Result<S::Ok, S::Error> {
    serde_json::json!({
        "omega_qubit": p.omega_qubit(),
        "omega_cavity": p.omega_cavity(),
        "g": p.coupling().re,
        "beta": beta_json(p.inv_temperature()),
    })
    .serialize(s)
}

fn ser_obs<S: serde::Serializer>(o: &Observable, s: S) -> Result<S::Ok, S::Error> {
    let (x, y, z) = o.components();
    [x, y, z].serialize(s)
}

fn ser_grid<S: serde::Serializer>(g: &[f64], s: S) -> Result<S::Ok, S::Error> {
    serde_json::json!({
        "points": g.len(),
        "start": g.first(),
        "stop": g.last(),
    })
    .serialize(s)
}

fn ser_betas<S: serde::Serializer>(b: &[f64], s: S) -> Result<S::Ok, S::Error> {
    b.iter().map(|&x| beta_json(x)).collect::<Vec<_>>().serialize(s)
}

fn cfg_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

fn parse_f64(field: &str, s: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| cfg_err(field, format!("`{s}` is not a number")))
}

fn parse_beta(field: &str, s: &str) -> Result<f64, CliError> {
    match s.trim() {
        "inf" | "infinity" | "Inf" => Ok(f64::INFINITY),
        other => parse_f64(field, other),
    }
}

fn list_to_string(v: &ListOrStr) -> String {
    match v {
        ListOrStr::Str(s) => s.clone(),
        ListOrStr::List(items) => items
            .iter()
            .map(|x| match x {
                NumOrStr::Num(n) => format!("{n:?}"),
                NumOrStr::Str(s) => s.clone(),
            })
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn parse_list(field: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse_f64(field, p)).collect()
}

fn parse_beta_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo = parse_f64("beta_grid", parts[0])?;
        let hi = parse_f64("beta_grid", parts[1])?;
        let n = parts[2].trim().parse::<usize>().map_err(|_| cfg_err("beta_grid", "n must be a nonnegative integer"))?;
        return log_spaced_betas(lo, hi, n).map_err(|e| cfg_err("beta_grid", e));
    }
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse_beta("beta_grid", p)).collect()
}

fn parse_t_grid(parts: &[String]) -> Result<Vec<f64>, CliError> {
    let pieces: Vec<String> = match parts {
        [one] => one.split([':', ',']).map(str::to_owned).collect(),
        many => many.to_vec(),
    };
    if pieces.len() != 3 {
        return Err(cfg_err("t_grid", "expected start:stop:step"));
    }
    let v: Vec<f64> = pieces.iter().map(|p| parse_f64("t_grid", p)).collect::<Result<_, _>>()?;
    time_grid(v[0], v[1], v[2]).map_err(|e| cfg_err("t_grid", e))
}

fn parse_qubit_init(s: &str) -> Result<QubitState, CliError> {
    match s {
        "ground" => Ok(QubitState::ground()),
        "excited" => Ok(QubitState::excited()),
        "plus" => Ok(QubitState::plus_x()),
        "mixed" => Ok(QubitState::maximally_mixed()),
        other => {
            let Some(rest) = other.strip_prefix("bloch:") else {
                return Err(cfg_err("qubit_init", format!("unknown initial state `{other}`")));
            };
            let v = parse_list("qubit_init", rest)?;
            if v.len() != 3 {
                return Err(cfg_err("qubit_init", "bloch vector needs three components"));
            }
            QubitState::from_bloch(v[0], v[1], v[2]).map_err(|e| cfg_err("qubit_init", e))
        }
    }
}

fn load_file(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => load_file(p)?,
            None => ConfigFile::default(),
        };
        let model: CouplingModel = args
            .model
            .clone()
            .or(file.model)
            .map(|s| s.parse().map_err(|e| cfg_err("model", e)))
            .transpose()?
            .unwrap_or_default();
        let mode: CorrelatorMode = args
            .mode
            .clone()
            .or(file.mode)
            .map(|s| s.parse().map_err(|e| cfg_err("mode", e)))
            .transpose()?
            .unwrap_or_default();
        let provider = match args.provider.clone().or(file.provider) {
            Some(s) => s.parse::<ProviderKind>().map_err(|e| cfg_err("provider", e))?,
            None => match model {
                CouplingModel::Quadratic => ProviderKind::Perturbative,
                CouplingModel::Linear => ProviderKind::Exact,
            },
        };
        match (model, provider) {
            (CouplingModel::Linear, ProviderKind::Perturbative) => {
                return Err(cfg_err("provider", "the linear model requires provider exact or oracle"))
            }
            (CouplingModel::Quadratic, ProviderKind::Exact) => {
                return Err(cfg_err("provider", "provider exact is only available for the linear model"))
            }
            _ => {}
        }
        let omega_qubit = args.omega_qubit.or(file.omega_qubit).unwrap_or(1.0);
        let omega_cavity = args.omega_cavity.or(file.omega_cavity).unwrap_or(0.1);
        let g = args.g.or(file.g).unwrap_or(0.075);
        let beta = match (&args.beta, &file.beta) {
            (Some(s), _) => parse_beta("beta", s)?,
            (None, Some(NumOrStr::Num(n))) => *n,
            (None, Some(NumOrStr::Str(s))) => parse_beta("beta", s)?,
            (None, None) => 10.0,
        };
        let params = ModelParams::real(omega_qubit, omega_cavity, g, beta).map_err(|e| cfg_err("params", e))?;
        let obs = match args.obs.clone().or(file.obs.as_ref().map(list_to_string)) {
            Some(s) => {
                let v = parse_list("obs", &s)?;
                if v.len() != 3 {
                    return Err(cfg_err("obs", "expected ax,ay,az"));
                }
                Observable::from_components(v[0], v[1], v[2]).map_err(|e| cfg_err("obs", e))?
            }
            None => Observable::xz_bisector(),
        };
        let qubit_init = args.qubit_init.clone().or(file.qubit_init).unwrap_or_else(|| "ground".into());
        let rho_q = parse_qubit_init(&qubit_init)?;
        let t_grid = match (&args.t_grid, &file.t_grid) {
            (Some(parts), _) => parse_t_grid(parts)?,
            (None, Some(v)) => parse_t_grid(&[list_to_string(v)])?,
            (None, None) => lgcavity::analysis::default_time_grid(omega_qubit),
        };
        let betas = match args.beta_grid.clone().or(file.beta_grid.as_ref().map(list_to_string)) {
            Some(s) => parse_beta_grid(&s)?,
            None => default_beta_grid(),
        };
        let g_grid = match args.g_grid.clone().or(file.g_grid.as_ref().map(list_to_string)) {
            Some(s) => parse_list("g_grid", &s)?,
            None => DEFAULT_G_GRID.to_vec(),
        };
        let tol = args.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(cfg_err("tol", "must be > 0"));
        }
        let refine = args.refine_tol.or(file.refine_tol).unwrap_or(DEFAULT_REFINE_TOL);
        if !(refine >= 0.0) {
            return Err(cfg_err("refine_tol", "must be >= 0"));
        }
        let oracle_dim = args.oracle_dim.or(file.oracle_dim);
        if let Some(d) = oracle_dim {
            if d < 2 {
                return Err(cfg_err("oracle_dim", "must be >= 2"));
            }
        }
        Ok(Self {
            model,
            mode,
            provider,
            params,
            obs,
            qubit_init,
            rho_q,
            t_grid,
            betas,
            g_grid,
            tol,
            refine_tol: (refine > 0.0).then_some(refine),
            oracle_dim,
        })
    }
}
