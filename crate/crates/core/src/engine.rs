// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Qubit expectation values, two-time correlators, joint probabilities and
//! the four two-time LG quantities.
//!
//! All photon dependence enters through one complex number, the trace
//! `v = Tr[V ρ_P]`, supplied by a [`VTraceProvider`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{outcome_sign, qubit_moments, ModelParams, Observable, QubitMoments, QubitState};
use crate::vtrace::{VTrace, VTraceProvider};

/// Convention for the two-time correlator `Re⟨Â(T)Â(0)⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CorrelatorMode {
    /// `Re[2Re{e^{iΩT} a c₊ v} + a_z c_z]`: only the σ₊ cross term is kept.
    #[default]
    Paper,
    /// `Re[e^{iΩT} a c₊ v + e^{-iΩT} a* c₋ v* + a_z c_z]`.
    Derived,
}

impl CorrelatorMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CorrelatorMode::Paper => "paper",
            CorrelatorMode::Derived => "derived",
        }
    }
}

impl fmt::Display for CorrelatorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorrelatorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(CorrelatorMode::Paper),
            "derived" => Ok(CorrelatorMode::Derived),
            other => Err(Error::arg("mode", format!("unknown correlator mode `{other}` (expected paper|derived)"))),
        }
    }
}

/// The four `LG_{s₀,s₁}` values at one time separation and their ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgQuad {
    pub t: f64,
    /// `LG_{1,1}`
    pub lg_pp: f64,
    /// `LG_{1,-1}`
    pub lg_pm: f64,
    /// `LG_{-1,1}`
    pub lg_mp: f64,
    /// `LG_{-1,-1}`
    pub lg_mm: f64,
    pub exp_a0: f64,
    pub exp_a1: f64,
    pub corr_a0a1: f64,
    pub v: VTrace,
}

impl LgQuad {
    /// Expands `1 + s₀⟨A₀⟩ + s₁⟨A₁⟩ + s₀s₁⟨A₀A₁⟩` over the four sign pairs.
    pub fn from_ingredients(t: f64, exp_a0: f64, exp_a1: f64, corr_a0a1: f64, v: VTrace) -> Self {
        let lg = |s0: f64, s1: f64| 1.0 + s0 * exp_a0 + s1 * exp_a1 + s0 * s1 * corr_a0a1;
        Self {
            t,
            lg_pp: lg(1.0, 1.0),
            lg_pm: lg(1.0, -1.0),
            lg_mp: lg(-1.0, 1.0),
            lg_mm: lg(-1.0, -1.0),
            exp_a0,
            exp_a1,
            corr_a0a1,
            v,
        }
    }

    /// `LG_{s₀,s₁}` for `s₀, s₁ ∈ {±1}`.
    pub fn get(&self, s0: i32, s1: i32) -> Result<f64> {
        let s0 = outcome_sign(s0, "s0")?;
        let s1 = outcome_sign(s1, "s1")?;
        Ok(match (s0 > 0.0, s1 > 0.0) {
            (true, true) => self.lg_pp,
            (true, false) => self.lg_pm,
            (false, true) => self.lg_mp,
            (false, false) => self.lg_mm,
        })
    }

    pub fn sum(&self) -> f64 {
        self.lg_pp + self.lg_pm + self.lg_mp + self.lg_mm
    }
}

/// `e^{iΩT}`
fn qubit_phase(omega: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, omega * t)
}

/// `Tr[Âρ]`
pub fn expectation_a0(obs: &Observable, rho_q: &QubitState) -> f64 {
    expectation_a0_from_moments(obs, &qubit_moments(obs, rho_q))
}

/// `Tr[Âρ] = 2Re{a Tr[σ₊ρ]} + a_z Tr[σ_zρ]`.
pub fn expectation_a0_from_moments(obs: &Observable, moments: &QubitMoments) -> f64 {
    2.0 * (obs.a() * moments.m_plus).re + obs.a_z() * moments.m_z.re
}

/// `⟨Â(T)⟩ = 2Re{e^{iΩT} a m₊ v} + a_z m_z`.
pub fn expectation_a_t(obs: &Observable, moments: &QubitMoments, v: Complex64, omega: f64, t: f64) -> f64 {
    2.0 * (qubit_phase(omega, t) * obs.a() * moments.m_plus * v).re + obs.a_z() * moments.m_z.re
}

/// `⟨Â(0)Â(T)Â(0)⟩ = 2Re{e^{iΩT} a d₊ v} + a_z d_z`.
pub fn sandwich(obs: &Observable, moments: &QubitMoments, v: Complex64, omega: f64, t: f64) -> f64 {
    2.0 * (qubit_phase(omega, t) * obs.a() * moments.d_plus * v).re + obs.a_z() * moments.d_z.re
}

/// `Re⟨Â(T)Â(0)⟩` in the requested convention.
pub fn corr_two_time(
    mode: CorrelatorMode,
    obs: &Observable,
    moments: &QubitMoments,
    v: Complex64,
    omega: f64,
    t: f64,
) -> f64 {
    let phase = qubit_phase(omega, t);
    let z = obs.a_z() * moments.c_z;
    match mode {
        CorrelatorMode::Paper => (2.0 * (phase * obs.a() * moments.c_plus * v).re + z).re,
        CorrelatorMode::Derived => {
            let up = phase * obs.a() * moments.c_plus * v;
            let down = phase.conj() * obs.a().conj() * moments.c_minus * v.conj();
            (up + down + z).re
        }
    }
}

/// `⟨A₁⟩ = ½⟨Â(T)⟩ + ½⟨Â(0)Â(T)Â(0)⟩`.
pub fn expectation_a1(obs: &Observable, moments: &QubitMoments, v: Complex64, omega: f64, t: f64) -> f64 {
    0.5 * (expectation_a_t(obs, moments, v, omega, t) + sandwich(obs, moments, v, omega, t))
}

/// `P(A₁ = μ at T; A₀ = ν at 0)`
///
/// `¼ + ¼ν⟨Â(0)⟩ + ⅛μ⟨Â(T)⟩ + ¼μν·corr + ⅛μ⟨Â(0)Â(T)Â(0)⟩`. The constant
/// is ¼ so that the four probabilities sum to one.
#[allow(clippy::too_many_arguments)]
pub fn joint_probability(
    mu: i32,
    nu: i32,
    mode: CorrelatorMode,
    obs: &Observable,
    moments: &QubitMoments,
    v: Complex64,
    omega: f64,
    t: f64,
) -> Result<f64> {
    let mu = outcome_sign(mu, "mu")?;
    let nu = outcome_sign(nu, "nu")?;
    let a0 = expectation_a0_from_moments(obs, moments);
    let at = expectation_a_t(obs, moments, v, omega, t);
    let corr = corr_two_time(mode, obs, moments, v, omega, t);
    let sw = sandwich(obs, moments, v, omega, t);
    Ok(0.25 + 0.25 * nu * a0 + 0.125 * mu * at + 0.25 * mu * nu * corr + 0.125 * mu * sw)
}

/// All four LG values from one provider call.
pub fn lg_quad(
    mode: CorrelatorMode,
    provider: &dyn VTraceProvider,
    params: &ModelParams,
    obs: &Observable,
    rho_q: &QubitState,
    t: f64,
    tol: f64,
) -> Result<LgQuad> {
    let v = provider.v_trace(params, t, tol)?;
    let moments = qubit_moments(obs, rho_q);
    Ok(lg_quad_with_trace(mode, &v, params, obs, &moments, t))
}

/// [`lg_quad`] for an already computed trace.
pub fn lg_quad_with_trace(
    mode: CorrelatorMode,
    v: &VTrace,
    params: &ModelParams,
    obs: &Observable,
    moments: &QubitMoments,
    t: f64,
) -> LgQuad {
    let omega = params.omega_qubit();
    let a0 = expectation_a0_from_moments(obs, moments);
    let a1 = expectation_a1(obs, moments, v.value, omega, t);
    let corr = corr_two_time(mode, obs, moments, v.value, omega, t);
    LgQuad::from_ingredients(t, a0, a1, corr, *v)
}
