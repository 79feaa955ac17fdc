// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Exactly solvable linear coupling `H'± = ω a†a ± (g a† + g* a)`.
//!
//! Here `V' = e^{iH'₊T} e^{-iH'₋T}` is the displacement `D(2g̃)`, so
//! `⟨m|V'|m⟩ = e^{2|g̃|²} ₁F₁(1+m; 1; -4|g̃|²) = e^{-2|g̃|²} L_m(4|g̃|²)`
//! (Kummer transformation). The Laguerre form is evaluated by the three-term
//! recurrence, which stays stable where the alternating ₁F₁ series does not.

use num_complex::Complex64;

use crate::error::Result;
use crate::model::ModelParams;
use crate::perturbative::check_time;
use crate::smallangle::phase_ramp;
use crate::thermal::thermal_sum;
use crate::vtrace::{ModelTag, VTrace};

/// `g̃ = (T/T̃)(e^{iT̃} - 1)g` with `T̃ = Tω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPhase {
    pub g_tilde: Complex64,
    pub t_tilde: f64,
    pub t: f64,
}

pub fn linear_phase(params: &ModelParams, t: f64) -> Result<LinearPhase> {
    check_time(t)?;
    let t_tilde = t * params.omega_cavity();
    Ok(LinearPhase { g_tilde: params.coupling() * phase_ramp(t_tilde) * t, t_tilde, t })
}

/// Laguerre polynomial `L_m(x)` by `(k+1)L_{k+1} = (2k+1-x)L_k - kL_{k-1}`.
pub fn laguerre(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Yields `e^{-x/2} L_m(x)` for `m = 0, 1, 2, …`.
///
/// The recurrence runs on rescaled values with the scale kept as a logarithm,
/// so neither `e^{-x/2}` nor `L_m(x)` has to be representable on its own.
#[derive(Debug, Clone)]
pub(crate) struct ScaledLaguerre {
    x: f64,
    k: usize,
    prev: f64,
    cur: f64,
    log_scale: f64,
}

const RESCALE_AT: f64 = 1e100;

impl ScaledLaguerre {
    pub(crate) fn new(x: f64) -> Self {
        Self { x, k: 0, prev: 0.0, cur: 1.0, log_scale: -0.5 * x }
    }
}

impl Iterator for ScaledLaguerre {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let value = if self.cur == 0.0 {
            0.0
        } else {
            self.cur.signum() * (self.cur.abs().ln() + self.log_scale).exp()
        };
        let kf = self.k as f64;
        let next = ((2.0 * kf + 1.0 - self.x) * self.cur - kf * self.prev) / (kf + 1.0);
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        if self.cur.abs() > RESCALE_AT {
            self.prev /= RESCALE_AT;
            self.cur /= RESCALE_AT;
            self.log_scale += RESCALE_AT.ln();
        }
        Some(value)
    }
}

/// `⟨m|V'|m⟩ = e^{-2|g̃|²} L_m(4|g̃|²)`, real.
pub fn matrix_element_linear(m: usize, params: &ModelParams, t: f64) -> Result<f64> {
    let y = linear_phase(params, t)?.g_tilde.norm_sqr();
    Ok(ScaledLaguerre::new(4.0 * y).nth(m).unwrap_or(0.0))
}

/// `(1 - e^{-βω}) Σ_m e^{-mβω} ⟨m|V'|m⟩`.
pub fn v_trace_linear(params: &ModelParams, t: f64, tol: f64) -> Result<VTrace> {
    let y = linear_phase(params, t)?.g_tilde.norm_sqr();
    let x = params.inv_temperature() * params.omega_cavity();
    let mut elements = ScaledLaguerre::new(4.0 * y);
    // thermal_sum visits m = 0, 1, 2, … in order.
    thermal_sum(x, tol, 1.0, ModelTag::LinearExact, |_| {
        Complex64::new(elements.next().unwrap_or(0.0), 0.0)
    })
}

/// Zero-temperature `LG_{1,-1}` of the linear model for the ground-state
/// qubit and the `a_x = a_z = 1/√2` observable, in the correlator convention
/// where the two-time correlator keeps only the σ₊ term:
///
/// `¼{2 - √2 + √2 cos(TΩ) exp[4|g|²(cos(Tω) - 1)/ω²]}`.
pub fn lg_closed_form_zero_t(params: &ModelParams, t: f64) -> f64 {
    let omega = params.omega_cavity();
    let half = 0.5 * t * omega;
    // cos(Tω) - 1 = -2 sin²(Tω/2)
    let decay = (-8.0 * params.coupling().norm_sqr() * half.sin().powi(2) / (omega * omega)).exp();
    let sqrt2 = std::f64::consts::SQRT_2;
    0.25 * (2.0 - sqrt2 + sqrt2 * (t * params.omega_qubit()).cos() * decay)
}
