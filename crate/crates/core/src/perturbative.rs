// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Second-order perturbative photon trace for the quadratic coupling
//! `H± = ω a†a ± (g a† + g* a)²`.
//!
//! The diagonal matrix elements `⟨m|V|m⟩` are approximated by `𝓕(m)`, built
//! from the squeezing amplitudes `κ̃±` and the unit-modulus phases `F(n)`;
//! the thermal average then gives `Tr[V ρ_P]`. Terms of order `|κ|³` and
//! higher are not included.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DerivedCouplings, ModelParams};
use crate::smallangle::{phase_ramp, sine_defect};
use crate::thermal::thermal_sum;
use crate::vtrace::{ModelTag, VTrace};

/// Dimensionless times `T̃± = 2Tω±` and squeezing amplitudes
/// `κ̃± = (T/T̃±)(e^{iT̃±} - 1)κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFactors {
    pub t_tilde_plus: f64,
    pub t_tilde_minus: f64,
    pub kappa_tilde_plus: Complex64,
    pub kappa_tilde_minus: Complex64,
    pub t: f64,
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::arg("T", format!("time separation must be finite and >= 0, got {t}")));
    }
    Ok(())
}

pub fn phase_factors(params: &ModelParams, t: f64) -> Result<PhaseFactors> {
    check_time(t)?;
    let d = params.derived();
    Ok(phase_factors_unchecked(&d, t))
}

fn phase_factors_unchecked(d: &DerivedCouplings, t: f64) -> PhaseFactors {
    let t_tilde_plus = 2.0 * t * d.omega_plus;
    let t_tilde_minus = 2.0 * t * d.omega_minus;
    PhaseFactors {
        t_tilde_plus,
        t_tilde_minus,
        kappa_tilde_plus: d.kappa * phase_ramp(t_tilde_plus) * t,
        kappa_tilde_minus: d.kappa * phase_ramp(t_tilde_minus) * t,
        t,
    }
}

/// Precomputed `(params, T)` data for repeated `F(n)` / `𝓕(m)` evaluation.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticKernel {
    phases: PhaseFactors,
    /// `T²|κ|²·[(T̃₊ - sin T̃₊)/T̃₊ - (T̃₋ - sin T̃₋)/T̃₋]`
    second_order: f64,
    /// `T(ω₊ - ω₋)`
    linear_per_level: f64,
    /// `2T|g|²`
    constant: f64,
    kp_sq: f64,
    km_sq: f64,
    /// `κ̃₊* κ̃₋`
    cross_up: Complex64,
    /// `κ̃₋* κ̃₊`
    cross_down: Complex64,
}

impl QuadraticKernel {
    pub fn new(params: &ModelParams, t: f64) -> Result<Self> {
        check_time(t)?;
        let d = params.derived();
        let phases = phase_factors_unchecked(&d, t);
        let kappa_sq = d.kappa.norm_sqr();
        let second_order =
            t * t * kappa_sq * (sine_defect(phases.t_tilde_plus) - sine_defect(phases.t_tilde_minus));
        let kp = phases.kappa_tilde_plus;
        let km = phases.kappa_tilde_minus;
        Ok(Self {
            phases,
            second_order,
            linear_per_level: t * (d.omega_plus - d.omega_minus),
            constant: 2.0 * t * d.g_abs_sq,
            kp_sq: kp.norm_sqr(),
            km_sq: km.norm_sqr(),
            cross_up: kp.conj() * km,
            cross_down: km.conj() * kp,
        })
    }

    pub fn phases(&self) -> &PhaseFactors {
        &self.phases
    }

    /// `F(n)`, a pure phase.
    pub fn phase_f(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        let f = -2.0 * (1.0 + 2.0 * nf);
        let angle = self.second_order * f + self.linear_per_level * nf + self.constant;
        Complex64::from_polar(1.0, angle)
    }

    /// `𝓕(m) ≈ ⟨m|V|m⟩` to second order in `κ`.
    pub fn cal_f(&self, m: usize) -> Complex64 {
        let mf = m as f64;
        let down2 = if m >= 2 { mf * (mf - 1.0) } else { 0.0 };
        let up2 = (mf + 1.0) * (mf + 2.0);
        let bracket = down2 + up2;
        let mut value = self.phase_f(m)
            * (1.0 - 0.5 * self.kp_sq * bracket)
            * (1.0 - 0.5 * self.km_sq * bracket);
        value -= self.phase_f(m + 2) * self.cross_up * up2;
        if m >= 2 {
            value -= self.phase_f(m - 2) * self.cross_down * down2;
        }
        let up4 = up2 * (mf + 3.0) * (mf + 4.0);
        value += self.phase_f(m + 4) * self.cross_up * self.cross_up * (0.25 * up4);
        if m >= 4 {
            let down4 = down2 * (mf - 2.0) * (mf - 3.0);
            value += self.phase_f(m - 4) * self.cross_down * self.cross_down * (0.25 * down4);
        }
        value
    }

    /// Bound on `|𝓕(m)|/(m+4)⁴` used by the thermal truncation rule.
    fn growth(&self) -> f64 {
        1.0 + self.kp_sq + self.km_sq
    }
}

pub fn phase_f(n: usize, params: &ModelParams, t: f64) -> Result<Complex64> {
    Ok(QuadraticKernel::new(params, t)?.phase_f(n))
}

pub fn cal_f(m: usize, params: &ModelParams, t: f64) -> Result<Complex64> {
    Ok(QuadraticKernel::new(params, t)?.cal_f(m))
}

/// `(1 - e^{-βω}) Σ_m e^{-mβω} 𝓕(m)`.
pub fn v_trace_quadratic(params: &ModelParams, t: f64, tol: f64) -> Result<VTrace> {
    let kernel = QuadraticKernel::new(params, t)?;
    let x = params.inv_temperature() * params.omega_cavity();
    thermal_sum(x, tol, kernel.growth(), ModelTag::QuadraticPerturbative, |m| kernel.cal_f(m))
}
