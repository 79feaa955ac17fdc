// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! The photon-trace `Tr[V ρ_P]` and the providers that compute it.

use num_complex::Complex64;

use crate::error::Result;
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelTag {
    QuadraticPerturbative,
    LinearExact,
    Oracle,
}

impl ModelTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelTag::QuadraticPerturbative => "quadratic-perturbative",
            ModelTag::LinearExact => "linear-exact",
            ModelTag::Oracle => "oracle",
        }
    }
}

/// `Tr[V(t₁,t₀) ρ_P]` plus truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VTrace {
    pub value: Complex64,
    /// Number of thermal terms summed (Fock dimension for the oracle).
    pub terms_used: usize,
    /// Estimated magnitude of the discarded thermal tail.
    pub tail_bound: f64,
    pub model_tag: ModelTag,
}

impl VTrace {
    pub fn unit(model_tag: ModelTag) -> Self {
        Self { value: Complex64::new(1.0, 0.0), terms_used: 1, tail_bound: 0.0, model_tag }
    }

    /// Allowed excess of `|value|` over 1 for the second-order trace:
    /// `10·|κ|³·(1 + n̄)³`.
    pub fn perturbative_slack(params: &ModelParams) -> f64 {
        let kappa = params.coupling().norm_sqr();
        10.0 * kappa.powi(3) * (1.0 + params.mean_photons()).powi(3)
    }

    /// `|value| ≤ 1 + slack`, with zero slack for the exact models.
    pub fn is_bounded(&self, params: &ModelParams) -> bool {
        let slack = match self.model_tag {
            ModelTag::QuadraticPerturbative => Self::perturbative_slack(params),
            _ => 1e-12,
        };
        self.value.norm() <= 1.0 + slack
    }
}

/// Source of `Tr[V ρ_P]` for the LG engine.
///
/// Implementations must return a unit trace at `T = 0` and be callable
/// concurrently from several threads.
pub trait VTraceProvider: Send + Sync {
    fn v_trace(&self, params: &ModelParams, t: f64, tol: f64) -> Result<VTrace>;

    fn tag(&self) -> ModelTag;
}

/// Second-order perturbative trace of the quadratic-coupling model.
#[derive(Debug, Clone, Copy, Default)]
pub struct Perturbative;

impl VTraceProvider for Perturbative {
    fn v_trace(&self, params: &ModelParams, t: f64, tol: f64) -> Result<VTrace> {
        crate::perturbative::v_trace_quadratic(params, t, tol)
    }

    fn tag(&self) -> ModelTag {
        ModelTag::QuadraticPerturbative
    }
}

/// Exact trace of the linear-coupling model.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearExact;

impl VTraceProvider for LinearExact {
    fn v_trace(&self, params: &ModelParams, t: f64, tol: f64) -> Result<VTrace> {
        crate::linear::v_trace_linear(params, t, tol)
    }

    fn tag(&self) -> ModelTag {
        ModelTag::LinearExact
    }
}

/// Returns the same trace for every `T > 0` and `1` at `T = 0`.
///
/// A fixed unit trace describes the isolated qubit (`g = 0`).
#[derive(Debug, Clone, Copy)]
pub struct FixedTrace(pub Complex64);

impl VTraceProvider for FixedTrace {
    fn v_trace(&self, _params: &ModelParams, t: f64, _tol: f64) -> Result<VTrace> {
        let mut v = VTrace::unit(ModelTag::Oracle);
        if t != 0.0 {
            v.value = self.0;
        }
        Ok(v)
    }

    fn tag(&self) -> ModelTag {
        ModelTag::Oracle
    }
}
