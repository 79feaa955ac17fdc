// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-time Leggett-Garg (LG) inequalities for a qubit whose σ_z couples to a
//! single thermal cavity mode.
//!
//! Two coupling models are supported:
//!
//! * quadratic, `σ_z (g a† + g* a)²`, evaluated with a second-order
//!   perturbative photon trace ([`perturbative`]);
//! * linear, `σ_z (g a† + g* a)`, solved exactly ([`linear`]).
//!
//! Every qubit correlator depends on the photon mode only through the
//! thermal trace `Tr[V ρ_P]` with `V = e^{iH₊T} e^{-iH₋T}`. The
//! [`vtrace::VTraceProvider`] trait abstracts that quantity so the LG engine
//! ([`engine`]) can be driven by the perturbative formula, the exact linear
//! solution, or the dense truncated-Fock-space oracle ([`oracle`]).
//!
//! Units: ħ = k_B = 1. Qubit basis ordering is `{|e⟩, |g⟩}` (index 0 is the
//! excited state).

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod engine;
pub mod error;
pub mod linear;
pub mod model;
pub mod oracle;
pub mod perturbative;
pub mod vtrace;

mod smallangle;
mod thermal;

pub use error::{Error, Result};
pub use model::{DerivedCouplings, ModelParams, Observable, QubitMoments, QubitState};
pub use vtrace::{ModelTag, VTrace, VTraceProvider};
