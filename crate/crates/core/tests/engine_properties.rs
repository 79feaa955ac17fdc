// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use lgcavity::engine::{
    corr_two_time, expectation_a0, joint_probability, lg_quad, lg_quad_with_trace, CorrelatorMode,
};
use lgcavity::model::{identity, projector, qubit_moments};
use lgcavity::vtrace::{FixedTrace, ModelTag};
use lgcavity::{ModelParams, Observable, QubitState, VTrace};
use num_complex::Complex64;
use proptest::prelude::*;

fn observable() -> impl Strategy<Value = Observable> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(theta, phi)| {
        Observable::from_components(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()).unwrap()
    })
}

fn qubit_state() -> impl Strategy<Value = QubitState> {
    (0.0..=1.0f64, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(r, theta, phi)| {
        QubitState::from_bloch(r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()).unwrap()
    })
}

fn trace_value() -> impl Strategy<Value = Complex64> {
    (0.0..=1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

fn mode() -> impl Strategy<Value = CorrelatorMode> {
    prop_oneof![Just(CorrelatorMode::Paper), Just(CorrelatorMode::Derived)]
}

fn rho_array(rho: &QubitState) -> [[Complex64; 2]; 2] {
    let m = rho.matrix();
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

fn unit(v: Complex64) -> VTrace {
    VTrace { value: v, terms_used: 1, tail_bound: 0.0, model_tag: ModelTag::Oracle }
}

proptest! {
    #[test]
    fn moments_match_index_sums(obs in observable(), rho in qubit_state()) {
        let m = qubit_moments(&obs, &rho);
        let o = common::moments_oracle(obs.a(), obs.a_z(), rho_array(&rho));
        for (x, y) in [(m.m_plus, o.m_plus), (m.m_z, o.m_z), (m.c_plus, o.c_plus), (m.c_minus, o.c_minus),
                       (m.c_z, o.c_z), (m.d_plus, o.d_plus), (m.d_z, o.d_z)] {
            prop_assert!((x - y).norm() < 1e-14);
        }
        prop_assert!(o.d_z.im.abs() < 1e-14);
    }

    #[test]
    fn projectors_are_complete_and_idempotent(obs in observable()) {
        let p = projector(&obs, 1).unwrap();
        let q = projector(&obs, -1).unwrap();
        let sum = p + q - identity();
        prop_assert!(sum.iter().all(|z| z.norm() < 1e-15));
        prop_assert!((p * p - p).iter().all(|z| z.norm() < 1e-15));
        prop_assert!((p * q).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn lg_values_sum_to_four(mode in mode(), obs in observable(), rho in qubit_state(),
                             v in trace_value(), omega in 0.1..3.0f64, t in 0.0..20.0f64) {
        let params = ModelParams::real(omega, 0.1, 0.075, 1.5).unwrap();
        let q = lg_quad_with_trace(mode, &unit(v), &params, &obs, &qubit_moments(&obs, &rho), t);
        prop_assert!((q.sum() - 4.0).abs() < 1e-10);
        for x in [q.lg_pp, q.lg_pm, q.lg_mp, q.lg_mm] {
            prop_assert!((-4.0..=4.0).contains(&x));
        }
    }

    #[test]
    fn probabilities_normalise_and_rebuild_lg(mode in mode(), obs in observable(), rho in qubit_state(),
                                              v in trace_value(), omega in 0.1..3.0f64, t in 0.0..20.0f64) {
        let params = ModelParams::real(omega, 0.1, 0.075, 1.5).unwrap();
        let moments = qubit_moments(&obs, &rho);
        let q = lg_quad_with_trace(mode, &unit(v), &params, &obs, &moments, t);
        let mut total = 0.0;
        let mut rebuilt = [[0.0; 2]; 2];
        for a1 in [1, -1] {
            for a0 in [1, -1] {
                let p = joint_probability(a1, a0, mode, &obs, &moments, v, omega, t).unwrap();
                total += p;
                for (i, s0) in [1.0, -1.0].into_iter().enumerate() {
                    for (j, s1) in [1.0, -1.0].into_iter().enumerate() {
                        rebuilt[i][j] += (1.0 + s0 * a0 as f64) * (1.0 + s1 * a1 as f64) * p;
                    }
                }
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-10);
        prop_assert!((rebuilt[0][0] - q.lg_pp).abs() < 1e-10);
        prop_assert!((rebuilt[0][1] - q.lg_pm).abs() < 1e-10);
        prop_assert!((rebuilt[1][0] - q.lg_mp).abs() < 1e-10);
        prop_assert!((rebuilt[1][1] - q.lg_mm).abs() < 1e-10);
    }

    #[test]
    fn paper_correlator_is_static_for_ground_state(obs in observable(), v in trace_value(),
                                                   omega in 0.1..3.0f64, t in 0.0..50.0f64) {
        let moments = qubit_moments(&obs, &QubitState::ground());
        let c = corr_two_time(CorrelatorMode::Paper, &obs, &moments, v, omega, t);
        prop_assert!((c - obs.a_z() * obs.a_z()).abs() < 1e-12);
    }

    #[test]
    fn derived_lg_vanishes_at_zero_time(obs in observable(), rho in qubit_state()) {
        let params = ModelParams::default();
        let q = lg_quad(CorrelatorMode::Derived, &FixedTrace(Complex64::new(0.3, 0.1)), &params, &obs, &rho, 0.0, 1e-10).unwrap();
        prop_assert!(q.lg_pm.abs() < 1e-12);
        prop_assert!(q.lg_mp.abs() < 1e-12);
        prop_assert!((q.exp_a0 - expectation_a0(&obs, &rho)).abs() < 1e-15);
    }

    #[test]
    fn derived_ground_state_lg_is_nonnegative(obs in observable(), v in trace_value(),
                                              omega in 0.1..3.0f64, t in 0.0..20.0f64) {
        let params = ModelParams::real(omega, 0.1, 0.075, 1.5).unwrap();
        let moments = qubit_moments(&obs, &QubitState::ground());
        let q = lg_quad_with_trace(CorrelatorMode::Derived, &unit(v), &params, &obs, &moments, t);
        let x = (Complex64::from_polar(1.0, omega * t) * v).re;
        let expect = obs.a().norm_sqr() * (1.0 - obs.a_z()) * (1.0 - x);
        prop_assert!((q.lg_pm - expect).abs() < 1e-12);
        prop_assert!(q.lg_pm >= -1e-12);
    }
}
