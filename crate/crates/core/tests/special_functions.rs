// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use lgcavity::linear::{laguerre, matrix_element_linear};
use lgcavity::ModelParams;
use num_traits::{ToPrimitive, Zero};

use common::{hyp1f1_kummer_series, hyp1f1_neg_m, rational};

const REL: f64 = 1e-10;

fn check(computed: f64, exact: f64, exact_is_zero: bool, what: &str) {
    if exact_is_zero {
        assert!(computed.abs() < 1e-13, "{what}: expected 0, got {computed}");
    } else {
        let rel = ((computed - exact) / exact).abs();
        assert!(rel <= REL, "{what}: computed {computed}, exact {exact}, rel {rel:e}");
    }
}

#[test]
fn laguerre_matches_exact_terminating_series() {
    for m in 0..=50u32 {
        for q in 0..=80i64 {
            let x = rational(q, 4);
            let exact = hyp1f1_neg_m(m, &x);
            let xf = q as f64 / 4.0;
            check(laguerre(m as usize, xf), exact.to_f64().unwrap(), exact.is_zero(), &format!("L_{m}({xf})"));
        }
    }
}

#[test]
fn kummer_transformation_holds() {
    for m in [0u32, 1, 2, 3, 5, 8, 13, 21, 34, 50] {
        for q in (0..=40i64).step_by(3) {
            let x = rational(q, 2);
            let xf = q as f64 / 2.0;
            let lag_exact = hyp1f1_neg_m(m, &x);
            let (series, _tail) = hyp1f1_kummer_series(m, &x, REL);
            let computed = (-xf).exp() * laguerre(m as usize, xf);
            check(computed, series, lag_exact.is_zero(), &format!("1F1({}; 1; -{xf})", m + 1));
        }
    }
}

#[test]
fn linear_matrix_element_is_kummer_form() {
    // ⟨m|V'|m⟩ = e^{2y} ₁F₁(1+m; 1; -4y), y = |g̃|²; pick T so 4y is moderate.
    let params = ModelParams::real(1.0, 0.1, 0.3, 1.0).unwrap();
    for &t in &[1.0, 2.5, 7.0] {
        let y = lgcavity::linear::linear_phase(&params, t).unwrap().g_tilde.norm_sqr();
        for m in [0u32, 1, 4, 9, 20] {
            // exact series at the nearest 1/1024 grid point, then compare at that argument
            let q = (4.0 * y * 1024.0).round() as i64;
            let x = rational(q, 1024);
            let xf = q as f64 / 1024.0;
            let (series, _) = hyp1f1_kummer_series(m, &x, REL);
            let kummer_form = (0.5 * xf).exp() * series;
            let ours = (-0.5 * xf).exp() * laguerre(m as usize, xf);
            check(ours, kummer_form, hyp1f1_neg_m(m, &x).is_zero(), "kummer form");
            // and the library routine agrees with its own Laguerre form
            let lib = matrix_element_linear(m as usize, &params, t).unwrap();
            assert!((lib - (-2.0 * y).exp() * laguerre(m as usize, 4.0 * y)).abs() < 1e-14);
        }
    }
}
