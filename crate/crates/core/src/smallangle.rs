// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Removable singularities shared by the perturbative and linear models.

use num_complex::Complex64;

/// Below this `|x|` the three-term Taylor branches are used.
pub(crate) const SMALL_ANGLE: f64 = 1e-4;

/// `(e^{ix} - 1)/x`, equal to `i` at `x = 0`.
pub(crate) fn phase_ramp(x: f64) -> Complex64 {
    if x.abs() < SMALL_ANGLE {
        // i(1 + ix/2 - x²/6)
        Complex64::new(-0.5 * x, 1.0 - x * x / 6.0)
    } else {
        let half = 0.5 * x;
        let s = half.sin();
        Complex64::new(-2.0 * s * s, x.sin()) / x
    }
}

/// `(x - sin x)/x`, equal to `0` at `x = 0`.
pub(crate) fn sine_defect(x: f64) -> f64 {
    if x.abs() < SMALL_ANGLE {
        let x2 = x * x;
        x2 / 6.0 - x2 * x2 / 120.0
    } else {
        (x - x.sin()) / x
    }
}
