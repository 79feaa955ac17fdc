// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Bose-Einstein weighted sums `(1 - e^{-x}) Σ_m e^{-mx} F(m)` with a
//! geometric-times-quartic truncation rule.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vtrace::{ModelTag, VTrace};

/// Hard cap on the number of thermal terms.
pub(crate) const MAX_TERMS: usize = 20_000;

/// Consecutive below-tolerance terms required before stopping.
const QUIET_RUN: usize = 8;

/// Sums `(1 - e^{-x}) Σ_m e^{-mx} term(m)` for `x = βω`.
///
/// `growth` bounds `|term(m)| ≤ growth·(m+4)⁴`. The sum stops at the first
/// `M` where the bound on the weighted term has stayed below
/// `tol·|partial sum|` for eight consecutive `m` and the geometric tail
/// estimate is at most `tol`.
pub(crate) fn thermal_sum<F>(x: f64, tol: f64, growth: f64, tag: ModelTag, mut term: F) -> Result<VTrace>
where
    F: FnMut(usize) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::arg("tol", format!("must be > 0, got {tol}")));
    }
    if x.is_infinite() {
        return Ok(VTrace { value: term(0), terms_used: 1, tail_bound: 0.0, model_tag: tag });
    }
    let ratio = (-x).exp();
    let mut weight = -(-x).exp_m1();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut tail = f64::INFINITY;
    for m in 0..MAX_TERMS {
        sum += term(m) * weight;
        let mf = m as f64;
        let bound = weight * growth * (mf + 4.0).powi(4);
        if bound == 0.0 || bound < tol * sum.norm() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let next_bound = bound * ratio * ((mf + 5.0) / (mf + 4.0)).powi(4);
        let contraction = ratio * ((mf + 6.0) / (mf + 5.0)).powi(4);
        tail = if contraction < 1.0 { next_bound / (1.0 - contraction) } else { f64::INFINITY };
        if quiet >= QUIET_RUN && tail <= tol {
            return Ok(VTrace { value: sum, terms_used: m + 1, tail_bound: tail, model_tag: tag });
        }
        weight *= ratio;
    }
    Err(Error::Convergence {
        max_terms: MAX_TERMS,
        partial: VTrace { value: sum, terms_used: MAX_TERMS, tail_bound: tail, model_tag: tag },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_terms_normalize() {
        for &x in &[0.08, 0.15, 1.0, 5.0] {
            let v = thermal_sum(x, 1e-13, 1.0, ModelTag::Oracle, |_| Complex64::new(1.0, 0.0)).unwrap();
            assert!((v.value - 1.0).norm() < 1e-12, "x={x}: {}", v.value);
            assert!(v.tail_bound <= 1e-13);
        }
    }

    #[test]
    fn zero_temperature_keeps_first_term() {
        let v = thermal_sum(f64::INFINITY, 1e-12, 1.0, ModelTag::Oracle, |m| Complex64::new(m as f64 + 2.0, 0.0)).unwrap();
        assert_eq!(v.value, Complex64::new(2.0, 0.0));
        assert_eq!(v.terms_used, 1);
        assert_eq!(v.tail_bound, 0.0);
    }

    #[test]
    fn geometric_moment_matches_closed_form() {
        // (1-r) Σ m r^m = r/(1-r)
        let x: f64 = 0.3;
        let r = (-x).exp();
        let v = thermal_sum(x, 1e-14, 1.0, ModelTag::Oracle, |m| Complex64::new(m as f64, 0.0)).unwrap();
        assert!((v.value.re - r / (1.0 - r)).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_tol() {
        let one = |_| Complex64::new(1.0, 0.0);
        assert!(thermal_sum(1.0, 0.0, 1.0, ModelTag::Oracle, one).is_err());
        assert!(thermal_sum(1.0, -1.0, 1.0, ModelTag::Oracle, one).is_err());
    }

    #[test]
    fn reports_partial_result_when_capped() {
        let err = thermal_sum(1e-6, 1e-12, 1.0, ModelTag::Oracle, |_| Complex64::new(1.0, 0.0)).unwrap_err();
        match err {
            Error::Convergence { max_terms, partial } => {
                assert_eq!(max_terms, MAX_TERMS);
                assert_eq!(partial.terms_used, MAX_TERMS);
                assert!(partial.value.re > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
