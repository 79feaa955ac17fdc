// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `₁F₁(-m; 1; x) = Σ_k C(m,k) (-x)^k / k!`, exact.
pub fn hyp1f1_neg_m(m: u32, x: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=m {
        sum += &term;
        // term_{k+1} = term_k · (k - m) x / (k+1)²
        let factor = rational(i64::from(k) - i64::from(m), i64::from((k + 1) * (k + 1)));
        term = term * factor * x;
    }
    sum
}

/// `₁F₁(1+m; 1; -x)` by its power series in exact arithmetic, truncated
/// once the terms decrease geometrically below `rel·|partial sum|`.
///
/// Returns the value and a bound on the discarded tail.
pub fn hyp1f1_kummer_series(m: u32, x: &BigRational, rel: f64) -> (f64, f64) {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let xf = x.to_f64().unwrap();
    let mut k: u64 = 0;
    loop {
        sum += &term;
        let factor = BigRational::new(BigInt::from(u64::from(m) + 1 + k), BigInt::from((k + 1) * (k + 1)));
        term = -(term * factor * x);
        k += 1;
        // |t_{j+1}/t_j| = (1+m+j)x/(j+1)² decreases in j once j ≥ m
        let ratio = (f64::from(m) + 1.0 + k as f64) * xf / ((k + 1) * (k + 1)) as f64;
        if k as u32 > m && ratio < 0.5 {
            let tail = 2.0 * term.abs().to_f64().unwrap();
            let s = sum.to_f64().unwrap();
            if tail <= rel * s.abs() * 1e-3 || tail < 1e-300 || (s == 0.0 && tail < 1e-30) {
                return (s, tail);
            }
        }
        if k > 5000 {
            panic!("series did not converge for m={m}, x={xf}");
        }
    }
}

/// `Tr[σ₊ρ]`, …, `Tr[Âσ_zÂρ]` from explicit index sums in the `{|e⟩,|g⟩}` basis.
pub struct MomentsOracle {
    pub m_plus: Complex64,
    pub m_z: Complex64,
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub c_z: Complex64,
    pub d_plus: Complex64,
    pub d_z: Complex64,
}

pub fn moments_oracle(a: Complex64, a_z: f64, rho: [[Complex64; 2]; 2]) -> MomentsOracle {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let obs = [[Complex64::new(a_z, 0.0), a], [a.conj(), Complex64::new(-a_z, 0.0)]];
    let sp = [[z, o], [z, z]];
    let sm = [[z, z], [o, z]];
    let sz = [[o, z], [z, -o]];
    let mul = |x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]| {
        let mut r = [[z; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    r[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        r
    };
    let tr_rho = |x: [[Complex64; 2]; 2]| {
        let mut t = z;
        for i in 0..2 {
            for j in 0..2 {
                t += x[i][j] * rho[j][i];
            }
        }
        t
    };
    MomentsOracle {
        m_plus: tr_rho(sp),
        m_z: tr_rho(sz),
        c_plus: tr_rho(mul(sp, obs)),
        c_minus: tr_rho(mul(sm, obs)),
        c_z: tr_rho(mul(sz, obs)),
        d_plus: tr_rho(mul(mul(obs, sp), obs)),
        d_z: tr_rho(mul(mul(obs, sz), obs)),
    }
}
