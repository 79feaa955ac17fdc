// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters and exact 2×2 qubit algebra.
//!
//! Matrices are written in the `{|e⟩, |g⟩}` basis: `σ_z = diag(1, -1)`,
//! `σ₊ = |e⟩⟨g|` and `σ₋ = |g⟩⟨e|`.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = Matrix2<Complex64>;

/// Tolerance used for all 2×2 structural checks (hermiticity, trace, norm).
pub const QUBIT_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity() -> Mat2 {
    Mat2::identity()
}

pub fn sigma_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn sigma_plus() -> Mat2 {
    Mat2::new(ZERO, ONE, ZERO, ZERO)
}

pub fn sigma_minus() -> Mat2 {
    Mat2::new(ZERO, ZERO, ONE, ZERO)
}

fn trace(m: &Mat2) -> Complex64 {
    m[(0, 0)] + m[(1, 1)]
}

fn max_abs(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Physical constants of one simulation instance.
///
/// `inv_temperature` may be `f64::INFINITY` (zero temperature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega_qubit: f64,
    omega_cavity: f64,
    coupling: Complex64,
    inv_temperature: f64,
}

impl ModelParams {
    pub fn new(
        omega_qubit: f64,
        omega_cavity: f64,
        coupling: Complex64,
        inv_temperature: f64,
    ) -> Result<Self> {
        if !(omega_qubit.is_finite() && omega_qubit > 0.0) {
            return Err(Error::arg("omega_qubit", format!("must be finite and > 0, got {omega_qubit}")));
        }
        if !(omega_cavity.is_finite() && omega_cavity > 0.0) {
            return Err(Error::arg("omega_cavity", format!("must be finite and > 0, got {omega_cavity}")));
        }
        if !(coupling.re.is_finite() && coupling.im.is_finite()) {
            return Err(Error::arg("coupling", format!("must be finite, got {coupling}")));
        }
        if inv_temperature.is_nan() || inv_temperature <= 0.0 {
            return Err(Error::arg("inv_temperature", format!("must be > 0 (inf allowed), got {inv_temperature}")));
        }
        Ok(Self { omega_qubit, omega_cavity, coupling, inv_temperature })
    }

    /// Real-coupling shorthand.
    pub fn real(omega_qubit: f64, omega_cavity: f64, g: f64, inv_temperature: f64) -> Result<Self> {
        Self::new(omega_qubit, omega_cavity, Complex64::new(g, 0.0), inv_temperature)
    }

    pub fn omega_qubit(&self) -> f64 {
        self.omega_qubit
    }

    pub fn omega_cavity(&self) -> f64 {
        self.omega_cavity
    }

    pub fn coupling(&self) -> Complex64 {
        self.coupling
    }

    pub fn inv_temperature(&self) -> f64 {
        self.inv_temperature
    }

    /// `β⁻¹`, zero at zero temperature.
    pub fn temperature(&self) -> f64 {
        if self.is_zero_temperature() {
            0.0
        } else {
            1.0 / self.inv_temperature
        }
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.inv_temperature.is_infinite()
    }

    pub fn with_coupling(self, coupling: Complex64) -> Result<Self> {
        Self::new(self.omega_qubit, self.omega_cavity, coupling, self.inv_temperature)
    }

    pub fn with_inv_temperature(self, inv_temperature: f64) -> Result<Self> {
        Self::new(self.omega_qubit, self.omega_cavity, self.coupling, inv_temperature)
    }

    /// Mean thermal photon number `1/(e^{βω} - 1)`.
    pub fn mean_photons(&self) -> f64 {
        if self.is_zero_temperature() {
            0.0
        } else {
            1.0 / (self.inv_temperature * self.omega_cavity).exp_m1()
        }
    }

    pub fn derived(&self) -> DerivedCouplings {
        derived_couplings(self)
    }
}

impl Default for ModelParams {
    /// Ω = 1, ω = 0.1, g = 0.075, β = 10.
    fn default() -> Self {
        Self {
            omega_qubit: 1.0,
            omega_cavity: 0.1,
            coupling: Complex64::new(0.075, 0.0),
            inv_temperature: 10.0,
        }
    }
}

/// Dressed frequencies `ω± = ω ± 2|g|²` and two-photon coupling `κ = g²`.
///
/// `omega_minus` is allowed to be zero or negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCouplings {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub kappa: Complex64,
    pub g_abs_sq: f64,
}

pub fn derived_couplings(params: &ModelParams) -> DerivedCouplings {
    let g = params.coupling;
    let g_abs_sq = g.norm_sqr();
    let omega = params.omega_cavity;
    DerivedCouplings {
        omega_plus: omega + 2.0 * g_abs_sq,
        omega_minus: omega - 2.0 * g_abs_sq,
        kappa: g * g,
        g_abs_sq,
    }
}

/// Measured qubit operator `Â = a σ₊ + a* σ₋ + a_z σ_z` with `|a|² + a_z² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable {
    a: Complex64,
    a_z: f64,
}

impl Observable {
    pub fn new(a: Complex64, a_z: f64) -> Result<Self> {
        let norm = a.norm_sqr() + a_z * a_z;
        if !norm.is_finite() || (norm - 1.0).abs() > QUBIT_TOL {
            return Err(Error::arg(
                "observable",
                format!("|a|² + a_z² must equal 1 (got {norm:.15})"),
            ));
        }
        Ok(Self { a, a_z })
    }

    /// Observable `a_x σ_x + a_y σ_y + a_z σ_z`.
    ///
    /// Since `σ_x = σ₊ + σ₋` and `σ_y = -i(σ₊ - σ₋)`, the σ₊ coefficient is
    /// `a = a_x - i a_y`.
    pub fn from_components(a_x: f64, a_y: f64, a_z: f64) -> Result<Self> {
        Self::new(Complex64::new(a_x, -a_y), a_z)
    }

    /// `a_x = a_z = 1/√2`, `a_y = 0`: the observable used for all reference runs.
    pub fn xz_bisector() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: Complex64::new(s, 0.0), a_z: s }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn a_z(&self) -> f64 {
        self.a_z
    }

    /// `(a_x, a_y, a_z)` with `Â = a_x σ_x + a_y σ_y + a_z σ_z`.
    pub fn components(&self) -> (f64, f64, f64) {
        // `+ 0.0` maps -0.0 to 0.0
        (self.a.re + 0.0, -self.a.im + 0.0, self.a_z + 0.0)
    }
}

impl Default for Observable {
    fn default() -> Self {
        Self::xz_bisector()
    }
}

pub fn observable_matrix(obs: &Observable) -> Mat2 {
    sigma_plus() * obs.a + sigma_minus() * obs.a.conj() + sigma_z() * Complex64::new(obs.a_z, 0.0)
}

/// `Π_μ = (I + μÂ)/2` for `mu ∈ {+1, -1}`.
pub fn projector(obs: &Observable, mu: i32) -> Result<Mat2> {
    let sign = outcome_sign(mu, "mu")?;
    Ok((identity() + observable_matrix(obs) * Complex64::new(sign, 0.0)) * Complex64::new(0.5, 0.0))
}

pub(crate) fn outcome_sign(value: i32, name: &'static str) -> Result<f64> {
    match value {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        other => Err(Error::arg(name, format!("must be +1 or -1, got {other}"))),
    }
}

/// Initial qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    rho: Mat2,
}

impl QubitState {
    pub fn new(rho: Mat2) -> Result<Self> {
        let herm_defect = max_abs(&(rho - rho.adjoint()));
        if !(herm_defect <= QUBIT_TOL) {
            return Err(Error::arg("rho_q", format!("not Hermitian (defect {herm_defect:.3e})")));
        }
        let tr = trace(&rho);
        if (tr - ONE).norm() > QUBIT_TOL {
            return Err(Error::arg("rho_q", format!("trace must be 1, got {tr}")));
        }
        let p = rho[(0, 0)].re;
        let q = rho[(1, 1)].re;
        let radius = (0.25 * (p - q) * (p - q) + rho[(0, 1)].norm_sqr()).sqrt();
        let min_eig = 0.5 * (p + q) - radius;
        if min_eig < -QUBIT_TOL {
            return Err(Error::arg("rho_q", format!("not positive semidefinite (min eigenvalue {min_eig:.3e})")));
        }
        Ok(Self { rho })
    }

    /// `|g⟩⟨g|`, the reference initial state.
    pub fn ground() -> Self {
        Self { rho: Mat2::new(ZERO, ZERO, ZERO, ONE) }
    }

    pub fn excited() -> Self {
        Self { rho: Mat2::new(ONE, ZERO, ZERO, ZERO) }
    }

    /// `|+⟩⟨+|` with `|+⟩ = (|e⟩ + |g⟩)/√2`.
    pub fn plus_x() -> Self {
        let h = Complex64::new(0.5, 0.0);
        Self { rho: Mat2::new(h, h, h, h) }
    }

    pub fn maximally_mixed() -> Self {
        Self { rho: identity() * Complex64::new(0.5, 0.0) }
    }

    /// State with Bloch vector `(x, y, z)`, `|r| ≤ 1`.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let r2 = x * x + y * y + z * z;
        if r2 > 1.0 + QUBIT_TOL {
            return Err(Error::arg("rho_q", format!("Bloch vector length {} exceeds 1", r2.sqrt())));
        }
        let half = 0.5;
        Self::new(Mat2::new(
            Complex64::new(half * (1.0 + z), 0.0),
            Complex64::new(half * x, -half * y),
            Complex64::new(half * x, half * y),
            Complex64::new(half * (1.0 - z), 0.0),
        ))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.rho
    }
}

/// Qubit-space traces entering the two-time correlators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMoments {
    /// `Tr[σ₊ρ]`
    pub m_plus: Complex64,
    /// `Tr[σ_z ρ]`
    pub m_z: Complex64,
    /// `Tr[σ₊Âρ]`
    pub c_plus: Complex64,
    /// `Tr[σ₋Âρ]`
    pub c_minus: Complex64,
    /// `Tr[σ_z Âρ]`
    pub c_z: Complex64,
    /// `Tr[Âσ₊Âρ]`
    pub d_plus: Complex64,
    /// `Tr[Âσ_zÂρ]`, always real for Hermitian ρ.
    pub d_z: Complex64,
}

pub fn qubit_moments(obs: &Observable, rho_q: &QubitState) -> QubitMoments {
    let a = observable_matrix(obs);
    let rho = rho_q.matrix();
    let sp = sigma_plus();
    let sm = sigma_minus();
    let sz = sigma_z();
    let a_rho = a * rho;
    QubitMoments {
        m_plus: trace(&(sp * rho)),
        m_z: trace(&(sz * rho)),
        c_plus: trace(&(sp * a_rho)),
        c_minus: trace(&(sm * a_rho)),
        c_z: trace(&(sz * a_rho)),
        d_plus: trace(&(a * sp * a_rho)),
        d_z: trace(&(a * sz * a_rho)),
    }
}
