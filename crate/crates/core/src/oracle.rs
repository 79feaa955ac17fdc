// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense truncated-Fock-space reference implementation.
//!
//! Everything here is brute force: explicit ladder matrices, Hermitian
//! eigendecompositions for the propagators, and operator products on the
//! joint qubit ⊗ photon space for the measurement statistics. It is slow
//! (cubic in the Fock dimension) and serves as ground truth for the
//! perturbative and closed-form paths.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::engine::LgQuad;
use crate::error::{Error, Result};
use crate::model::{observable_matrix, projector, ModelParams, Observable, QubitState};
use crate::perturbative::check_time;
use crate::vtrace::{ModelTag, VTrace, VTraceProvider};

pub type CMatrix = DMatrix<Complex64>;

/// Largest thermal population allowed beyond the last Fock level.
pub const TRUNCATION_LIMIT: f64 = 1e-12;

/// Upper limit for [`default_dim`].
pub const MAX_DEFAULT_DIM: usize = 2048;

const MIN_DEFAULT_DIM: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fock levels `0..dim` with `a` and `a†`.
#[derive(Debug, Clone)]
pub struct TruncatedSpace {
    dim: usize,
    ladder_down: CMatrix,
    ladder_up: CMatrix,
}

impl TruncatedSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::arg("dim", format!("Fock dimension must be >= 2, got {dim}")));
        }
        let ladder_down = CMatrix::from_fn(dim, dim, |i, j| {
            if j == i + 1 {
                Complex64::new((j as f64).sqrt(), 0.0)
            } else {
                ZERO
            }
        });
        let ladder_up = ladder_down.adjoint();
        Ok(Self { dim, ladder_down, ladder_up })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `a`
    pub fn ladder_down(&self) -> &CMatrix {
        &self.ladder_down
    }

    /// `a†`
    pub fn ladder_up(&self) -> &CMatrix {
        &self.ladder_up
    }

    /// `a†a`, exactly diagonal.
    pub fn number(&self) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_fn(self.dim, |i, _| Complex64::new(i as f64, 0.0)))
    }
}

/// Bose-Einstein populations on a truncated space.
#[derive(Debug, Clone)]
pub struct ThermalPhotonState {
    populations: Vec<f64>,
    inv_temperature: f64,
    weight_truncated: f64,
}

impl ThermalPhotonState {
    /// Fails with [`Error::Truncation`] when more than [`TRUNCATION_LIMIT`] of
    /// the thermal weight lies above level `dim - 1`.
    pub fn new(params: &ModelParams, dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::arg("dim", "Fock dimension must be >= 1"));
        }
        let beta = params.inv_temperature();
        let x = beta * params.omega_cavity();
        if x.is_infinite() {
            let mut populations = vec![0.0; dim];
            populations[0] = 1.0;
            return Ok(Self { populations, inv_temperature: beta, weight_truncated: 0.0 });
        }
        let weight_truncated = (-(dim as f64) * x).exp();
        if weight_truncated >= TRUNCATION_LIMIT {
            return Err(Error::Truncation { dim, weight: weight_truncated, limit: TRUNCATION_LIMIT });
        }
        let norm = -(-x).exp_m1();
        let mut populations: Vec<f64> = (0..dim).map(|m| norm * (-(m as f64) * x).exp()).collect();
        let total: f64 = populations.iter().sum();
        populations.iter_mut().for_each(|p| *p /= total);
        Ok(Self { populations, inv_temperature: beta, weight_truncated })
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn inv_temperature(&self) -> f64 {
        self.inv_temperature
    }

    pub fn weight_truncated(&self) -> f64 {
        self.weight_truncated
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_iterator(
            self.populations.len(),
            self.populations.iter().map(|&p| Complex64::new(p, 0.0)),
        ))
    }
}

/// Which qubit-photon interaction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CouplingModel {
    /// `±(g a† + g* a)²`
    #[default]
    Quadratic,
    /// `±(g a† + g* a)`
    Linear,
}

impl CouplingModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CouplingModel::Quadratic => "quadratic",
            CouplingModel::Linear => "linear",
        }
    }
}

impl fmt::Display for CouplingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CouplingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(CouplingModel::Quadratic),
            "linear" => Ok(CouplingModel::Linear),
            other => Err(Error::arg("model", format!("unknown model `{other}` (expected quadratic|linear)"))),
        }
    }
}

/// Interaction operator `X = g a† + g* a` or `X²` on the truncated space.
///
/// `X²` is the projection of the untruncated operator,
/// `g² a†² + g*² a² + |g|²(2a†a + 1)`, so every retained matrix element is exact.
pub fn interaction(params: &ModelParams, space: &TruncatedSpace, model: CouplingModel) -> CMatrix {
    let g = params.coupling();
    let n = space.dim();
    match model {
        CouplingModel::Linear => space.ladder_up() * g + space.ladder_down() * g.conj(),
        CouplingModel::Quadratic => CMatrix::from_fn(n, n, |i, j| {
            let (fi, fj) = (i as f64, j as f64);
            if i == j {
                Complex64::new(g.norm_sqr() * (2.0 * fi + 1.0), 0.0)
            } else if i == j + 2 {
                g * g * ((fj + 1.0) * (fj + 2.0)).sqrt()
            } else if j == i + 2 {
                g.conj() * g.conj() * ((fi + 1.0) * (fi + 2.0)).sqrt()
            } else {
                ZERO
            }
        }),
    }
}

/// `(H₊, H₋)` with `H± = ω a†a ± X`.
pub fn hamiltonians(params: &ModelParams, space: &TruncatedSpace, model: CouplingModel) -> (CMatrix, CMatrix) {
    let free = space.number() * Complex64::new(params.omega_cavity(), 0.0);
    let x = interaction(params, space, model);
    (&free + &x, &free - &x)
}

/// Eigenvalues and unitary eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

const HERMITIAN_TOL: f64 = 1e-13;

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermitian_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::arg("h", "matrix must be square"));
    }
    let scale = max_abs(h).max(1.0);
    if max_abs(&(h - h.adjoint())) > HERMITIAN_TOL * scale {
        return Err(Error::arg("h", "matrix is not Hermitian"));
    }
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("Hermitian eigendecomposition did not converge".into()))?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvalue".into()));
    }
    Ok(HermitianEigen { values: eig.eigenvalues, vectors: eig.eigenvectors })
}

impl HermitianEigen {
    /// `e^{iHt} = Q diag(e^{iλt}) Q†`.
    pub fn exp_i(&self, t: f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= Complex64::from_polar(1.0, self.values[j] * t);
        }
        scaled * self.vectors.adjoint()
    }
}

/// `e^{iHt}` for Hermitian `H`.
pub fn matrix_exp_unitary(h: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(hermitian_eigen(h)?.exp_i(t))
}

/// Smallest power of two `N ≥ 64` whose thermal truncation weight is below
/// [`TRUNCATION_LIMIT`] with a 1.5× margin for coupling-induced level mixing.
pub fn default_dim(params: &ModelParams) -> Result<usize> {
    let x = params.inv_temperature() * params.omega_cavity();
    if x.is_infinite() {
        return Ok(MIN_DEFAULT_DIM);
    }
    let needed = 1.5 * (-TRUNCATION_LIMIT.ln()) / x;
    if !(needed <= MAX_DEFAULT_DIM as f64) {
        return Err(Error::Truncation { dim: MAX_DEFAULT_DIM, weight: (-(MAX_DEFAULT_DIM as f64) * x).exp(), limit: TRUNCATION_LIMIT });
    }
    Ok((needed.ceil() as usize).next_power_of_two().max(MIN_DEFAULT_DIM))
}

/// Eigendecompositions of `H₊` and `H₋` for one `(ω, g)`, reusable across
/// temperatures and times.
#[derive(Debug, Clone)]
pub struct FockPropagator {
    dim: usize,
    model: CouplingModel,
    plus: HermitianEigen,
    minus: HermitianEigen,
    /// `Q₊† Q₋`
    overlap: CMatrix,
}

impl FockPropagator {
    pub fn new(params: &ModelParams, space: &TruncatedSpace, model: CouplingModel) -> Result<Self> {
        let (hp, hm) = hamiltonians(params, space, model);
        let plus = hermitian_eigen(&hp)?;
        let minus = hermitian_eigen(&hm)?;
        let overlap = plus.vectors.adjoint() * &minus.vectors;
        Ok(Self { dim: space.dim(), model, plus, minus, overlap })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn model(&self) -> CouplingModel {
        self.model
    }

    /// `V = e^{iH₊T} e^{-iH₋T}` as a dense matrix.
    pub fn v_matrix(&self, t: f64) -> CMatrix {
        self.plus.exp_i(t) * self.minus.exp_i(-t)
    }

    /// Precomputes the weights that make each later trace `O(N²)`.
    pub fn thermal_kernel(&self, state: &ThermalPhotonState) -> Result<TraceKernel> {
        if state.populations().len() != self.dim {
            return Err(Error::arg("state", "thermal state dimension does not match the propagator"));
        }
        // Tr[Q₊ E₊ Q₊† Q₋ E₋* Q₋† ρ] = Σ_ij E₊_i (Q₊†Q₋)_ij E₋*_j (Q₋†ρQ₊)_ji
        let mut rho_q = self.plus.vectors.clone();
        for (i, mut row) in rho_q.row_iter_mut().enumerate() {
            row *= Complex64::new(state.populations()[i], 0.0);
        }
        let reduced = self.minus.vectors.adjoint() * rho_q;
        let weights = self.overlap.component_mul(&reduced.transpose());
        Ok(TraceKernel {
            plus: self.plus.values.clone(),
            minus: self.minus.values.clone(),
            weights,
        })
    }
}

/// `T ↦ Tr[V(T) ρ_P]` in the joint eigenbasis.
#[derive(Debug, Clone)]
pub struct TraceKernel {
    plus: DVector<f64>,
    minus: DVector<f64>,
    weights: CMatrix,
}

impl TraceKernel {
    pub fn eval(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let right: Vec<Complex64> = self.minus.iter().map(|&l| Complex64::from_polar(1.0, -l * t)).collect();
        let mut total = ZERO;
        for i in 0..self.plus.len() {
            let row: Complex64 = self.weights.row(i).iter().zip(&right).map(|(w, r)| w * r).sum();
            total += row * Complex64::from_polar(1.0, self.plus[i] * t);
        }
        total
    }

    pub fn dim(&self) -> usize {
        self.plus.len()
    }
}

/// `Tr[e^{iH₊T} e^{-iH₋T} ρ_P]` on an `N`-level space.
pub fn v_trace_oracle(params: &ModelParams, t: f64, space: &TruncatedSpace, model: CouplingModel) -> Result<VTrace> {
    check_time(t)?;
    let state = ThermalPhotonState::new(params, space.dim())?;
    let kernel = FockPropagator::new(params, space, model)?.thermal_kernel(&state)?;
    Ok(oracle_trace(kernel.eval(t), &state))
}

fn oracle_trace(value: Complex64, state: &ThermalPhotonState) -> VTrace {
    VTrace {
        value,
        terms_used: state.populations().len(),
        tail_bound: state.weight_truncated(),
        model_tag: ModelTag::Oracle,
    }
}

/// Joint-probability simulation result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLg {
    pub quad: LgQuad,
    /// `probabilities[i][j] = P(A₁ = μ_i, A₀ = ν_j)` with index 0 ↦ +1, 1 ↦ -1.
    pub probabilities: [[f64; 2]; 2],
}

impl OracleLg {
    pub fn probability(&self, mu: i32, nu: i32) -> Result<f64> {
        Ok(self.probabilities[sign_index(mu, "mu")?][sign_index(nu, "nu")?])
    }

    pub fn total_probability(&self) -> f64 {
        self.probabilities.iter().flatten().sum()
    }
}

fn sign_index(value: i32, name: &'static str) -> Result<usize> {
    match value {
        1 => Ok(0),
        -1 => Ok(1),
        other => Err(Error::arg(name, format!("must be +1 or -1, got {other}"))),
    }
}

const SIGNS: [i32; 2] = [1, -1];

/// Kronecker product of a 2×2 qubit operator with an `N×N` photon operator.
fn kron2(q: &nalgebra::Matrix2<Complex64>, p: &CMatrix) -> CMatrix {
    let n = p.nrows();
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    for a in 0..2 {
        for b in 0..2 {
            if q[(a, b)] != ZERO {
                out.view_mut((a * n, b * n), (n, n)).copy_from(&(p * q[(a, b)]));
            }
        }
    }
    out
}

/// Full qubit ⊗ photon simulation, diagonalised once and evaluated at many
/// times.
#[derive(Debug, Clone)]
pub struct JointOracle {
    params: ModelParams,
    dim: usize,
    upper: HermitianEigen,
    lower: HermitianEigen,
    photon: ThermalPhotonState,
}

impl JointOracle {
    /// Builds `H = (Ω/2)σ_z ⊗ I + I ⊗ ω a†a + σ_z ⊗ X` on the `2N` space.
    ///
    /// `H` commutes with `σ_z`; the two qubit blocks are diagonalised
    /// separately after checking the off-diagonal blocks vanish.
    pub fn new(params: &ModelParams, space: &TruncatedSpace, model: CouplingModel) -> Result<Self> {
        let n = space.dim();
        let photon = ThermalPhotonState::new(params, n)?;
        let half_omega = Complex64::new(0.5 * params.omega_qubit(), 0.0);
        let id_q = crate::model::identity();
        let id_p = CMatrix::identity(n, n);
        let h = kron2(&(crate::model::sigma_z() * half_omega), &id_p)
            + kron2(&id_q, &(space.number() * Complex64::new(params.omega_cavity(), 0.0)))
            + kron2(&crate::model::sigma_z(), &interaction(params, space, model));
        let off = max_abs(&h.view((0, n), (n, n)).into_owned()).max(max_abs(&h.view((n, 0), (n, n)).into_owned()));
        if off > 1e-13 {
            return Err(Error::Numerical(format!("joint Hamiltonian mixes qubit blocks ({off:.3e})")));
        }
        let upper = hermitian_eigen(&h.view((0, 0), (n, n)).into_owned())?;
        let lower = hermitian_eigen(&h.view((n, n), (n, n)).into_owned())?;
        Ok(Self { params: *params, dim: n, upper, lower, photon })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `U(T) = e^{-iHT}` on the joint space.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let n = self.dim;
        let mut u = CMatrix::zeros(2 * n, 2 * n);
        u.view_mut((0, 0), (n, n)).copy_from(&self.upper.exp_i(-t));
        u.view_mut((n, n), (n, n)).copy_from(&self.lower.exp_i(-t));
        u
    }

    /// `P(μ, ν) = Tr[Π_μ U (Π_ν ρ_Q Π_ν ⊗ ρ_P) U†]` for all four outcome pairs,
    /// and the LG values assembled from them.
    pub fn lg(&self, obs: &Observable, rho_q: &QubitState, t: f64) -> Result<OracleLg> {
        check_time(t)?;
        let u = self.propagator(t);
        let u_dag = u.adjoint();
        let rho_p = self.photon.matrix();
        let id_p = CMatrix::identity(self.dim, self.dim);
        let mut probabilities = [[0.0; 2]; 2];
        for (j, &nu) in SIGNS.iter().enumerate() {
            let pn = projector(obs, nu)?;
            let sigma = kron2(&(pn * rho_q.matrix() * pn), &rho_p);
            let evolved = &u * sigma * &u_dag;
            for (i, &mu) in SIGNS.iter().enumerate() {
                let pm = kron2(&projector(obs, mu)?, &id_p);
                // Tr[AB] = Σ_ij A_ij B_ji
                let tr: Complex64 = pm.iter().zip(evolved.transpose().iter()).map(|(a, b)| a * b).sum();
                probabilities[i][j] = tr.re;
            }
        }
        let p = |i: usize, j: usize| probabilities[i][j];
        let out = |k: usize| if k == 0 { 1.0 } else { -1.0 };
        let (mut a0, mut a1, mut corr) = (0.0, 0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                a0 += out(j) * p(i, j);
                a1 += out(i) * p(i, j);
                corr += out(i) * out(j) * p(i, j);
            }
        }
        let trace = oracle_trace(self.v_trace_direct(t), &self.photon);
        Ok(OracleLg { quad: LgQuad::from_ingredients(t, a0, a1, corr, trace), probabilities })
    }

    /// `Tr[V ρ_P]` from the block propagators, with the qubit phase removed.
    fn v_trace_direct(&self, t: f64) -> Complex64 {
        // upper block: e^{-i(Ω/2 + H₊)T}; lower block: e^{-i(-Ω/2 + H₋)T}
        let v = self.upper.exp_i(t) * self.lower.exp_i(-t);
        let tr: Complex64 =
            (0..self.dim).map(|m| v[(m, m)] * self.photon.populations()[m]).sum();
        tr * Complex64::from_polar(1.0, -self.params.omega_qubit() * t)
    }

    /// `Tr[Â ρ(T)]` check helper: `⟨Â⟩` of the unmeasured initial state.
    pub fn initial_expectation(&self, obs: &Observable, rho_q: &QubitState) -> f64 {
        let a = observable_matrix(obs) * rho_q.matrix();
        (a[(0, 0)] + a[(1, 1)]).re
    }
}

/// [`JointOracle::lg`] for a single time.
pub fn lg_oracle(
    params: &ModelParams,
    obs: &Observable,
    rho_q: &QubitState,
    t: f64,
    space: &TruncatedSpace,
    model: CouplingModel,
) -> Result<OracleLg> {
    JointOracle::new(params, space, model)?.lg(obs, rho_q, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CacheKey {
    omega_cavity: u64,
    g_re: u64,
    g_im: u64,
    beta: u64,
    dim: usize,
}

type KernelCell = Arc<OnceLock<std::result::Result<Arc<TraceKernel>, Error>>>;

/// [`VTraceProvider`] backed by dense diagonalisation.
///
/// Kernels are cached per `(ω, g, β, N)`, so scanning a time grid costs one
/// pair of eigendecompositions.
#[derive(Debug, Default)]
pub struct FockOracle {
    model: CouplingModel,
    dim: Option<usize>,
    cache: Mutex<HashMap<CacheKey, KernelCell>>,
}

impl FockOracle {
    /// `dim = None` selects [`default_dim`] for each parameter set.
    pub fn new(model: CouplingModel, dim: Option<usize>) -> Self {
        Self { model, dim, cache: Mutex::new(HashMap::new()) }
    }

    pub fn model(&self) -> CouplingModel {
        self.model
    }

    pub fn kernel(&self, params: &ModelParams) -> Result<Arc<TraceKernel>> {
        let dim = match self.dim {
            Some(d) => d,
            None => default_dim(params)?,
        };
        let g = params.coupling();
        let key = CacheKey {
            omega_cavity: params.omega_cavity().to_bits(),
            g_re: g.re.to_bits(),
            g_im: g.im.to_bits(),
            beta: params.inv_temperature().to_bits(),
            dim,
        };
        let cell = {
            let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
            cache.entry(key).or_default().clone()
        };
        cell.get_or_init(|| {
            tracing::debug!(dim, model = %self.model, "building Fock oracle kernel");
            let space = TruncatedSpace::new(dim)?;
            let state = ThermalPhotonState::new(params, dim)?;
            let kernel = FockPropagator::new(params, &space, self.model)?.thermal_kernel(&state)?;
            Ok(Arc::new(kernel))
        })
        .clone()
    }
}

impl VTraceProvider for FockOracle {
    fn v_trace(&self, params: &ModelParams, t: f64, _tol: f64) -> Result<VTrace> {
        check_time(t)?;
        let kernel = self.kernel(params)?;
        let dim = kernel.dim();
        let weight = if params.is_zero_temperature() {
            0.0
        } else {
            (-(dim as f64) * params.inv_temperature() * params.omega_cavity()).exp()
        };
        Ok(VTrace { value: kernel.eval(t), terms_used: dim, tail_bound: weight, model_tag: ModelTag::Oracle })
    }

    fn tag(&self) -> ModelTag {
        ModelTag::Oracle
    }
}
