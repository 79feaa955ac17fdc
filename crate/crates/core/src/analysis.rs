// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Time scans, violation minima, temperature and coupling sweeps, and the
//! `y = a·x^b + c` power-law fit.

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use rayon::prelude::*;

use crate::engine::{lg_quad, CorrelatorMode, LgQuad};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Observable, QubitState};
use crate::vtrace::{ModelTag, VTraceProvider};

/// Thermal-sum tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Golden-section stopping width for minimum refinement.
pub const DEFAULT_REFINE_TOL: f64 = 1e-6;

/// Couplings above this are computed but flagged as outside the fit's
/// validity range.
pub const MAX_RELIABLE_COUPLING: f64 = 0.52;

/// One LG evaluation setup: everything except the time separation.
#[derive(Clone, Copy)]
pub struct LgProblem<'a> {
    pub mode: CorrelatorMode,
    pub provider: &'a dyn VTraceProvider,
    pub params: ModelParams,
    pub obs: Observable,
    pub rho_q: QubitState,
    pub tol: f64,
}

impl<'a> LgProblem<'a> {
    /// Ground-state qubit, the x–z bisector observable and [`DEFAULT_TOL`].
    pub fn new(mode: CorrelatorMode, provider: &'a dyn VTraceProvider, params: ModelParams) -> Self {
        Self {
            mode,
            provider,
            params,
            obs: Observable::xz_bisector(),
            rho_q: QubitState::ground(),
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_params(&self, params: ModelParams) -> Self {
        Self { params, ..*self }
    }

    pub fn quad(&self, t: f64) -> Result<LgQuad> {
        lg_quad(self.mode, self.provider, &self.params, &self.obs, &self.rho_q, t, self.tol)
            .map_err(|e| Error::AtTime { t, source: Box::new(e) })
    }

    fn lg_pm(&self, t: f64) -> Result<f64> {
        Ok(self.quad(t)?.lg_pm)
    }
}

impl std::fmt::Debug for LgProblem<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LgProblem")
            .field("mode", &self.mode)
            .field("provider", &self.provider.tag())
            .field("params", &self.params)
            .field("obs", &self.obs)
            .field("tol", &self.tol)
            .finish()
    }
}

/// `start, start + step, …` up to `stop` inclusive (within `1e-9·step`).
pub fn time_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && start >= 0.0) {
        return Err(Error::arg("t_grid", format!("start must be finite and >= 0, got {start}")));
    }
    if !(stop.is_finite() && stop >= start) {
        return Err(Error::arg("t_grid", format!("stop must be finite and >= start, got {stop}")));
    }
    if stop == start {
        return Ok(vec![start]);
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::arg("t_grid", format!("step must be > 0, got {step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(Error::arg("t_grid", format!("{n} points exceeds the grid limit")));
    }
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// `[0, 4π/Ω]` with step `π/(200Ω)`.
pub fn default_time_grid(omega_qubit: f64) -> Vec<f64> {
    let step = std::f64::consts::PI / (200.0 * omega_qubit);
    (0..=800).map(|i| i as f64 * step).collect()
}

/// `n` inverse temperatures `β` whose `β⁻¹` are log-spaced on `[lo, hi]`,
/// ordered by increasing temperature.
pub fn log_spaced_betas(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::arg("beta_grid", format!("need 0 < lo <= hi, got {lo}:{hi}")));
    }
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![1.0 / lo]),
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            Ok((0..n).map(|i| 1.0 / (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect())
        }
    }
}

/// 24 points with `β⁻¹` log-spaced on `[0.1, 1.25]`.
pub fn default_beta_grid() -> Vec<f64> {
    log_spaced_betas(0.1, 1.25, 24).expect("static grid")
}

/// LG values along a time grid.
#[derive(Debug, Clone)]
pub struct ScanSeries {
    pub t_values: Vec<f64>,
    pub lg_values: Vec<LgQuad>,
    pub params: ModelParams,
    pub obs: Observable,
    pub mode: CorrelatorMode,
    pub provider: ModelTag,
}

impl ScanSeries {
    pub fn lg_pm(&self) -> Vec<f64> {
        self.lg_values.iter().map(|q| q.lg_pm).collect()
    }

    pub fn len(&self) -> usize {
        self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_values.is_empty()
    }
}

/// Evaluates [`lg_quad`] on every grid point, in parallel, in grid order.
///
/// On failure the error of the earliest failing time is returned.
pub fn scan(problem: &LgProblem<'_>, t_grid: &[f64]) -> Result<ScanSeries> {
    if t_grid.is_empty() {
        return Err(Error::arg("t_grid", "grid is empty"));
    }
    if t_grid.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::arg("t_grid", "times must be finite and >= 0"));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::arg("t_grid", "times must be strictly increasing"));
    }
    let results: Vec<Result<LgQuad>> = t_grid.par_iter().map(|&t| problem.quad(t)).collect();
    let lg_values = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ScanSeries {
        t_values: t_grid.to_vec(),
        lg_values,
        params: problem.params,
        obs: problem.obs,
        mode: problem.mode,
        provider: problem.provider.tag(),
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises `f` on `[lo, hi]` by golden-section search until the bracket is
/// narrower than `tol`. Returns the bracket midpoint and `f` there.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::arg("refine_tol", format!("must be > 0, got {tol}")));
    }
    if !(lo <= hi) {
        return Err(Error::arg("bracket", format!("lo {lo} > hi {hi}")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a >= tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        // the bracket can stop shrinking once it reaches float resolution
        if b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    Ok((mid, f(mid)?))
}

/// First violating local minimum of `LG_{1,-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumRecord {
    /// `β⁻¹`, zero at zero temperature.
    pub temperature: f64,
    /// `|g|`
    pub coupling: f64,
    pub t_min: f64,
    pub lg_min: f64,
    pub refined: bool,
}

/// First interior index `i` with `lg[i-1] > lg[i] < lg[i+1]` and `lg[i] < 0`.
pub fn first_violation_index(lg: &[f64]) -> Option<usize> {
    (1..lg.len().saturating_sub(1)).find(|&i| lg[i] < lg[i - 1] && lg[i] < lg[i + 1] && lg[i] < 0.0)
}

/// Locates the first violating grid minimum of `LG_{1,-1}` in `series` and
/// refines it by golden-section search over the neighbouring grid interval.
///
/// With `refine_tol = None` the grid point is reported unrefined.
pub fn first_violation_minimum(
    problem: &LgProblem<'_>,
    series: &ScanSeries,
    refine_tol: Option<f64>,
) -> Result<Option<MinimumRecord>> {
    let lg = series.lg_pm();
    let Some(i) = first_violation_index(&lg) else {
        return Ok(None);
    };
    let mut record = MinimumRecord {
        temperature: series.params.temperature(),
        coupling: series.params.coupling().norm(),
        t_min: series.t_values[i],
        lg_min: lg[i],
        refined: false,
    };
    if let Some(tol) = refine_tol {
        let refine = problem.with_params(series.params);
        let (t, value) =
            golden_section_min(|t| refine.lg_pm(t), series.t_values[i - 1], series.t_values[i + 1], tol)?;
        if value <= record.lg_min {
            record.t_min = t;
            record.lg_min = value;
        }
        record.refined = true;
    }
    Ok(Some(record))
}

/// Scans each `β` in order and records the first violating minimum.
///
/// The sweep stops at the first `β` without a violation.
pub fn sweep_temperature(
    problem: &LgProblem<'_>,
    betas: &[f64],
    t_grid: &[f64],
    refine_tol: Option<f64>,
) -> Result<Vec<MinimumRecord>> {
    let mut records = Vec::with_capacity(betas.len());
    for &beta in betas {
        let params = problem.params.with_inv_temperature(beta)?;
        let local = problem.with_params(params);
        let series = scan(&local, t_grid)?;
        match first_violation_minimum(&local, &series, refine_tol)? {
            Some(record) => records.push(record),
            None => {
                tracing::info!(
                    g = params.coupling().norm(),
                    inv_beta = params.temperature(),
                    "no violating minimum; temperature sweep stopped"
                );
                break;
            }
        }
    }
    Ok(records)
}

/// Least-squares fit of `y = a·x^b + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual_rms: f64,
    pub converged: bool,
    pub n_points: usize,
    pub iterations: usize,
}

impl FitResult {
    /// `b`, if the fit converged.
    pub fn exponent(&self) -> Option<f64> {
        self.converged.then_some(self.b)
    }
}

const FIT_MAX_ITER: usize = 500;
const FIT_REL_TOL: f64 = 1e-12;
const FIT_STEP_TOL: f64 = 1e-12;

fn sum_sq(points: &[(f64, f64)], p: &Vector3<f64>) -> f64 {
    points.iter().map(|&(x, y)| (y - p[0] * x.powf(p[1]) - p[2]).powi(2)).sum()
}

/// Starting point from the shape of the data: `c` just below `min(y)`, `b`
/// from the log-log slope of `y - c` over the upper half of the range.
pub fn heuristic_init(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let ymin = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let c = ymin - 0.1 * ymin.abs().max(f64::MIN_POSITIVE);
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
    let upper = &sorted[sorted.len() / 2..];
    let (lx, ly): (Vec<f64>, Vec<f64>) = upper
        .iter()
        .filter(|p| p.1 - c > 0.0)
        .map(|p| (p.0.ln(), (p.1 - c).ln()))
        .unzip();
    let b = if lx.len() >= 2 {
        let mx = lx.iter().sum::<f64>() / lx.len() as f64;
        let my = ly.iter().sum::<f64>() / ly.len() as f64;
        let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        if sxx > 0.0 { sxy / sxx } else { 1.0 }
    } else {
        1.0
    };
    let b = if b.is_finite() && b.abs() > 1e-6 { b } else { 1.0 };
    let (xl, yl) = *sorted.last().expect("nonempty");
    (((yl - c) / xl.powf(b)), b, c)
}

/// Linear least squares for `(a, c)` at fixed `b`; `None` if degenerate.
fn solve_linear_part(points: &[(f64, f64)], b: f64) -> Option<(f64, f64, f64)> {
    let mut ata = Matrix2::zeros();
    let mut aty = Vector2::zeros();
    for &(x, y) in points {
        let u = x.powf(b);
        ata += Matrix2::new(u * u, u, u, 1.0);
        aty += Vector2::new(u * y, y);
    }
    let sol = ata.lu().solve(&aty)?;
    if !sol.iter().all(|v| v.is_finite()) {
        return None;
    }
    let p = Vector3::new(sol[0], b, sol[1]);
    Some((sol[0], sol[1], sum_sq(points, &p)))
}

/// Scans `b ∈ [-8, 8]` and solves for `(a, c)` exactly at each `b`.
pub fn profile_init(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let mut best: Option<(f64, f64, f64, f64)> = None;
    for k in 0..=320 {
        let b = -8.0 + 0.05 * k as f64 + 0.0125;
        if let Some((a, c, ss)) = solve_linear_part(points, b) {
            if best.is_none_or(|bb| ss < bb.3) {
                best = Some((a, b, c, ss));
            }
        }
    }
    best.map(|(a, b, c, _)| (a, b, c))
}

/// Damped Gauss-Newton (Levenberg-Marquardt) fit of `y = a·x^b + c`.
///
/// Without `init`, the fit is started from both [`profile_init`] and
/// [`heuristic_init`] and the lower-residual result is kept.
pub fn fit_power_law(points: &[(f64, f64)], init: Option<(f64, f64, f64)>) -> Result<FitResult> {
    if points.len() < 4 {
        return Err(Error::arg("points", format!("need at least 4 points, got {}", points.len())));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::arg("points", "x must be finite and > 0, y finite"));
    }
    if let Some(p0) = init {
        return Ok(levenberg_marquardt(points, p0));
    }
    let mut best = levenberg_marquardt(points, heuristic_init(points));
    if let Some(p0) = profile_init(points) {
        let alt = levenberg_marquardt(points, p0);
        if (alt.converged && !best.converged) || (alt.converged == best.converged && alt.residual_rms < best.residual_rms)
        {
            best = alt;
        }
    }
    Ok(best)
}

fn levenberg_marquardt(points: &[(f64, f64)], init: (f64, f64, f64)) -> FitResult {
    let n = points.len();
    let mut p = Vector3::new(init.0, init.1, init.2);
    let mut ss = sum_sq(points, &p);
    if !ss.is_finite() {
        p = Vector3::new(0.0, 1.0, points.iter().map(|q| q.1).sum::<f64>() / n as f64);
        ss = sum_sq(points, &p);
    }
    let mut lambda = 1e-3;
    let mut converged = ss == 0.0;
    let mut iterations = 0;
    while !converged && iterations < FIT_MAX_ITER {
        iterations += 1;
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for &(x, y) in points {
            let u = x.powf(p[1]);
            let r = y - p[0] * u - p[2];
            let j = Vector3::new(u, p[0] * u * x.ln(), 1.0);
            jtj += j * j.transpose();
            jtr += j * r;
        }
        let mut damped = jtj;
        for k in 0..3 {
            damped[(k, k)] += lambda * jtj[(k, k)].max(1e-300);
        }
        let Some(step) = damped.lu().solve(&jtr) else {
            lambda *= 10.0;
            if lambda > 1e30 {
                break;
            }
            continue;
        };
        let small_step = step.norm() <= FIT_STEP_TOL * (p.norm() + FIT_STEP_TOL);
        let trial = p + step;
        let trial_ss = sum_sq(points, &trial);
        if trial_ss.is_finite() && trial_ss <= ss {
            let rel = (ss - trial_ss) / ss.max(f64::MIN_POSITIVE);
            p = trial;
            ss = trial_ss;
            lambda = (lambda / 10.0).max(1e-15);
            converged = ss == 0.0 || rel < FIT_REL_TOL || small_step;
        } else {
            lambda *= 10.0;
            // no descent direction left at float resolution
            converged = small_step;
            if lambda > 1e30 {
                break;
            }
        }
    }
    FitResult {
        a: p[0],
        b: p[1],
        c: p[2],
        residual_rms: (ss / n as f64).sqrt(),
        converged,
        n_points: n,
        iterations,
    }
}

/// Exponents of one coupling in a coupling sweep.
#[derive(Debug, Clone)]
pub struct CouplingExponents {
    pub coupling: f64,
    pub records: Vec<MinimumRecord>,
    /// Fit of `log(-LG_min)` against `β⁻¹`.
    pub lg_fit: Option<FitResult>,
    /// Fit of `log T_min` against `β⁻¹`.
    pub t_fit: Option<FitResult>,
    /// `g` lies above [`MAX_RELIABLE_COUPLING`].
    pub beyond_validity: bool,
    /// Why a fit is missing.
    pub note: Option<String>,
}

impl CouplingExponents {
    pub fn b1(&self) -> Option<f64> {
        self.lg_fit.and_then(|f| f.exponent())
    }

    pub fn b2(&self) -> Option<f64> {
        self.t_fit.and_then(|f| f.exponent())
    }
}

/// `(x, y)` pairs for [`fit_power_law`].
pub type FitPoints = Vec<(f64, f64)>;

/// Fit points `(β⁻¹, log(-LG_min))` and `(β⁻¹, log T_min)`; zero-temperature
/// records are skipped.
pub fn fit_points(records: &[MinimumRecord]) -> (FitPoints, FitPoints) {
    records
        .iter()
        .filter(|r| r.temperature > 0.0 && r.lg_min < 0.0 && r.t_min > 0.0)
        .map(|r| ((r.temperature, (-r.lg_min).ln()), (r.temperature, r.t_min.ln())))
        .unzip()
}

/// Runs [`sweep_temperature`] for each coupling and fits both exponents.
///
/// Per-coupling failures (numerical errors, too few violating records) are
/// recorded in `note`.
pub fn sweep_coupling(
    problem: &LgProblem<'_>,
    couplings: &[f64],
    betas: &[f64],
    t_grid: &[f64],
    refine_tol: Option<f64>,
) -> Result<Vec<CouplingExponents>> {
    let mut out = Vec::with_capacity(couplings.len());
    for &g in couplings {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::arg("g_grid", format!("couplings must be finite and > 0, got {g}")));
        }
        let params = problem.params.with_coupling(num_complex::Complex64::new(g, 0.0))?;
        let beyond_validity = g > MAX_RELIABLE_COUPLING;
        if beyond_validity {
            tracing::warn!(g, "coupling above {MAX_RELIABLE_COUPLING}: fits are not expected to be reliable");
        }
        let mut entry =
            CouplingExponents { coupling: g, records: Vec::new(), lg_fit: None, t_fit: None, beyond_validity, note: None };
        match sweep_temperature(&problem.with_params(params), betas, t_grid, refine_tol) {
            Ok(records) => entry.records = records,
            Err(e) => {
                tracing::warn!(g, error = %e, "temperature sweep failed");
                entry.note = Some(e.to_string());
                out.push(entry);
                continue;
            }
        }
        let (lg_pts, t_pts) = fit_points(&entry.records);
        if lg_pts.len() < 4 {
            entry.note = Some(format!("{} violating finite-temperature records; 4 needed", lg_pts.len()));
        } else {
            entry.lg_fit = fit_power_law(&lg_pts, None).ok();
            entry.t_fit = fit_power_law(&t_pts, None).ok();
        }
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vtrace::LinearExact;
    use std::f64::consts::PI;

    #[test]
    fn grids() {
        assert_eq!(time_grid(0.0, 0.0, 1.0).unwrap(), vec![0.0]);
        let g = time_grid(0.0, 1.0, 0.25).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(time_grid(0.0, 1.0, 0.0).is_err());
        assert!(time_grid(1.0, 0.0, 0.1).is_err());
        let d = default_time_grid(1.0);
        assert_eq!(d.len(), 801);
        assert!((d[800] - 4.0 * PI).abs() < 1e-12);
        let b = default_beta_grid();
        assert_eq!(b.len(), 24);
        assert!((b[0] - 10.0).abs() < 1e-12 && (b[23] - 0.8).abs() < 1e-12);
        assert!(b.windows(2).all(|w| w[1] < w[0]));
        assert!(log_spaced_betas(0.1, 1.0, 0).unwrap().is_empty());
    }

    #[test]
    fn violation_index_rules() {
        assert_eq!(first_violation_index(&[1.0, 0.5, 0.7]), None);
        assert_eq!(first_violation_index(&[1.0, 0.0, -1.0, -2.0]), None);
        assert_eq!(first_violation_index(&[0.2, -0.1, 0.3, -0.5, 0.0]), Some(1));
        assert_eq!(first_violation_index(&[]), None);
    }

    #[test]
    fn golden_section_quadratic() {
        let (x, fx) = golden_section_min(|x| Ok((x - 0.3).powi(2)), 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-9);
        assert!(fx < 1e-18);
        assert!(golden_section_min(Ok, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let params = ModelParams::default();
        let p = LgProblem::new(CorrelatorMode::Paper, &LinearExact, params);
        assert!(scan(&p, &[]).is_err());
        assert!(scan(&p, &[0.0, 0.0]).is_err());
        assert!(scan(&p, &[1.0, 0.5]).is_err());
        let s = scan(&p, &[0.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.lg_values[0].lg_pm - 0.5).abs() < 1e-15);
    }

    #[test]
    fn linear_zero_temperature_minimum() {
        let params = ModelParams::real(1.0, 0.1, 0.075, f64::INFINITY).unwrap();
        let p = LgProblem::new(CorrelatorMode::Paper, &LinearExact, params);
        let grid = default_time_grid(1.0);
        let series = scan(&p, &grid).unwrap();
        let rec = first_violation_minimum(&p, &series, Some(1e-6)).unwrap().unwrap();
        assert!(rec.refined);
        assert_eq!(rec.temperature, 0.0);
        assert!((rec.t_min - PI).abs() < 0.1);
        let f = |t: f64| crate::linear::lg_closed_form_zero_t(&params, t);
        assert!((rec.lg_min - f(rec.t_min)).abs() < 1e-9);
        assert!(f(rec.t_min - 1e-6) >= rec.lg_min && f(rec.t_min + 1e-6) >= rec.lg_min);
        assert!(rec.lg_min <= f(PI));
    }

    #[test]
    fn fit_exact_power_law() {
        let pts: Vec<(f64, f64)> = (0..12).map(|i| 0.1 + 0.1 * i as f64).map(|x| (x, 2.0 * x.powf(0.7) - 3.0)).collect();
        let fit = fit_power_law(&pts, None).unwrap();
        assert!(fit.converged);
        assert!((fit.a - 2.0).abs() < 1e-8 && (fit.b - 0.7).abs() < 1e-8 && (fit.c + 3.0).abs() < 1e-8);
        assert!(fit.residual_rms < 1e-10);
        assert!(fit_power_law(&pts[..3], None).unwrap_err().is_argument_error());
        assert!(fit_power_law(&[(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0)], None).is_err());
    }

    #[test]
    fn fit_constant_is_degenerate_but_exact() {
        let pts: Vec<(f64, f64)> = (1..9).map(|i| (i as f64 * 0.2, 1.5)).collect();
        let fit = fit_power_law(&pts, None).unwrap();
        assert!(fit.converged);
        assert!(fit.residual_rms < 1e-10);
        assert!(fit.a.abs() < 1e-6 || fit.b.abs() < 1e-6);
    }
}
