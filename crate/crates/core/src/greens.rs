//! Nonequilibrium Green's functions of the damped resonator.
//!
//! * `u(t)` solves `u̇ + iω₀u + ∫_{t₀}^t g(t−τ) u(τ) dτ = 0`, `u(t₀) = 1`,
//!   either by marching the Volterra equation in time or from its exact
//!   spectral representation (localized mode + branch-cut integral).
//! * `v(t) = ∫∫ g̃(τ−τ') u*(τ) u(τ') dτ dτ'` over `[t₀, t]²`.
//! * The master-equation coefficients follow from `u̇/u` and `v̇`.
//!
//! Because the kernels depend on time differences only, the two-argument
//! propagator `u(t, τ)` equals `u(t − τ)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{composite_gauss_legendre, QuadConfig};
use crate::spectral::{
    find_localized_mode, kernel_g, kernel_g_tilde, quasi_particle_peak, self_energy_shift, LocalizedMode,
    ReservoirModel,
};
#[allow(unused_imports)]
use num_traits::Float;

/// `|u|` may exceed one by at most this much before the march is declared unstable.
pub const INSTABILITY_MARGIN: f64 = 1e-6;
/// Samples with `|u|` below this floor get no master-equation coefficients.
pub const DIVISION_FLOOR: f64 = 1e-9;
/// Largest tolerated imaginary residue of `v`, relative to `max(1, v)`.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-8;

/// Uniform time grid `t_k = t0 + k·dt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub dt: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter("dt must be > 0"));
        }
        if n_steps < 2 {
            return Err(Error::InvalidParameter("n_steps must be >= 2"));
        }
        if !t0.is_finite() {
            return Err(Error::InvalidParameter("t0 must be finite"));
        }
        Ok(Self { t0, dt, n_steps })
    }

    /// Grid from `t0` to `t0 + horizon`, rounding the step count to the nearest integer.
    pub fn with_horizon(t0: f64, dt: f64, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::InvalidParameter("horizon must be > 0"));
        }
        Self::new(t0, dt, (horizon / dt).round() as usize)
    }

    /// Default step for a model: `10⁻³/ω₀` when `s ≤ 0.25`, `5·10⁻³/ω₀` otherwise.
    pub fn default_dt(model: &ReservoirModel) -> f64 {
        if model.s <= 0.25 {
            1e-3 / model.omega0
        } else {
            5e-3 / model.omega0
        }
    }

    pub fn default_for(model: &ReservoirModel, horizon: f64) -> Result<Self> {
        Self::with_horizon(0.0, Self::default_dt(model), horizon)
    }

    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn end(&self) -> f64 {
        self.time(self.n_steps)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.time(k)).collect()
    }

    /// Index of the grid point closest to `t`, if `t` lies on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let k = ((t - self.t0) / self.dt).round();
        if k < 0.0 || k > self.n_steps as f64 {
            return None;
        }
        let k = k as usize;
        ((self.time(k) - t).abs() <= 1e-9 * self.dt.max(t.abs())).then_some(k)
    }
}

/// `u` and `v` sampled on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensSolution {
    pub grid: TimeGrid,
    pub u: Vec<Complex64>,
    pub v: Vec<f64>,
    /// Step-halving error estimate of `u`, per sample.
    pub u_error: Vec<f64>,
}

impl GreensSolution {
    /// Volterra march for `u` followed by the double sum for `v`.
    pub fn solve(model: &ReservoirModel, grid: TimeGrid, cfg: &QuadConfig) -> Result<Self> {
        let prop = solve_u_volterra(model, grid)?;
        let v = compute_v(model, &prop.values, grid, cfg)?;
        Ok(Self {
            grid,
            u: prop.values,
            v,
            u_error: prop.error_estimate,
        })
    }

    /// Linear interpolation of `(u, v)` at `t`.
    pub fn at(&self, t: f64) -> Result<(Complex64, f64)> {
        let (start, end) = (self.grid.t0, self.grid.end());
        if !(t >= start - 1e-12 && t <= end + 1e-12) {
            return Err(Error::OutOfRange { time: t, start, end });
        }
        let x = ((t - start) / self.grid.dt).clamp(0.0, self.grid.n_steps as f64);
        let k = (x.floor() as usize).min(self.grid.n_steps - 1);
        let f = x - k as f64;
        let u = self.u[k] * (1.0 - f) + self.u[k + 1] * f;
        let v = self.v[k] * (1.0 - f) + self.v[k + 1] * f;
        Ok((u, v))
    }

    pub fn coefficients(&self) -> Result<MasterCoefficients> {
        master_coefficients(&self.u, &self.v, self.grid)
    }
}

/// Output of the Volterra march.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    pub values: Vec<Complex64>,
    /// `|u_dt − u_2dt| / 3` at even samples, neighbour maximum at odd ones.
    pub error_estimate: Vec<f64>,
}

impl Propagator {
    pub fn max_error(&self) -> f64 {
        self.error_estimate.iter().fold(0.0, |a, &b| a.max(b))
    }
}

/// `g(k·dt)` for `k = 0..=n`.
pub fn dissipation_kernel_table(model: &ReservoirModel, dt: f64, n: usize) -> Vec<Complex64> {
    (0..=n).map(|k| kernel_g(model, k as f64 * dt)).collect()
}

/// `g̃(k·dt)` for `k = 0..=n`.
pub fn fluctuation_kernel_table(model: &ReservoirModel, dt: f64, n: usize, cfg: &QuadConfig) -> Result<Vec<Complex64>> {
    (0..=n).map(|k| kernel_g_tilde(model, k as f64 * dt, cfg)).collect()
}

/// Trapezoidal product-integration of the Dyson equation.
///
/// Works in the rotating frame `w(t) = e^{iω₀(t−t₀)} u(t)`, which obeys
/// `ẇ = −∫ K(t−τ) w(τ) dτ` with `K(τ) = g(τ) e^{iω₀τ}`. Each step is the
/// trapezoidal corrector for `w`; since the equation is linear, the implicit
/// corrector is solved in closed form rather than iterated. The step-halving
/// estimate compares against the same march at `2·dt`.
pub fn solve_u_volterra(model: &ReservoirModel, grid: TimeGrid) -> Result<Propagator> {
    let fine = volterra_march(model, grid.dt, grid.n_steps)?;
    let coarse = volterra_march(model, 2.0 * grid.dt, grid.n_steps / 2)?;
    let mut err = vec![0.0; grid.len()];
    for (j, c) in coarse.iter().enumerate() {
        err[2 * j] = (fine[2 * j] - c).norm() / 3.0;
    }
    for k in (1..grid.len()).step_by(2) {
        let right = if k + 1 < grid.len() { err[k + 1] } else { err[k - 1] };
        err[k] = err[k - 1].max(right);
    }
    let values = fine
        .iter()
        .enumerate()
        .map(|(k, w)| w * Complex64::from_polar(1.0, -model.omega0 * k as f64 * grid.dt))
        .collect();
    Ok(Propagator {
        values,
        error_estimate: err,
    })
}

/// Rotating-frame amplitudes `w_k`, `k = 0..=n`.
fn volterra_march(model: &ReservoirModel, dt: f64, n: usize) -> Result<Vec<Complex64>> {
    let kernel: Vec<Complex64> = (0..=n)
        .map(|k| {
            let t = k as f64 * dt;
            kernel_g(model, t) * Complex64::from_polar(1.0, model.omega0 * t)
        })
        .collect();
    let mut w = Vec::with_capacity(n + 1);
    w.push(Complex64::new(1.0, 0.0));
    let denom = Complex64::new(1.0, 0.0) + kernel[0] * (0.25 * dt * dt);
    let mut f_prev = Complex64::new(0.0, 0.0);
    for step in 0..n {
        let next = step + 1;
        let mut s = kernel[next] * w[0] * 0.5;
        for j in 1..next {
            s += kernel[next - j] * w[j];
        }
        let w_next = (w[step] + f_prev * (0.5 * dt) - s * (0.5 * dt * dt)) / denom;
        if w_next.norm() > 1.0 + INSTABILITY_MARGIN || !w_next.is_finite() {
            return Err(Error::Instability {
                step: next,
                magnitude: w_next.norm(),
            });
        }
        f_prev = -(s + kernel[0] * w_next * 0.5) * dt;
        w.push(w_next);
    }
    Ok(w)
}

/// Exact spectral representation of `u(t)`:
/// `𝒵 e^{−iω_b t} + ∫₀^∞ ρ(ω) e^{−iωt} dω` with
/// `ρ(ω) = (1/π) γ(ω) / ([ω − ω₀ − Δ(ω)]² + γ²(ω))`.
///
/// The branch-cut integral is discretized once on composite Gauss–Legendre
/// panels that are graded geometrically towards `ω = 0` and around the
/// quasi-particle peak.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRepresentation {
    pub mode: LocalizedMode,
    /// Position and half-width of the quasi-particle peak.
    pub peak: f64,
    pub width: f64,
    free_frequency: Option<f64>,
    nodes: Vec<(f64, f64)>,
}

const PANEL_ORDER: usize = 24;

impl SpectralRepresentation {
    /// `max_time` bounds `|t − t₀|` at which the representation will be
    /// evaluated; it sets the panel width so that `e^{−iωt}` stays resolved.
    pub fn build(model: &ReservoirModel, max_time: f64, cfg: &QuadConfig) -> Result<Self> {
        if model.eta == 0.0 {
            return Ok(Self {
                mode: LocalizedMode::none(),
                peak: model.omega0,
                width: 0.0,
                free_frequency: Some(model.omega0),
                nodes: Vec::new(),
            });
        }
        let mode = find_localized_mode(model, cfg)?;
        let peak = quasi_particle_peak(model, cfg)?;
        let width = model.gamma_of(peak).max(1e-12 * model.omega0);

        let scale = model.omega0.min(model.omega_c);
        let hi = model.omega_c * crate::spectral::CUTOFF_MULTIPLE;
        let mut breaks = Vec::new();
        let mut w = 1e-14 * scale;
        while w < 0.05 * scale {
            breaks.push(w);
            w *= 4.0;
        }
        let step = (0.1 * scale).min(2.0 / max_time.max(1.0));
        let dense_end = (20.0 * model.omega_c).max(peak + 20.0 * width).min(hi);
        let mut w = 0.05 * scale;
        while w < dense_end {
            breaks.push(w);
            w += step;
        }
        breaks.extend([dense_end, 30.0 * model.omega_c, 40.0 * model.omega_c, hi]);
        for k in -4..60 {
            let d = width * 2f64.powi(k);
            if d > hi {
                break;
            }
            breaks.push(peak - d);
            breaks.push(peak + d);
        }
        breaks.push(peak);
        breaks.retain(|&b| b > 0.0 && b <= hi);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * b.abs());

        let mut nodes = Vec::with_capacity(breaks.len() * PANEL_ORDER);
        for (w, weight) in composite_gauss_legendre(&breaks, PANEL_ORDER) {
            let gamma = model.gamma_of(w);
            let detune = w - model.omega0 - self_energy_shift(model, w, cfg)?;
            let rho = gamma / (PI * (detune * detune + gamma * gamma));
            nodes.push((w, weight * rho));
        }
        Ok(Self {
            mode,
            peak,
            width,
            free_frequency: None,
            nodes,
        })
    }

    /// Weight of the branch-cut part, `∫ρ dω`.
    pub fn continuum_weight(&self) -> f64 {
        if self.free_frequency.is_some() {
            return 1.0;
        }
        self.nodes.iter().map(|(_, w)| w).sum()
    }

    /// `𝒵 + ∫ρ dω`, which equals `u(t₀) = 1` for an exact representation.
    pub fn sum_rule(&self) -> f64 {
        if self.free_frequency.is_some() {
            return 1.0;
        }
        self.mode.residue_z + self.continuum_weight()
    }

    /// `u(t₀ + k·dt)` for every point of `grid`.
    pub fn evaluate(&self, grid: TimeGrid) -> Vec<Complex64> {
        let n = grid.len();
        if let Some(w0) = self.free_frequency {
            return (0..n)
                .map(|k| Complex64::from_polar(1.0, -w0 * k as f64 * grid.dt))
                .collect();
        }
        let steps: Vec<Complex64> = self
            .nodes
            .iter()
            .map(|&(w, _)| Complex64::from_polar(1.0, -w * grid.dt))
            .collect();
        let mut phases: Vec<Complex64> = self.nodes.iter().map(|&(_, a)| Complex64::new(a, 0.0)).collect();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                if k % 256 == 0 {
                    let t = k as f64 * grid.dt;
                    for (p, &(w, a)) in phases.iter_mut().zip(&self.nodes) {
                        *p = Complex64::from_polar(a, -w * t);
                    }
                } else {
                    for (p, s) in phases.iter_mut().zip(&steps) {
                        *p *= s;
                    }
                }
            }
            let mut sum = Complex64::new(0.0, 0.0);
            for p in &phases {
                sum += p;
            }
            if self.mode.exists && self.mode.residue_z > 0.0 {
                sum += Complex64::from_polar(self.mode.residue_z, -self.mode.omega_b * k as f64 * grid.dt);
            }
            out.push(sum);
        }
        out
    }
}

/// `u(t)` on `grid` from the exact spectral representation.
pub fn solve_u_spectral(model: &ReservoirModel, grid: TimeGrid, cfg: &QuadConfig) -> Result<Vec<Complex64>> {
    let rep = SpectralRepresentation::build(model, grid.end() - grid.t0, cfg)?;
    Ok(rep.evaluate(grid))
}

/// `v(t_k)` for every sample of `u`.
pub fn compute_v(model: &ReservoirModel, u: &[Complex64], grid: TimeGrid, cfg: &QuadConfig) -> Result<Vec<f64>> {
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch(u.len(), grid.len()));
    }
    let table = fluctuation_kernel_table(model, grid.dt, grid.n_steps, cfg)?;
    compute_v_with_kernel(&table, u, grid.dt)
}

/// Incremental trapezoidal evaluation of the double integral for `v`.
///
/// `table[k] = g̃(k·dt)`; negative lags use `g̃(−t) = g̃(t)*`. The uniform
/// quadratic form `P_k = Σ_{i,j≤k} u_i* G_{i−j} u_j` is extended one row and
/// column per step (`O(k)` work, real by Hermitian symmetry) and the
/// trapezoidal end-point weights are applied as a rank-two correction.
pub fn compute_v_with_kernel(table: &[Complex64], u: &[Complex64], dt: f64) -> Result<Vec<f64>> {
    if table.len() < u.len() {
        return Err(Error::LengthMismatch(table.len(), u.len()));
    }
    let g0 = table[0];
    let mut v = Vec::with_capacity(u.len());
    let mut quad_form = 0.0;
    let mut row0 = Complex64::new(0.0, 0.0);
    let mut norm_sq = 0.0;
    for k in 0..u.len() {
        let pk = u[k];
        let mut cross = Complex64::new(0.0, 0.0);
        for j in 0..k {
            cross += table[k - j] * u[j];
        }
        quad_form += 2.0 * (pk.conj() * cross).re + g0.re * pk.norm_sqr();
        row0 += table[k].conj() * pk;
        norm_sq += pk.norm_sqr();
        if k == 0 {
            v.push(0.0);
            continue;
        }
        let rowk = cross + g0 * pk;
        let p0 = u[0];
        let value = quad_form - (p0.conj() * row0).re - (pk.conj() * rowk).re
            + 0.25 * g0.re * (p0.norm_sqr() + pk.norm_sqr())
            + 0.5 * (p0.conj() * table[k].conj() * pk).re;
        let value = value * dt * dt;
        let residue = g0.im.abs() * norm_sq * dt * dt;
        if residue > IMAGINARY_RESIDUE_LIMIT * value.abs().max(1.0) {
            return Err(Error::ImaginaryResidue { step: k, residue });
        }
        v.push(value);
    }
    Ok(v)
}

/// Two-time correlation `v(t, t+τ)` for `t = t_{t_index}` and
/// `τ = l·dt` for each `l` in `tau_steps`.
pub fn compute_v_two_time(
    model: &ReservoirModel,
    u: &[Complex64],
    grid: TimeGrid,
    t_index: usize,
    tau_steps: &[isize],
    cfg: &QuadConfig,
) -> Result<Vec<Complex64>> {
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch(u.len(), grid.len()));
    }
    let table = fluctuation_kernel_table(model, grid.dt, grid.n_steps, cfg)?;
    compute_v_two_time_with_kernel(&table, u, grid, t_index, tau_steps)
}

/// Same as [`compute_v_two_time`] with a precomputed `g̃` table.
///
/// `v(t, t+τ) = ∫₀^t dτ₁ ∫₀^{t+τ} dτ₂ u(t−τ₁) g̃(τ₁−τ₂) u*(t+τ−τ₂)`. The inner
/// sum over `τ₁` is independent of `τ` and is evaluated once.
pub fn compute_v_two_time_with_kernel(
    table: &[Complex64],
    u: &[Complex64],
    grid: TimeGrid,
    t_index: usize,
    tau_steps: &[isize],
) -> Result<Vec<Complex64>> {
    let n = grid.n_steps;
    let m = t_index;
    let out_of_range = |k: isize| Error::OutOfRange {
        time: grid.t0 + k as f64 * grid.dt,
        start: grid.t0,
        end: grid.end(),
    };
    if m > n {
        return Err(out_of_range(m as isize));
    }
    let mut reach = m;
    for &l in tau_steps {
        let end = m as isize + l;
        if end < 0 || end > n as isize {
            return Err(out_of_range(end));
        }
        reach = reach.max(end as usize);
    }
    let lag = |d: isize| -> Complex64 {
        if d >= 0 {
            table[d as usize]
        } else {
            table[(-d) as usize].conj()
        }
    };
    let weight = |i: usize, upper: usize| if i == 0 || i == upper { 0.5 } else { 1.0 };

    let mut inner = vec![Complex64::new(0.0, 0.0); reach + 1];
    if m > 0 {
        for (j, slot) in inner.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=m {
                acc += lag(i as isize - j as isize) * u[m - i] * weight(i, m);
            }
            *slot = acc;
        }
    }
    let dt2 = grid.dt * grid.dt;
    Ok(tau_steps
        .iter()
        .map(|&l| {
            let upper = (m as isize + l) as usize;
            if m == 0 || upper == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=upper {
                acc += inner[j] * u[upper - j].conj() * weight(j, upper);
            }
            acc * dt2
        })
        .collect())
}

/// Time-dependent coefficients of the exact master equation.
#[derive(Debug, Clone, PartialEq)]
pub struct MasterCoefficients {
    pub grid: TimeGrid,
    /// Renormalized frequency `ω₀'(t) = −Im[u̇/u]`.
    pub omega0_prime: Vec<Option<f64>>,
    /// Dissipation `γ(t) = −Re[u̇/u]`.
    pub gamma: Vec<Option<f64>>,
    /// Fluctuation `γ̃(t) = v̇ − 2v Re[u̇/u]`.
    pub gamma_tilde: Vec<Option<f64>>,
}

impl MasterCoefficients {
    /// Linear interpolation of `(ω₀', γ, γ̃)` at `t`.
    pub fn at(&self, t: f64) -> Result<(f64, f64, f64)> {
        let g = self.grid;
        if !(t >= g.t0 - 1e-12 && t <= g.end() + 1e-12) {
            return Err(Error::OutOfRange {
                time: t,
                start: g.t0,
                end: g.end(),
            });
        }
        let x = ((t - g.t0) / g.dt).clamp(0.0, g.n_steps as f64);
        let k = (x.floor() as usize).min(g.n_steps - 1);
        let f = x - k as f64;
        let pick = |series: &[Option<f64>], idx: usize| series[idx].ok_or(Error::UndefinedCoefficient(idx));
        let lerp = |series: &[Option<f64>]| -> Result<f64> {
            Ok(pick(series, k)? * (1.0 - f) + pick(series, k + 1)? * f)
        };
        Ok((lerp(&self.omega0_prime)?, lerp(&self.gamma)?, lerp(&self.gamma_tilde)?))
    }
}

fn derivative<T>(y: &[T], dt: f64) -> Vec<T>
where
    T: Copy + core::ops::Sub<Output = T> + core::ops::Add<Output = T> + core::ops::Mul<f64, Output = T>,
{
    let n = y.len();
    if n < 5 {
        return derivative_second_order(y, dt);
    }
    let h = 1.0 / (12.0 * dt);
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        let val = match k {
            0 => y[0] * -25.0 + y[1] * 48.0 - y[2] * 36.0 + y[3] * 16.0 - y[4] * 3.0,
            1 => y[0] * -3.0 - y[1] * 10.0 + y[2] * 18.0 - y[3] * 6.0 + y[4],
            k if k == n - 2 => y[n - 1] * 3.0 + y[n - 2] * 10.0 - y[n - 3] * 18.0 + y[n - 4] * 6.0 - y[n - 5],
            k if k == n - 1 => {
                y[n - 1] * 25.0 - y[n - 2] * 48.0 + y[n - 3] * 36.0 - y[n - 4] * 16.0 + y[n - 5] * 3.0
            }
            k => (y[k + 1] - y[k - 1]) * 8.0 - y[k + 2] + y[k - 2],
        };
        d.push(val * h);
    }
    d
}

fn derivative_second_order<T>(y: &[T], dt: f64) -> Vec<T>
where
    T: Copy + core::ops::Sub<Output = T> + core::ops::Add<Output = T> + core::ops::Mul<f64, Output = T>,
{
    let n = y.len();
    (0..n)
        .map(|k| {
            let val = if k == 0 {
                y[1] * 4.0 - y[0] * 3.0 - y[2]
            } else if k == n - 1 {
                y[n - 1] * 3.0 - y[n - 2] * 4.0 + y[n - 3]
            } else {
                y[k + 1] - y[k - 1]
            };
            val * (0.5 / dt)
        })
        .collect()
}

/// Coefficients from sampled `u` and `v`. Derivatives are fourth-order
/// finite differences, one-sided near the ends.
pub fn master_coefficients(u: &[Complex64], v: &[f64], grid: TimeGrid) -> Result<MasterCoefficients> {
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch(u.len(), grid.len()));
    }
    if v.len() != grid.len() {
        return Err(Error::LengthMismatch(v.len(), grid.len()));
    }
    let du = derivative(u, grid.dt);
    let dv = derivative(v, grid.dt);
    let mut omega0_prime = Vec::with_capacity(u.len());
    let mut gamma = Vec::with_capacity(u.len());
    let mut gamma_tilde = Vec::with_capacity(u.len());
    for k in 0..u.len() {
        if u[k].norm() < DIVISION_FLOOR {
            omega0_prime.push(None);
            gamma.push(None);
            gamma_tilde.push(None);
            continue;
        }
        let ratio = du[k] / u[k];
        omega0_prime.push(Some(-ratio.im));
        gamma.push(Some(-ratio.re));
        gamma_tilde.push(Some(dv[k] - 2.0 * v[k] * ratio.re));
    }
    Ok(MasterCoefficients {
        grid,
        omega0_prime,
        gamma,
        gamma_tilde,
    })
}
