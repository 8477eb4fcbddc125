//! Single-model verbs. Each one solves what it needs and writes one or more
//! series through an [`Emitter`].

use anyhow::{bail, Result};
use flicker_core::greens::{
    compute_v_two_time, dissipation_kernel_table, fluctuation_kernel_table, solve_u_spectral, solve_u_volterra,
    GreensSolution, MasterCoefficients, TimeGrid,
};
use flicker_core::noise::{correction_term, fit_power_law, low_freq_asymptote, s_low_freq, NoiseSpectrum};
use flicker_core::wigner::snapshot_series;
use flicker_core::{GridSpec, QuadConfig, ReservoirModel, SuperpositionState, WignerField};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{tag, Emitter};

pub fn model_record(m: &ReservoirModel) -> Value {
    json!({
        "eta": m.eta,
        "s": m.s,
        "x": m.x(),
        "omega_c": m.omega_c,
        "omega0": m.omega0,
        "theta": m.theta,
    })
}

/// Sidecar contents: the full configuration, the unit convention and the
/// parameters specific to this series.
pub fn metadata(cfg: &RunConfig, series: &str, parameters: Value) -> Result<Value> {
    Ok(json!({
        "tool": "flicker",
        "version": env!("CARGO_PKG_VERSION"),
        "series": series,
        "config": cfg,
        "units": cfg.units()?,
        "parameters": parameters,
    }))
}

fn grid_record(g: TimeGrid) -> Value {
    json!({ "t0": g.t0, "dt": g.dt, "n_steps": g.n_steps })
}

fn opt(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

pub fn kernels(cfg: &RunConfig, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let grid = cfg.time_grid(&model)?;
    let quad = cfg.quad()?;
    let g = dissipation_kernel_table(&model, grid.dt, grid.n_steps);
    let gt = fluctuation_kernel_table(&model, grid.dt, grid.n_steps, &quad)?;
    let rows = (0..grid.len()).map(|k| vec![grid.time(k), g[k].re, g[k].im, gt[k].re, gt[k].im]);
    let meta = metadata(cfg, "kernels", json!({ "model": model_record(&model), "grid": grid_record(grid) }))?;
    out.series("kernels", &["t", "g_re", "g_im", "g_tilde_re", "g_tilde_im"], rows, &meta)
}

pub fn propagator(cfg: &RunConfig, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let grid = cfg.time_grid(&model)?;
    let quad = cfg.quad()?;
    let volterra = solve_u_volterra(&model, grid)?;
    let spectral = solve_u_spectral(&model, grid, &quad)?;
    let max_diff = volterra
        .values
        .iter()
        .zip(&spectral)
        .fold(0.0f64, |a, (p, q)| a.max((p - q).norm()));
    let rows = (0..grid.len()).map(|k| {
        let u = volterra.values[k];
        vec![grid.time(k), u.re, u.im, u.norm(), volterra.error_estimate[k], spectral[k].re, spectral[k].im]
    });
    let meta = metadata(
        cfg,
        "propagator",
        json!({
            "model": model_record(&model),
            "grid": grid_record(grid),
            "max_volterra_spectral_difference": max_diff,
        }),
    )?;
    out.series(
        "propagator",
        &["t", "u_re", "u_im", "u_abs", "u_error_estimate", "u_spectral_re", "u_spectral_im"],
        rows,
        &meta,
    )
}

/// `v(t)`; with `at = Some(t)` also `v(t, t + τ)` for `τ ∈ [0, horizon − t]`.
pub fn correlation(cfg: &RunConfig, at: Option<f64>, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let grid = cfg.time_grid(&model)?;
    let quad = cfg.quad()?;
    let sol = GreensSolution::solve(&model, grid, &quad)?;
    let meta = metadata(cfg, "correlation", json!({ "model": model_record(&model), "grid": grid_record(grid) }))?;
    let rows = (0..grid.len()).map(|k| vec![grid.time(k), sol.v[k]]);
    out.series("correlation", &["t", "v"], rows, &meta)?;
    if let Some(t) = at {
        let Some(start) = grid.index_of(t) else {
            bail!("--at {t} is not a grid time");
        };
        let lags: Vec<isize> = (0..=(grid.n_steps - start) as isize).collect();
        let c = compute_v_two_time(&model, &sol.u, grid, start, &lags, &quad)?;
        let rows = lags.iter().zip(&c).map(|(&l, z)| vec![l as f64 * grid.dt, z.re, z.im]);
        let meta = metadata(
            cfg,
            "correlation_two_time",
            json!({ "model": model_record(&model), "grid": grid_record(grid), "t": t }),
        )?;
        out.series("correlation_two_time", &["tau", "v_re", "v_im"], rows, &meta)?;
    }
    Ok(())
}

pub fn coefficient_rows(sol: &GreensSolution, c: &MasterCoefficients) -> Vec<Vec<f64>> {
    (0..sol.grid.len())
        .map(|k| {
            vec![
                sol.grid.time(k),
                sol.u[k].norm(),
                sol.v[k],
                opt(c.omega0_prime[k]),
                opt(c.gamma[k]),
                opt(c.gamma_tilde[k]),
            ]
        })
        .collect()
}

pub const COEFFICIENT_HEADER: [&str; 6] = ["t", "u_abs", "v", "omega0_prime", "gamma", "gamma_tilde"];

pub fn coefficients(cfg: &RunConfig, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let grid = cfg.time_grid(&model)?;
    let sol = GreensSolution::solve(&model, grid, &cfg.quad()?)?;
    let c = sol.coefficients()?;
    let meta = metadata(
        cfg,
        "coefficients",
        json!({
            "model": model_record(&model),
            "grid": grid_record(grid),
            "undefined_marker": "NaN where |u| is below the division floor",
        }),
    )?;
    out.series("coefficients", &COEFFICIENT_HEADER, coefficient_rows(&sol, &c), &meta)
}

pub const NOISE_HEADER: [&str; 7] = ["omega", "s", "s1", "s2", "s_low_freq", "low_freq_asymptote", "correction"];

/// Spectrum rows and the sidecar parameters (localized mode, fitted exponent).
pub fn noise_table(model: &ReservoirModel, omegas: &[f64], n0: f64, quad: &QuadConfig) -> Result<(Vec<Vec<f64>>, Value)> {
    let spectrum = NoiseSpectrum::new(model, quad)?;
    let series = spectrum.series(omegas, n0)?;
    let mut rows = Vec::with_capacity(omegas.len());
    for (i, &w) in omegas.iter().enumerate() {
        rows.push(vec![
            w,
            series.values[i],
            series.s1_values[i],
            series.s2_values[i],
            s_low_freq(model, w),
            low_freq_asymptote(model, w),
            correction_term(model, w, quad)?,
        ]);
    }
    let fit = fit_power_law(&series, [omegas[0], omegas[omegas.len() - 1]]).ok();
    let params = json!({
        "model": model_record(model),
        "initial_occupation": n0,
        "delta_weight": series.delta_weight,
        "delta_location": series.delta_location,
        "fitted_exponent": fit.map(|f| f.exponent),
        "fit_r_squared": fit.map(|f| f.r_squared),
    });
    Ok((rows, params))
}

pub fn noise(cfg: &RunConfig, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let (rows, params) = noise_table(&model, &cfg.omegas()?, cfg.spectrum.initial_occupation, &cfg.quad()?)?;
    let meta = metadata(cfg, "noise", params)?;
    out.series("noise", &NOISE_HEADER, rows, &meta)
}

/// Fields at each of `times` for `state`, from a run long enough to cover them.
pub fn wigner_fields(
    model: &ReservoirModel,
    dt: Option<f64>,
    state: SuperpositionState,
    times: &[f64],
    grid: &GridSpec,
    quad: &QuadConfig,
) -> Result<Vec<WignerField>> {
    let last = times.iter().cloned().fold(0.0, f64::max);
    if times.iter().any(|t| !(*t >= 0.0)) {
        bail!("snapshot times must be nonnegative");
    }
    let dt = dt.unwrap_or_else(|| TimeGrid::default_dt(model));
    let tgrid = TimeGrid::with_horizon(0.0, dt, last.max(2.0 * dt))?;
    let sol = GreensSolution::solve(model, tgrid, quad)?;
    Ok(snapshot_series(state, &sol, times, grid)?)
}

pub fn emit_field(out: &mut Emitter, name: &str, field: &WignerField, meta: &Value) -> Result<()> {
    let ny = field.im_grid.len();
    let rows = field
        .re_grid
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| field.im_grid.iter().enumerate().map(move |(j, &y)| (i, j, x, y)))
        .map(|(i, j, x, y)| vec![x, y, field.values[i * ny + j]]);
    out.series(name, &["x", "y", "w"], rows, meta)
}

pub fn field_record(field: &WignerField) -> Value {
    json!({
        "time": field.time,
        "state": field.state_label,
        "half_width": field.re_grid.last(),
        "points": field.re_grid.len(),
        "normalization": field.normalization(),
        "max_abs": field.max_abs(),
    })
}

pub fn wigner(cfg: &RunConfig, out: &mut Emitter) -> Result<()> {
    let model = cfg.model()?;
    let state = cfg.state()?;
    let fields = wigner_fields(&model, cfg.grid.dt, state, &cfg.wigner.times, &cfg.wigner_grid()?, &cfg.quad()?)?;
    for field in &fields {
        let meta = metadata(
            cfg,
            "wigner",
            json!({ "model": model_record(&model), "field": field_record(field) }),
        )?;
        let name = format!("wigner_n{}_m{}_t{}", state.n, state.m, tag(field.time));
        emit_field(out, &name, field, &meta)?;
    }
    Ok(())
}
