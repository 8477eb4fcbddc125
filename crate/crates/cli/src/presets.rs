//! The figure catalog. Each preset fixes the physical parameters of one
//! figure; grid, tolerance and Wigner-grid settings still come from the
//! run configuration.

use anyhow::Result;
use clap::ValueEnum;
use flicker_core::greens::GreensSolution;
use flicker_core::noise::{log_space, validity_map};
use flicker_core::SuperpositionState;
use rayon::prelude::*;
use serde_json::json;

use crate::commands::{
    coefficient_rows, emit_field, field_record, metadata, model_record, noise_table, wigner_fields, COEFFICIENT_HEADER,
    NOISE_HEADER,
};
use crate::config::RunConfig;
use crate::output::{tag, Emitter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetId {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
    Fig4Temps,
    Fig5Wigner,
}

pub const XS: [f64; 4] = [0.25, 0.5, 0.75, 0.9999];
pub const ETAS: [f64; 2] = [1e-3, 1e-2];
/// Resonator frequency (rad/s) of the 25 mK presets.
pub const OMEGA0_FAST: f64 = 5e9;
/// Resonator frequency (rad/s) of the temperature sweep and the Wigner snapshots.
pub const OMEGA0_SLOW: f64 = 1e9;
pub const TEMPERATURES_K: [f64; 3] = [0.025, 1.0, 2.5];

/// `base` with the model replaced; temperature given in kelvin.
pub fn with_model(base: &RunConfig, eta: f64, x: f64, kelvin: f64, omega0_rad_per_s: f64) -> RunConfig {
    let mut cfg = base.clone();
    cfg.model.eta = eta;
    cfg.model.x = x;
    cfg.model.theta = None;
    cfg.model.temperature_k = Some(kelvin);
    cfg.model.omega0_rad_per_s = Some(omega0_rad_per_s);
    cfg
}

pub fn run_preset(id: PresetId, base: &RunConfig, out: &mut Emitter) -> Result<()> {
    match id {
        PresetId::Fig1a => fig1a(base, out),
        PresetId::Fig1b => fig1b(base, out),
        PresetId::Fig2 => time_series(base, out, "fig2"),
        PresetId::Fig3 => time_series(base, out, "fig3"),
        PresetId::Fig4Temps => fig4(base, out),
        PresetId::Fig5Wigner => fig5(base, out),
    }
}

fn fig1a(base: &RunConfig, out: &mut Emitter) -> Result<()> {
    let cfg = with_model(base, 1e-3, base.model.x, 0.025, OMEGA0_FAST);
    let model = cfg.model()?;
    let quad = cfg.quad()?;
    let etas = log_space(1e-5, 1.0, 41);
    let omegas = log_space(1e-5, 1e-1, 41);
    let rows: Vec<Vec<Vec<f64>>> = etas
        .par_iter()
        .map(|&eta| {
            let map = validity_map(&model, &[eta], &omegas, &quad)?;
            Ok(omegas.iter().zip(&map.values[0]).map(|(&w, &c)| vec![eta, w, c, c.abs()]).collect())
        })
        .collect::<Result<_>>()?;
    let meta = metadata(
        &cfg,
        "validity map 2*xi*zeta",
        json!({ "model": model_record(&model), "etas": etas, "omegas": omegas }),
    )?;
    out.series("fig1a", &["eta", "omega", "correction", "abs_correction"], rows.into_iter().flatten(), &meta)
}

fn fig1b(base: &RunConfig, out: &mut Emitter) -> Result<()> {
    let omegas = base.omegas()?;
    let tables = XS
        .par_iter()
        .map(|&x| {
            let cfg = with_model(base, 1e-3, x, 0.025, OMEGA0_FAST);
            let (rows, params) = noise_table(&cfg.model()?, &omegas, cfg.spectrum.initial_occupation, &cfg.quad()?)?;
            Ok((cfg, rows, params))
        })
        .collect::<Result<Vec<_>>>()?;
    for (x, (cfg, rows, params)) in XS.iter().zip(tables) {
        let meta = metadata(&cfg, "noise spectrum", params)?;
        out.series(&format!("fig1b_x{}", tag(*x)), &NOISE_HEADER, rows, &meta)?;
    }
    Ok(())
}

/// `fig2`: `|u|` and `v`; `fig3`: master-equation coefficients. Eight (η, x) runs each.
fn time_series(base: &RunConfig, out: &mut Emitter, name: &str) -> Result<()> {
    let runs: Vec<(f64, f64)> = ETAS.iter().flat_map(|&e| XS.iter().map(move |&x| (e, x))).collect();
    let solved = runs
        .par_iter()
        .map(|&(eta, x)| {
            let cfg = with_model(base, eta, x, 0.025, OMEGA0_FAST);
            let model = cfg.model()?;
            let sol = GreensSolution::solve(&model, cfg.time_grid(&model)?, &cfg.quad()?)?;
            Ok((cfg, model, sol))
        })
        .collect::<Result<Vec<_>>>()?;
    for ((eta, x), (cfg, model, sol)) in runs.iter().zip(solved) {
        let file = format!("{name}_eta{}_x{}", tag(*eta), tag(*x));
        let params = json!({ "model": model_record(&model), "dt": sol.grid.dt, "n_steps": sol.grid.n_steps });
        if name == "fig2" {
            let rows = (0..sol.grid.len()).map(|k| {
                let u = sol.u[k];
                vec![sol.grid.time(k), u.norm(), u.re, u.im, sol.v[k]]
            });
            let meta = metadata(&cfg, "propagator and correlation", params)?;
            out.series(&file, &["t", "u_abs", "u_re", "u_im", "v"], rows, &meta)?;
        } else {
            let c = sol.coefficients()?;
            let meta = metadata(&cfg, "master-equation coefficients", params)?;
            out.series(&file, &COEFFICIENT_HEADER, coefficient_rows(&sol, &c), &meta)?;
        }
    }
    Ok(())
}

fn fig4(base: &RunConfig, out: &mut Emitter) -> Result<()> {
    let runs: Vec<(f64, f64)> = XS.iter().flat_map(|&x| TEMPERATURES_K.iter().map(move |&t| (x, t))).collect();
    let solved = runs
        .par_iter()
        .map(|&(x, kelvin)| {
            let cfg = with_model(base, 1e-3, x, kelvin, OMEGA0_SLOW);
            let model = cfg.model()?;
            let sol = GreensSolution::solve(&model, cfg.time_grid(&model)?, &cfg.quad()?)?;
            let c = sol.coefficients()?;
            Ok((cfg, model, coefficient_rows(&sol, &c), sol.grid))
        })
        .collect::<Result<Vec<_>>>()?;
    for ((x, kelvin), (cfg, model, rows, grid)) in runs.iter().zip(solved) {
        let params = json!({ "model": model_record(&model), "dt": grid.dt, "n_steps": grid.n_steps });
        let meta = metadata(&cfg, "temperature sweep", params)?;
        out.series(&format!("fig4_x{}_T{}K", tag(*x), tag(*kelvin)), &COEFFICIENT_HEADER, rows, &meta)?;
    }
    Ok(())
}

fn fig5(base: &RunConfig, out: &mut Emitter) -> Result<()> {
    let states = [SuperpositionState::new(0, 3)?, SuperpositionState::new(2, 3)?];
    let runs: Vec<(f64, SuperpositionState)> =
        [0.25, 0.9999].iter().flat_map(|&x| states.iter().map(move |&s| (x, s))).collect();
    let grid = base.wigner_grid()?;
    let solved = runs
        .par_iter()
        .map(|&(x, state)| {
            let cfg = with_model(base, 1e-3, x, 2.5, OMEGA0_SLOW);
            let model = cfg.model()?;
            let fields = wigner_fields(&model, cfg.grid.dt, state, &base.wigner.times, &grid, &cfg.quad()?)?;
            Ok((cfg, model, fields))
        })
        .collect::<Result<Vec<_>>>()?;
    for ((x, state), (cfg, model, fields)) in runs.iter().zip(solved) {
        for field in &fields {
            let meta = metadata(
                &cfg,
                "wigner snapshot",
                json!({ "model": model_record(&model), "field": field_record(field) }),
            )?;
            let name = format!("fig5_x{}_n{}_m{}_t{}", tag(*x), state.n, state.m, tag(field.time));
            emit_field(out, &name, field, &meta)?;
        }
    }
    Ok(())
}
