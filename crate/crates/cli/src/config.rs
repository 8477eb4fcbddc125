//! Run configuration: a TOML file plus command-line overrides (flags win).

use std::path::Path;

use anyhow::{bail, Context, Result};
use flicker_core::greens::TimeGrid;
use flicker_core::units::{theta_from_kelvin, BOLTZMANN, HBAR};
use flicker_core::{GridSpec, QuadConfig, ReservoirModel, SuperpositionState};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub grid: GridConfig,
    pub spectrum: SpectrumConfig,
    pub wigner: WignerConfig,
    pub tolerance: ToleranceConfig,
}

/// Temperature is given either as `theta` or as `temperature_k` together
/// with `omega0_rad_per_s`. When both are present `theta` wins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub eta: f64,
    pub x: f64,
    /// `ω_c / ω₀`.
    pub omega_c_ratio: f64,
    pub theta: Option<f64>,
    pub temperature_k: Option<f64>,
    pub omega0_rad_per_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Time step in `1/ω₀`; the model's default when absent.
    pub dt: Option<f64>,
    pub horizon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    /// `⟨a†a⟩` at `t₀`, weighting the localized-mode delta term.
    pub initial_occupation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WignerConfig {
    pub n: usize,
    pub m: usize,
    pub times: Vec<f64>,
    pub points: usize,
    pub half_width: f64,
    pub adaptive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    pub quad_abs: f64,
    pub quad_rel: f64,
    pub max_subdivisions: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelConfig::default(),
            grid: GridConfig::default(),
            spectrum: SpectrumConfig::default(),
            wigner: WignerConfig::default(),
            tolerance: ToleranceConfig::default(),
        }
    }
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            eta: 1e-3,
            x: 0.5,
            omega_c_ratio: 1.0,
            theta: None,
            temperature_k: Some(0.025),
            omega0_rad_per_s: Some(5e9),
        }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { dt: None, horizon: 20.0 }
    }
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            omega_min: 1e-4,
            omega_max: 1e-2,
            points: 41,
            initial_occupation: 0.0,
        }
    }
}

impl Default for WignerConfig {
    fn default() -> Self {
        let grid = GridSpec::default();
        Self {
            n: 0,
            m: 3,
            times: vec![0.0, 1.0, 1.5, 2.0],
            points: grid.n_points,
            half_width: grid.half_width,
            adaptive: grid.adaptive,
        }
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        let q = QuadConfig::default();
        Self {
            quad_abs: q.abs_tol,
            quad_rel: q.rel_tol,
            max_subdivisions: q.max_subdivisions,
        }
    }
}

/// Flag values that replace the corresponding file values.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub horizon: Option<f64>,
    pub eta: Option<f64>,
    pub x: Option<f64>,
    pub theta: Option<f64>,
    pub grid: Option<usize>,
    pub tolerance: Option<f64>,
}

/// How `θ` was obtained, recorded in every metadata sidecar.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitConvention {
    pub theta: f64,
    pub temperature_k: Option<f64>,
    pub omega0_rad_per_s: Option<f64>,
    pub boltzmann_j_per_k: f64,
    pub hbar_j_s: f64,
    pub convention: &'static str,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.dt {
            self.grid.dt = Some(v);
        }
        if let Some(v) = o.horizon {
            self.grid.horizon = v;
        }
        if let Some(v) = o.eta {
            self.model.eta = v;
        }
        if let Some(v) = o.x {
            self.model.x = v;
        }
        if let Some(v) = o.theta {
            self.model.theta = Some(v);
        }
        if let Some(v) = o.grid {
            self.wigner.points = v;
        }
        if let Some(v) = o.tolerance {
            self.tolerance.quad_rel = v;
        }
    }

    pub fn units(&self) -> Result<UnitConvention> {
        let m = &self.model;
        let theta = match (m.theta, m.temperature_k, m.omega0_rad_per_s) {
            (Some(theta), _, _) => theta,
            (None, Some(t), Some(w)) => theta_from_kelvin(t, w),
            _ => bail!("temperature needs either theta or both temperature_k and omega0_rad_per_s"),
        };
        let from_kelvin = m.theta.is_none();
        Ok(UnitConvention {
            theta,
            temperature_k: if from_kelvin { m.temperature_k } else { None },
            omega0_rad_per_s: if from_kelvin { m.omega0_rad_per_s } else { None },
            boltzmann_j_per_k: BOLTZMANN,
            hbar_j_s: HBAR,
            convention: "dimensionless: omega0 = 1, time in 1/omega0, theta = k_B T / (hbar omega0) with omega0 in rad/s",
        })
    }

    pub fn model(&self) -> Result<ReservoirModel> {
        let theta = self.units()?.theta;
        let m = &self.model;
        ReservoirModel::from_x(m.eta, m.x, m.omega_c_ratio, 1.0, theta)
            .map_err(|e| anyhow::anyhow!("invalid model (eta={}, x={}, theta={theta}): {e}", m.eta, m.x))
    }

    pub fn time_grid(&self, model: &ReservoirModel) -> Result<TimeGrid> {
        let dt = self.grid.dt.unwrap_or_else(|| TimeGrid::default_dt(model));
        Ok(TimeGrid::with_horizon(0.0, dt, self.grid.horizon)?)
    }

    pub fn quad(&self) -> Result<QuadConfig> {
        let t = &self.tolerance;
        if !(t.quad_abs > 0.0 && t.quad_rel > 0.0 && t.max_subdivisions > 0) {
            bail!("quadrature tolerances must be positive");
        }
        Ok(QuadConfig {
            abs_tol: t.quad_abs,
            rel_tol: t.quad_rel,
            max_subdivisions: t.max_subdivisions,
        })
    }

    pub fn omegas(&self) -> Result<Vec<f64>> {
        let s = &self.spectrum;
        if !(s.omega_min > 0.0 && s.omega_max > s.omega_min && s.points >= 2) {
            bail!("spectrum range needs 0 < omega_min < omega_max and at least 2 points");
        }
        Ok(flicker_core::noise::log_space(s.omega_min, s.omega_max, s.points))
    }

    pub fn wigner_grid(&self) -> Result<GridSpec> {
        let w = &self.wigner;
        Ok(GridSpec::new(w.half_width, w.points, w.adaptive)?)
    }

    pub fn state(&self) -> Result<SuperpositionState> {
        Ok(SuperpositionState::new(self.wigner.n, self.wigner.m)?)
    }
}
