//! Closed-form Wigner functions of Fock superpositions evolving under the
//! exact master equation.
//!
//! With `Ω = 2/(1+2v)` the vacuum evolves into the Gaussian
//! `W₀⁰ = (Ω/π) e^{−Ω|z|²}` and every Fock component is a finite sum built on
//! it. The measure is `d²z = dx dy` with `z = x + iy`, under which every
//! field integrates to one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::greens::GreensSolution;
use crate::special::ln_factorial;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest tolerated imaginary part of an interference sum.
pub const REALNESS_LIMIT: f64 = 1e-10;

/// `(|n⟩ + |m⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuperpositionState {
    pub n: usize,
    pub m: usize,
}

impl SuperpositionState {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == m {
            return Err(Error::InvalidParameter("superposition branches must differ"));
        }
        Ok(Self { n, m })
    }

    pub fn label(&self) -> String {
        format!("(|{}>+|{}>)/sqrt2", self.n, self.m)
    }

    pub fn max_photons(&self) -> usize {
        self.n.max(self.m)
    }
}

/// Square sampling grid `[−L, L]²` with `n_points` per axis.
///
/// With `adaptive` set, `L` is widened when the evolved state spreads beyond
/// it, so that the truncated tail stays near `e^{−36}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub n_points: usize,
    pub adaptive: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            half_width: 5.0,
            n_points: 256,
            adaptive: true,
        }
    }
}

impl GridSpec {
    pub fn new(half_width: f64, n_points: usize, adaptive: bool) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidParameter("grid half-width must be > 0"));
        }
        if n_points < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 points per axis"));
        }
        Ok(Self {
            half_width,
            n_points,
            adaptive,
        })
    }

    /// Half-width used for a field with Gaussian factor `e^{−Ω|z|²}` and up
    /// to `photons` quanta.
    pub fn resolve(&self, omega: f64, photons: usize) -> f64 {
        if !self.adaptive {
            return self.half_width;
        }
        let needed = ((36.0 + 2.0 * photons as f64) / omega).sqrt();
        self.half_width.max(needed)
    }

    pub fn axis(&self, half_width: f64) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|k| -half_width + 2.0 * half_width * k as f64 / (n - 1) as f64)
            .collect()
    }
}

/// `W(z)` sampled on a rectangular grid. `values[i * im_grid.len() + j]`
/// belongs to `z = re_grid[i] + i·im_grid[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub re_grid: Vec<f64>,
    pub im_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub time: f64,
    pub state_label: String,
}

impl WignerField {
    /// Evaluates `f` at every grid point.
    pub fn sample<F>(re_grid: Vec<f64>, im_grid: Vec<f64>, time: f64, state_label: String, mut f: F) -> Result<Self>
    where
        F: FnMut(Complex64) -> Result<f64>,
    {
        let mut values = Vec::with_capacity(re_grid.len() * im_grid.len());
        for &x in &re_grid {
            for &y in &im_grid {
                values.push(f(Complex64::new(x, y))?);
            }
        }
        Ok(Self {
            re_grid,
            im_grid,
            values,
            time,
            state_label,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.im_grid.len() + j]
    }

    /// Trapezoidal `∫W dx dy` over the grid.
    pub fn normalization(&self) -> f64 {
        let wx = trapezoid_weights(&self.re_grid);
        let wy = trapezoid_weights(&self.im_grid);
        let mut total = 0.0;
        for (i, a) in wx.iter().enumerate() {
            for (j, b) in wy.iter().enumerate() {
                total += a * b * self.get(i, j);
            }
        }
        total
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &b| a.max(b.abs()))
    }

    /// Sup-norm distance to a field sampled on the same grid.
    pub fn sup_distance(&self, other: &WignerField) -> Result<f64> {
        if self.values.len() != other.values.len() {
            return Err(Error::LengthMismatch(self.values.len(), other.values.len()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |a, (p, q)| a.max((p - q).abs())))
    }
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    (0..n)
        .map(|k| {
            let left = if k > 0 { axis[k] - axis[k - 1] } else { 0.0 };
            let right = if k + 1 < n { axis[k + 1] - axis[k] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

pub fn omega_factor(v: f64) -> f64 {
    2.0 / (1.0 + 2.0 * v)
}

/// Evolved vacuum `(Ω/π) e^{−Ω|z|²}`. It does not depend on `u`.
pub fn w_vacuum(z: Complex64, _u: Complex64, v: f64) -> f64 {
    let omega = omega_factor(v);
    omega / PI * (-omega * z.norm_sqr()).exp()
}

/// Precomputed `(u, v)`-dependent factors shared by all Fock components.
#[derive(Debug, Clone, Copy)]
struct Propagation {
    omega: f64,
    /// `Ω u`, so that `z* Ω u` is the amplitude carried by `a†`.
    omega_u: Complex64,
    /// `1 − |u|² Ω`.
    remainder: f64,
}

impl Propagation {
    fn new(u: Complex64, v: f64) -> Result<Self> {
        if !(v >= 0.0) {
            return Err(Error::Domain { what: "v", value: v });
        }
        let omega = omega_factor(v);
        Ok(Self {
            omega,
            omega_u: u * omega,
            remainder: 1.0 - u.norm_sqr() * omega,
        })
    }

    fn ln_gaussian(&self, z: Complex64) -> f64 {
        (self.omega / PI).ln() - self.omega * z.norm_sqr()
    }

    /// `ln|B^p|` and the sign of `B^p`, `B = 1 − |u|²Ω`; `None` when `B^p = 0`.
    fn remainder_power(&self, p: usize) -> Option<(f64, f64)> {
        if p == 0 {
            return Some((0.0, 1.0));
        }
        let b = self.remainder;
        if b == 0.0 {
            return None;
        }
        let sign = if b < 0.0 && p % 2 == 1 { -1.0 } else { 1.0 };
        Some((p as f64 * b.abs().ln(), sign))
    }

    fn fock_diagonal(&self, n: usize, z: Complex64) -> f64 {
        let ln_g = self.ln_gaussian(z);
        let a = self.omega_u.norm_sqr() * z.norm_sqr();
        let ln_a = a.ln();
        let mut total = 0.0;
        for p in 0..=n {
            let k = n - p;
            if k > 0 && a == 0.0 {
                continue;
            }
            let Some((ln_b, sign)) = self.remainder_power(p) else {
                continue;
            };
            let ln_c = ln_factorial(n) - ln_factorial(p) - 2.0 * ln_factorial(k);
            let ln_ak = if k == 0 { 0.0 } else { k as f64 * ln_a };
            total += sign * (ln_g + ln_c + ln_ak + ln_b).exp();
        }
        total
    }

    /// `½ W₀⁰ Σ_p √(n!m!)/(p!(n−p)!(m−p)!) {X^{n−p} X*^{m−p} + X^{m−p} X*^{n−p}} B^p`
    /// with `X = z* Ω u`.
    fn interference(&self, n: usize, m: usize, z: Complex64) -> Result<f64> {
        let ln_g = self.ln_gaussian(z);
        let x = z.conj() * self.omega_u;
        let (ln_x, phase) = (x.norm().ln(), x.arg());
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..=n.min(m) {
            let (a, b) = (n - p, m - p);
            if a + b > 0 && x.norm() == 0.0 {
                continue;
            }
            let Some((ln_b, sign)) = self.remainder_power(p) else {
                continue;
            };
            let ln_c = 0.5 * (ln_factorial(n) + ln_factorial(m)) - ln_factorial(p) - ln_factorial(a) - ln_factorial(b);
            let ln_mag = ln_g + ln_c + ln_b + if a + b > 0 { (a + b) as f64 * ln_x } else { 0.0 };
            let mag = sign * ln_mag.exp();
            let turn = (a as f64 - b as f64) * phase;
            let pair = Complex64::from_polar(mag, turn) + Complex64::from_polar(mag, -turn);
            total += pair;
            if pair.im.abs() > REALNESS_LIMIT * pair.re.abs().max(1.0) {
                return Err(Error::ImaginaryResidue {
                    step: p,
                    residue: pair.im.abs(),
                });
            }
        }
        if total.im.abs() > REALNESS_LIMIT * total.re.abs().max(1.0) {
            return Err(Error::ImaginaryResidue {
                step: n.min(m),
                residue: total.im.abs(),
            });
        }
        Ok(0.5 * total.re)
    }
}

/// Evolved `|n⟩⟨n|`.
pub fn w_fock_diagonal(n: usize, z: Complex64, u: Complex64, v: f64) -> Result<f64> {
    Ok(Propagation::new(u, v)?.fock_diagonal(n, z))
}

/// Evolved `(|n⟩ + |m⟩)(⟨n| + ⟨m|)/2`.
pub fn w_superposition(state: SuperpositionState, z: Complex64, u: Complex64, v: f64) -> Result<f64> {
    let prop = Propagation::new(u, v)?;
    let diag = 0.5 * (prop.fock_diagonal(state.n, z) + prop.fock_diagonal(state.m, z));
    Ok(diag + prop.interference(state.n, state.m, z)?)
}

/// The interference part alone, `W − ½(W_nn + W_mm)`.
pub fn w_interference(state: SuperpositionState, z: Complex64, u: Complex64, v: f64) -> Result<f64> {
    Propagation::new(u, v)?.interference(state.n, state.m, z)
}

/// Field of `state` for given `(u, v)` on `grid`.
pub fn wigner_field(
    state: SuperpositionState,
    u: Complex64,
    v: f64,
    time: f64,
    grid: &GridSpec,
) -> Result<WignerField> {
    let prop = Propagation::new(u, v)?;
    let half = grid.resolve(prop.omega, state.max_photons());
    let axis = grid.axis(half);
    WignerField::sample(axis.clone(), axis, time, state.label(), |z| {
        let diag = 0.5 * (prop.fock_diagonal(state.n, z) + prop.fock_diagonal(state.m, z));
        Ok(diag + prop.interference(state.n, state.m, z)?)
    })
}

/// `max |W − W_diagonal|` over `grid`: the size of the interference fringes.
pub fn interference_amplitude(state: SuperpositionState, u: Complex64, v: f64, grid: &GridSpec) -> Result<f64> {
    let prop = Propagation::new(u, v)?;
    let half = grid.resolve(prop.omega, state.max_photons());
    let axis = grid.axis(half);
    let mut best: f64 = 0.0;
    for &x in &axis {
        for &y in &axis {
            best = best.max(prop.interference(state.n, state.m, Complex64::new(x, y))?.abs());
        }
    }
    Ok(best)
}

/// One field per requested time, with `(u, v)` interpolated linearly from `solution`.
pub fn snapshot_series(
    state: SuperpositionState,
    solution: &GreensSolution,
    times: &[f64],
    grid: &GridSpec,
) -> Result<Vec<WignerField>> {
    times
        .iter()
        .map(|&t| {
            let (u, v) = solution.at(t)?;
            wigner_field(state, u, v.max(0.0), t, grid)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

    fn laguerre(n: usize, x: f64) -> f64 {
        let (mut a, mut b) = (1.0, 1.0 - x);
        if n == 0 {
            return a;
        }
        for k in 1..n {
            let c = ((2 * k + 1) as f64 - x) * b / (k + 1) as f64 - k as f64 * a / (k + 1) as f64;
            a = b;
            b = c;
        }
        b
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega_factor(0.0), 2.0);
        assert_eq!(omega_factor(0.5), 1.0);
        assert!(omega_factor(1e300) < 1e-299);
    }

    #[test]
    fn vacuum_values() {
        let z = Complex64::new(0.3, -0.4);
        assert_relative_eq!(w_vacuum(z, ONE, 0.0), 2.0 / PI * (-0.5f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(w_vacuum(Complex64::new(0.0, 0.0), ONE, 0.5), 1.0 / PI, max_relative = 1e-15);
    }

    #[test]
    fn fock_states_at_initial_time() {
        // (2/π)(−1)^n e^{−2|z|²} L_n(4|z|²).
        for n in 0..8 {
            for &z in &[Complex64::new(0.0, 0.0), Complex64::new(0.4, 0.7), Complex64::new(-1.1, 0.2)] {
                let r2 = z.norm_sqr();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let exact = 2.0 / PI * sign * (-2.0 * r2).exp() * laguerre(n, 4.0 * r2);
                let got = w_fock_diagonal(n, z, ONE, 0.0).unwrap();
                assert!((got - exact).abs() < 1e-13, "n={n}");
            }
        }
        assert_relative_eq!(
            w_fock_diagonal(1, Complex64::new(0.0, 0.0), ONE, 0.0).unwrap(),
            -2.0 / PI,
            max_relative = 1e-15
        );
    }

    #[test]
    fn vanishing_u_gives_thermal_gaussian() {
        let zero = Complex64::new(0.0, 0.0);
        let z = Complex64::new(0.8, -0.3);
        for n in [0, 1, 5, 40] {
            assert_relative_eq!(w_fock_diagonal(n, z, zero, 1.7).unwrap(), w_vacuum(z, zero, 1.7), max_relative = 1e-14);
        }
        let st = SuperpositionState::new(2, 3).unwrap();
        assert_eq!(w_interference(st, z, zero, 1.7).unwrap(), 0.0);
    }

    #[test]
    fn large_photon_numbers_stay_finite() {
        let u = Complex64::from_polar(0.9, 0.3);
        for n in [30, 60] {
            let w = w_fock_diagonal(n, Complex64::new(1.5, 2.0), u, 0.2).unwrap();
            assert!(w.is_finite() && w.abs() <= 2.0 / PI);
        }
        let st = SuperpositionState::new(45, 60).unwrap();
        assert!(w_superposition(st, Complex64::new(-3.0, 1.0), u, 0.2).unwrap().is_finite());
    }

    #[test]
    fn state_validation() {
        assert!(SuperpositionState::new(3, 3).is_err());
        assert_eq!(SuperpositionState::new(0, 3).unwrap().label(), "(|0>+|3>)/sqrt2");
        assert!(w_fock_diagonal(1, ONE, ONE, -0.1).is_err());
    }

    #[test]
    fn fields_are_normalized() {
        let grid = GridSpec::default();
        for &(n, m) in &[(0, 3), (2, 3), (0, 1)] {
            let st = SuperpositionState::new(n, m).unwrap();
            for &(u, v) in &[(ONE, 0.0), (Complex64::from_polar(0.8, -1.2), 0.4), (Complex64::from_polar(0.3, 2.0), 40.0)] {
                let f = wigner_field(st, u, v, 0.0, &grid).unwrap();
                assert!((f.normalization() - 1.0).abs() < 1e-6, "{n},{m} v={v}: {}", f.normalization());
                assert!(f.max_abs() <= 2.0 / PI + 1e-9);
            }
        }
    }

    #[test]
    fn adaptive_extent_only_when_needed() {
        let g = GridSpec::default();
        assert_eq!(g.resolve(2.0, 3), 5.0);
        assert!(g.resolve(omega_factor(100.0), 3) > 5.0);
        let fixed = GridSpec::new(5.0, 64, false).unwrap();
        assert_eq!(fixed.resolve(1e-3, 3), 5.0);
    }

    #[test]
    fn three_fold_symmetry() {
        let st = SuperpositionState::new(0, 3).unwrap();
        let u = Complex64::from_polar(0.85, -0.7);
        let rot = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let mut lobes_pos = 0;
        let mut lobes_neg = 0;
        for k in 0..6 {
            let z = Complex64::from_polar(1.0, k as f64 * PI / 3.0);
            let a = w_superposition(st, z, u, 0.1).unwrap();
            let b = w_superposition(st, z * rot, u, 0.1).unwrap();
            assert!((a - b).abs() < 1e-14);
            let i0 = w_interference(st, z, ONE, 0.0).unwrap();
            if i0 > 0.0 {
                lobes_pos += 1;
            } else {
                lobes_neg += 1;
            }
        }
        assert_eq!((lobes_pos, lobes_neg), (3, 3));
    }
}
