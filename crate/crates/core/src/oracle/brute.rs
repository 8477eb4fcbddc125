//! Direct two-dimensional quadrature of `v(t)`.

use alloc::collections::BTreeMap;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::greens::TimeGrid;
use crate::quad::QuadConfig;
use crate::spectral::{kernel_g_tilde, ReservoirModel};

/// `v(t_k)` as the plain composite trapezoid over `[t₀, t_k]²`, with the
/// kernel evaluated by `kernel(τ − τ')` at every node pair.
pub fn brute_force_v_with<K>(u: &[Complex64], grid: TimeGrid, t_index: usize, mut kernel: K) -> Result<f64>
where
    K: FnMut(f64) -> Result<Complex64>,
{
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch(u.len(), grid.len()));
    }
    if t_index > grid.n_steps {
        return Err(Error::OutOfRange {
            time: grid.time(t_index),
            start: grid.t0,
            end: grid.end(),
        });
    }
    let k = t_index;
    if k == 0 {
        return Ok(0.0);
    }
    let w = |i: usize| if i == 0 || i == k { 0.5 } else { 1.0 };
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=k {
        for j in 0..=k {
            let tau = (i as f64 - j as f64) * grid.dt;
            acc += u[i].conj() * kernel(tau)? * u[j] * (w(i) * w(j));
        }
    }
    Ok(acc.re * grid.dt * grid.dt)
}

/// [`brute_force_v_with`] using the model's `g̃`, computed once per lag.
pub fn brute_force_v(
    model: &ReservoirModel,
    u: &[Complex64],
    grid: TimeGrid,
    t_index: usize,
    cfg: &QuadConfig,
) -> Result<f64> {
    let mut cache: BTreeMap<i64, Complex64> = BTreeMap::new();
    brute_force_v_with(u, grid, t_index, |tau| {
        let key = (tau / grid.dt).round() as i64;
        if let Some(v) = cache.get(&key) {
            return Ok(*v);
        }
        let v = kernel_g_tilde(model, tau, cfg)?;
        cache.insert(key, v);
        Ok(v)
    })
}
