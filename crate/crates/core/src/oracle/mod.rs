//! Brute-force checkers for the fast paths.
//!
//! * [`bath`]: a finite set of bath modes evolved exactly; validates `u`, `v`.
//! * [`brute`]: the double integral for `v` without incremental structure.
//! * [`master`] + [`parity`]: the master equation in a truncated Fock basis
//!   followed by the displaced-parity Wigner transform; validates the
//!   closed-form Wigner propagation.

pub mod bath;
pub mod brute;
pub mod master;
pub mod parity;

pub use bath::{bath_u_v, DiscreteBath};
pub use brute::{brute_force_v, brute_force_v_with};
pub use master::{integrate_master_equation, TruncatedDensityMatrix};
pub use parity::wigner_from_density_matrix;

use alloc::string::String;

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }

    /// A check that failed to run at all.
    pub fn failed(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_error: f64::INFINITY,
            tolerance,
            passed: false,
        }
    }
}
