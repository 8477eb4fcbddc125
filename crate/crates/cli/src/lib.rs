//! Command-line driver for `flicker-core`: configuration, the figure
//! preset catalog, deterministic CSV/JSON emission and the oracle
//! comparison report.

pub mod commands;
pub mod compare;
pub mod config;
pub mod output;
pub mod presets;
