use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use flicker::commands;
use flicker::compare::{run_compare, CompareOptions};
use flicker::config::{Overrides, RunConfig};
use flicker::output::Emitter;
use flicker::presets::{run_preset, PresetId};

/// Exact non-Markovian decoherence of a resonator in a 1/f^x reservoir.
#[derive(Debug, Parser)]
#[command(name = "flicker", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Time step in units of 1/omega0.
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Final time in units of 1/omega0.
    #[arg(long, global = true)]
    horizon: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    /// Noise exponent; the spectral exponent is s = 1 - x.
    #[arg(long, global = true)]
    x: Option<f64>,
    /// Dimensionless temperature k_B T / (hbar omega0).
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Wigner grid points per axis.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Memory kernels g(t) and g~(t).
    Kernels,
    /// u(t) from the Volterra march, with the spectral solution alongside.
    Propagator,
    /// v(t), and optionally the two-time v(t, t + tau).
    Correlation {
        /// Also write v(t, t + tau) starting at this grid time.
        #[arg(long)]
        at: Option<f64>,
    },
    /// Master-equation coefficients omega0'(t), gamma(t), gamma~(t).
    Coefficients,
    /// Noise spectrum S = S1 + S2 with its low-frequency limit.
    Noise,
    /// Wigner snapshots of the configured superposition.
    Wigner,
    /// Data series for one figure.
    Preset {
        #[arg(value_enum)]
        id: PresetId,
    },
    /// Oracle suite; writes compare.json and fails if any check fails.
    Compare {
        /// Bath sizes for the convergence check.
        #[arg(long, value_delimiter = ',')]
        bath_modes: Option<Vec<usize>>,
    },
}

fn configure_workers() -> Result<()> {
    let Ok(raw) = std::env::var("FLICKER_WORKERS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("FLICKER_WORKERS={raw:?} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_workers()?;
    let c = &cli.common;
    let mut cfg = RunConfig::load(c.config.as_deref())?;
    cfg.apply(&Overrides {
        dt: c.dt,
        horizon: c.horizon,
        eta: c.eta,
        x: c.x,
        theta: c.theta,
        grid: c.grid,
        tolerance: c.tolerance,
    });
    // Fail on a bad configuration before anything is written.
    cfg.model()?;
    cfg.quad()?;
    cfg.wigner_grid()?;
    let mut out = Emitter::new(&c.out);
    match cli.command {
        Command::Kernels => commands::kernels(&cfg, &mut out)?,
        Command::Propagator => commands::propagator(&cfg, &mut out)?,
        Command::Correlation { at } => commands::correlation(&cfg, at, &mut out)?,
        Command::Coefficients => commands::coefficients(&cfg, &mut out)?,
        Command::Noise => commands::noise(&cfg, &mut out)?,
        Command::Wigner => commands::wigner(&cfg, &mut out)?,
        Command::Preset { id } => run_preset(id, &cfg, &mut out)?,
        Command::Compare { bath_modes } => {
            let mut opts = CompareOptions::default();
            if let Some(modes) = bath_modes {
                opts.bath_modes = modes;
            }
            let report = run_compare(&cfg, &opts);
            out.json("compare.json", &report)?;
            for check in &report.checks {
                let mark = if check.passed { "PASS" } else { "FAIL" };
                println!("{mark} {}: {:.3e} (tol {:.1e})", check.name, check.max_error, check.tolerance);
            }
            return Ok(report.passed);
        }
    }
    for path in out.written() {
        println!("{}", path.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
