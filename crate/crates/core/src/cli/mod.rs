//! Configuration, figure presets, sweeps and CSV output for the `vicsim` binary.

pub mod config;
pub mod output;
pub mod preset;
pub mod run;
pub mod sweep;

pub use config::{CouplingMode, ObservableLabel, Overrides, SimConfig};
pub use output::Table;
pub use preset::{preset, Preset, PresetName};
pub use run::{run_single, simulate, trajectory_table};
pub use sweep::{run_sweep, Reduce, Scale, SweepParam, SweepSpec};

use crate::error::Result;

/// Worker count: explicit value, else `VICSIM_WORKERS`, else available parallelism.
pub fn worker_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("VICSIM_WORKERS").ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Produces the table for a preset: a coefficient sweep or a single run.
pub fn run_preset(p: &Preset, workers: usize) -> Result<Table> {
    match &p.sweep {
        Some((spec, reduce)) => run_sweep(&p.config, spec, *reduce, workers),
        None => {
            let traj = simulate(&p.config)?;
            Ok(trajectory_table(&p.config, &traj))
        }
    }
}
