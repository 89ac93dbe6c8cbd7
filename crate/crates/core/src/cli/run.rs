use crate::coupling::CouplingSet;
use crate::dynamics::DensityMatrix;
use crate::error::Result;
use crate::integrate::{evolve_with, Tolerances, Trajectory};

use super::config::{ObservableLabel, SimConfig};
use super::output::Table;

pub fn simulate(config: &SimConfig) -> Result<Trajectory<f64>> {
    let params = config.model_params()?;
    let rho0 = DensityMatrix::pure(config.initial_state);
    evolve_with(
        &rho0,
        &config.grid,
        &params,
        Some(config.geometry),
        Tolerances::for_scalar(),
    )
}

pub fn coefficient_columns() -> Vec<String> {
    let mut cols = vec!["gamma1".to_string(), "gamma2".to_string()];
    for (name, _) in CouplingSet::<f64>::uncoupled(1.0).complex_entries() {
        cols.push(format!("Re({name})"));
        cols.push(format!("Im({name})"));
    }
    cols
}

pub fn coefficient_values(k: &CouplingSet<f64>) -> Vec<f64> {
    let mut v = vec![k.gamma1, k.gamma2];
    for (_, z) in k.complex_entries() {
        v.push(z.re);
        v.push(z.im);
    }
    v
}

pub(crate) fn observable_columns(labels: &[ObservableLabel]) -> Vec<String> {
    let mut cols = Vec::new();
    for l in labels {
        match l {
            ObservableLabel::Population(..) => cols.push(l.to_string()),
            ObservableLabel::Rho12A => {
                cols.push("Re(rho12A)".into());
                cols.push("Im(rho12A)".into());
            }
            ObservableLabel::Coeffs => cols.extend(coefficient_columns()),
        }
    }
    cols
}

pub(crate) fn observable_values(labels: &[ObservableLabel], rho: &DensityMatrix<f64>, k: &CouplingSet<f64>) -> Vec<f64> {
    use crate::dynamics::BasisState;
    let mut v = Vec::new();
    for l in labels {
        match *l {
            ObservableLabel::Population(i, j) => {
                v.push(rho.population(BasisState::new(i, j).expect("validated label")));
            }
            ObservableLabel::Rho12A => {
                let z = rho.element(
                    BasisState::new(1, 3).expect("valid"),
                    BasisState::new(2, 3).expect("valid"),
                );
                v.push(z.re);
                v.push(z.im);
            }
            ObservableLabel::Coeffs => v.extend(coefficient_values(k)),
        }
    }
    v
}

/// One trajectory as a table: `t` followed by the requested observables.
pub fn trajectory_table(config: &SimConfig, traj: &Trajectory<f64>) -> Table {
    let mut header = vec!["t".to_string()];
    header.extend(observable_columns(&config.observables));
    let mut table = Table::new(header);
    let k = traj.params.coeffs;
    for (t, rho) in traj.times.iter().zip(&traj.states) {
        let mut row = vec![*t];
        row.extend(observable_values(&config.observables, rho, &k));
        table.push(row);
    }
    table
}

/// Simulates `config` and writes its CSV to the configured destination.
pub fn run_single(config: &SimConfig) -> Result<Table> {
    let traj = simulate(config)?;
    let table = trajectory_table(config, &traj);
    table.write_to(config.output_path.as_deref())?;
    Ok(table)
}
