//! One-parameter sweeps over geometry or level splitting.

use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::observables::{excited_coherence_a, population, ObservableSeries};

use super::config::{ObservableLabel, SimConfig};
use super::output::Table;
use super::run::{coefficient_columns, coefficient_values, observable_columns, simulate, trajectory_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    ROverLambda,
    /// In units of π.
    Theta,
    /// In units of π.
    Phi,
    Delta,
}

impl SweepParam {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepParam::ROverLambda => "r_over_lambda",
            SweepParam::Theta => "theta_over_pi",
            SweepParam::Phi => "phi_over_pi",
            SweepParam::Delta => "delta",
        }
    }

    fn apply(self, config: &SimConfig, value: f64) -> Result<SimConfig> {
        let mut c = config.clone();
        let g = c.geometry;
        match self {
            SweepParam::ROverLambda => c.geometry = g.with_r_over_lambda(value)?,
            SweepParam::Theta => c.geometry = g.with_theta_pi(value)?,
            SweepParam::Phi => c.geometry = g.with_phi_pi(value)?,
            SweepParam::Delta => {
                if !(value >= 0.0) {
                    return Err(Error::Config(format!("delta must be >= 0, got {value}")));
                }
                c.delta = value
            }
        }
        Ok(c)
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "r_over_lambda" | "r" => Ok(SweepParam::ROverLambda),
            "theta" => Ok(SweepParam::Theta),
            "phi" => Ok(SweepParam::Phi),
            "delta" => Ok(SweepParam::Delta),
            other => Err(Error::Config(format!(
                "unknown sweep parameter `{other}` (r_over_lambda|theta|phi|delta)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(parameter: SweepParam, start: f64, stop: f64, count: usize, scale: Scale) -> Result<Self> {
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::Config(format!("sweep requires start < stop, got {start}..{stop}")));
        }
        if count < 2 {
            return Err(Error::Config(format!("sweep count must be >= 2, got {count}")));
        }
        if scale == Scale::Log && !(start > 0.0) {
            return Err(Error::Config("log sweep requires a positive start".into()));
        }
        Ok(Self {
            parameter,
            start,
            stop,
            count,
            scale,
        })
    }

    /// Sweep points, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    return self.stop;
                }
                let f = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduce {
    Coefficients,
    /// Maximum magnitude over time of one observable.
    PeakValue(ObservableLabel),
    Full,
}

impl Reduce {
    pub fn parse(mode: &str, observable: Option<&str>) -> Result<Self> {
        match mode.trim() {
            "coefficients" => Ok(Reduce::Coefficients),
            "full" => Ok(Reduce::Full),
            "peak_value" => {
                let label: ObservableLabel = observable.unwrap_or("p_32").parse()?;
                if label == ObservableLabel::Coeffs {
                    return Err(Error::Config("peak_value needs a time-dependent observable".into()));
                }
                Ok(Reduce::PeakValue(label))
            }
            other => Err(Error::Config(format!(
                "unknown reduce mode `{other}` (coefficients|peak_value|full)"
            ))),
        }
    }
}

fn series_for(label: ObservableLabel, traj: &crate::integrate::Trajectory<f64>) -> Result<ObservableSeries<f64>> {
    match label {
        ObservableLabel::Population(i, j) => population(traj, i, j),
        ObservableLabel::Rho12A => Ok(excited_coherence_a(traj)),
        ObservableLabel::Coeffs => Err(Error::Config("coeffs has no time series".into())),
    }
}

/// Evaluates the sweep with at most `workers` points in flight; rows are
/// emitted in sweep order regardless of completion order.
pub fn run_sweep(config: &SimConfig, sweep: &SweepSpec, reduce: Reduce, workers: usize) -> Result<Table> {
    let values = sweep.values();
    let configs: Vec<SimConfig> = values
        .iter()
        .map(|&v| sweep.parameter.apply(config, v))
        .collect::<Result<_>>()
        .map_err(|e| match e {
            Error::Domain(m) => Error::Config(m),
            other => other,
        })?;

    let param = sweep.parameter.column_name().to_string();
    let mut header = vec![param];
    match reduce {
        Reduce::Coefficients => header.extend(coefficient_columns()),
        Reduce::PeakValue(label) => {
            header.push(format!("peak_{label}"));
            header.push("t_peak".into());
        }
        Reduce::Full => {
            header.push("t".into());
            header.extend(observable_columns(&config.observables));
        }
    }

    let point = |(value, cfg): (&f64, &SimConfig)| -> Result<Vec<Vec<f64>>> {
        match reduce {
            Reduce::Coefficients => {
                let k = cfg.coupling_set()?;
                let mut row = vec![*value];
                row.extend(coefficient_values(&k));
                Ok(vec![row])
            }
            Reduce::PeakValue(label) => {
                let traj = simulate(cfg)?;
                let (t, peak) = series_for(label, &traj)?.peak().unwrap_or((0.0, 0.0));
                Ok(vec![vec![*value, peak, t]])
            }
            Reduce::Full => {
                let traj = simulate(cfg)?;
                Ok(trajectory_table(cfg, &traj)
                    .rows
                    .into_iter()
                    .map(|r| std::iter::once(*value).chain(r).collect())
                    .collect())
            }
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let blocks: Vec<Result<Vec<Vec<f64>>>> =
        pool.install(|| values.par_iter().zip(configs.par_iter()).map(point).collect());

    let mut table = Table::new(header);
    for block in blocks {
        for row in block? {
            table.push(row);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_values_hit_half_turns_exactly() {
        let s = SweepSpec::new(SweepParam::Phi, 0.0, 1.0, 181, Scale::Linear).unwrap();
        let v = s.values();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[90], 0.5);
        assert_eq!(v[180], 1.0);
    }

    #[test]
    fn log_values_are_geometric() {
        let s = SweepSpec::new(SweepParam::ROverLambda, 0.01, 1.0, 3, Scale::Log).unwrap();
        let v = s.values();
        assert!((v[1] - 0.1).abs() < 1e-15);
        assert_eq!(v[2], 1.0);
    }

    #[test]
    fn invalid_specs() {
        assert!(SweepSpec::new(SweepParam::Phi, 1.0, 0.0, 5, Scale::Linear).is_err());
        assert!(SweepSpec::new(SweepParam::Phi, 0.0, 1.0, 1, Scale::Linear).is_err());
        assert!(SweepSpec::new(SweepParam::ROverLambda, 0.0, 1.0, 4, Scale::Log).is_err());
        assert!(Reduce::parse("peak_value", Some("coeffs")).is_err());
        assert!(Reduce::parse("mean", None).is_err());
    }
}
