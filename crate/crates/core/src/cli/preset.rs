//! Fixed parameter bundles that regenerate each published curve.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::coupling::{DipoleModel, Geometry};
use crate::error::{Error, Result};

use super::config::{ObservableLabel, SimConfig};
use super::sweep::{Reduce, Scale, SweepParam, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    Fig3,
    Fig4,
    Fig5,
    Fig6a,
    Fig6b,
    Fig7,
    Fig8,
}

impl PresetName {
    pub const ALL: [PresetName; 7] = [
        PresetName::Fig3,
        PresetName::Fig4,
        PresetName::Fig5,
        PresetName::Fig6a,
        PresetName::Fig6b,
        PresetName::Fig7,
        PresetName::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Fig3 => "fig3",
            PresetName::Fig4 => "fig4",
            PresetName::Fig5 => "fig5",
            PresetName::Fig6a => "fig6a",
            PresetName::Fig6b => "fig6b",
            PresetName::Fig7 => "fig7",
            PresetName::Fig8 => "fig8",
        }
    }
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: PresetName,
    pub config: SimConfig,
    pub sweep: Option<(SweepSpec, Reduce)>,
}

/// `R = λ/2π`, i.e. `ζ = 1`.
pub const R_INVERSE_TWO_PI: f64 = 1.0 / (2.0 * PI);

fn in_plane(r_over_lambda: f64) -> Geometry<f64> {
    Geometry::from_pi_units(0.5, 0.25, r_over_lambda).expect("valid preset geometry")
}

fn dynamics(geometry: Geometry<f64>, delta: f64, observable: ObservableLabel) -> SimConfig {
    SimConfig {
        geometry,
        delta,
        observables: vec![observable],
        ..SimConfig::default()
    }
}

pub fn preset(name: PresetName) -> Preset {
    let (config, sweep) = match name {
        PresetName::Fig3 => (
            SimConfig {
                geometry: in_plane(0.25),
                observables: vec![ObservableLabel::Coeffs],
                ..SimConfig::default()
            },
            Some((
                SweepSpec::new(SweepParam::ROverLambda, 0.05, 2.0, 196, Scale::Linear).expect("valid"),
                Reduce::Coefficients,
            )),
        ),
        PresetName::Fig4 => (
            SimConfig {
                geometry: in_plane(0.25),
                observables: vec![ObservableLabel::Coeffs],
                ..SimConfig::default()
            },
            Some((
                SweepSpec::new(SweepParam::Phi, 0.0, 1.0, 181, Scale::Linear).expect("valid"),
                Reduce::Coefficients,
            )),
        ),
        PresetName::Fig5 => (dynamics(in_plane(R_INVERSE_TWO_PI), 3.0, ObservableLabel::Rho12A), None),
        PresetName::Fig6a => (
            dynamics(in_plane(R_INVERSE_TWO_PI), 3.0, ObservableLabel::Population(3, 2)),
            None,
        ),
        PresetName::Fig6b => (
            dynamics(in_plane(R_INVERSE_TWO_PI), 3.0, ObservableLabel::Population(2, 3)),
            None,
        ),
        PresetName::Fig7 => (dynamics(in_plane(0.25), 0.0, ObservableLabel::Population(1, 3)), None),
        PresetName::Fig8 => (
            SimConfig {
                model: DipoleModel::SphericalComplex,
                ..dynamics(in_plane(R_INVERSE_TWO_PI), 3.0, ObservableLabel::Population(3, 2))
            },
            None,
        ),
    };
    Preset { name, config, sweep }
}

impl Preset {
    /// Text form used by the golden-file test and `vicsim preset --show`.
    pub fn describe(&self) -> String {
        let mut s = format!("[{}]\n", self.name.as_str());
        s.push_str(&self.config.to_text());
        if let Some((sw, reduce)) = &self.sweep {
            let scale = match sw.scale {
                Scale::Linear => "linear",
                Scale::Log => "log",
            };
            let reduce = match reduce {
                Reduce::Coefficients => "coefficients".to_string(),
                Reduce::PeakValue(l) => format!("peak_value:{l}"),
                Reduce::Full => "full".to_string(),
            };
            s.push_str(&format!(
                "sweep={} from={:?} to={:?} count={} scale={scale} reduce={reduce}\n",
                sw.parameter.column_name(),
                sw.start,
                sw.stop,
                sw.count
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_captions() {
        let g5 = preset(PresetName::Fig5).config;
        assert_eq!(g5.geometry.theta_pi(), 0.5);
        assert_eq!(g5.geometry.phi_pi(), 0.25);
        assert!((g5.geometry.zeta() - 1.0).abs() < 1e-15);
        assert_eq!(g5.delta, 3.0);

        let g7 = preset(PresetName::Fig7).config;
        assert_eq!(g7.geometry.r_over_lambda(), 0.25);
        assert_eq!(g7.delta, 0.0);

        let p3 = preset(PresetName::Fig3);
        assert_eq!(p3.config.geometry.theta_pi(), 0.5);
        assert_eq!(p3.config.geometry.phi_pi(), 0.25);
        assert_eq!(p3.sweep.unwrap().0.parameter, SweepParam::ROverLambda);

        assert_eq!(preset(PresetName::Fig8).config.model, DipoleModel::SphericalComplex);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!("fig9".parse::<PresetName>(), Err(Error::UnknownPreset(_))));
    }
}
