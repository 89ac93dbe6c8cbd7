//! Simulation configuration and its flat `key=value` text form.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::coupling::{CouplingSet, DipoleModel, Geometry};
use crate::dynamics::{BasisState, Frame, ModelParams};
use crate::error::{Error, Result};
use crate::integrate::TimeGrid;

/// A quantity that can be written as CSV columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableLabel {
    Population(usize, usize),
    Rho12A,
    Coeffs,
}

impl fmt::Display for ObservableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservableLabel::Population(i, j) => write!(f, "p_{i}{j}"),
            ObservableLabel::Rho12A => f.write_str("rho12A"),
            ObservableLabel::Coeffs => f.write_str("coeffs"),
        }
    }
}

impl FromStr for ObservableLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rho12A" => return Ok(ObservableLabel::Rho12A),
            "coeffs" => return Ok(ObservableLabel::Coeffs),
            _ => {}
        }
        let digits = s.strip_prefix("p_").or_else(|| s.strip_prefix('p'));
        if let Some(d) = digits {
            let d: Vec<usize> = d.chars().filter_map(|ch| ch.to_digit(10).map(|x| x as usize)).collect();
            if d.len() == 2 && s.len() <= 4 && (1..=3).contains(&d[0]) && (1..=3).contains(&d[1]) {
                return Ok(ObservableLabel::Population(d[0], d[1]));
            }
        }
        Err(Error::Config(format!(
            "unknown observable `{s}` (expected p_ij with i,j in 1..3, rho12A or coeffs)"
        )))
    }
}

/// Which inter-atomic couplings enter the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMode {
    Full,
    /// Cross (orthogonal-dipole) terms forced to zero.
    NoCross,
    /// Independent atoms.
    Off,
}

impl CouplingMode {
    fn label(self) -> &'static str {
        match self {
            CouplingMode::Full => "full",
            CouplingMode::NoCross => "no_cross",
            CouplingMode::Off => "off",
        }
    }
}

impl FromStr for CouplingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(CouplingMode::Full),
            "no_cross" => Ok(CouplingMode::NoCross),
            "off" => Ok(CouplingMode::Off),
            other => Err(Error::Config(format!("unknown couplings mode `{other}` (full|no_cross|off)"))),
        }
    }
}

pub fn parse_model(s: &str) -> Result<DipoleModel> {
    match s.trim() {
        "real" => Ok(DipoleModel::RealOrthogonal),
        "spherical" => Ok(DipoleModel::SphericalComplex),
        other => Err(Error::Config(format!("unknown dipole model `{other}` (real|spherical)"))),
    }
}

pub fn parse_frame(s: &str) -> Result<Frame> {
    match s.trim() {
        "interaction" => Ok(Frame::InteractionPicture),
        "rotating" => Ok(Frame::RotatingFrame),
        other => Err(Error::Config(format!("unknown frame `{other}` (interaction|rotating)"))),
    }
}

fn frame_label(f: Frame) -> &'static str {
    match f {
        Frame::InteractionPicture => "interaction",
        Frame::RotatingFrame => "rotating",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub model: DipoleModel,
    pub geometry: Geometry<f64>,
    pub delta: f64,
    pub grid: TimeGrid<f64>,
    pub initial_state: BasisState,
    pub frame: Frame,
    pub couplings: CouplingMode,
    pub observables: Vec<ObservableLabel>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            model: DipoleModel::RealOrthogonal,
            geometry: Geometry::from_pi_units(0.5, 0.25, 0.25).expect("valid default geometry"),
            delta: 0.0,
            grid: TimeGrid::new(5.0, 1e-3, 10).expect("valid default grid"),
            initial_state: BasisState::new(1, 3).expect("valid default state"),
            frame: Frame::InteractionPicture,
            couplings: CouplingMode::Full,
            observables: vec![
                ObservableLabel::Population(1, 3),
                ObservableLabel::Population(3, 2),
                ObservableLabel::Population(2, 3),
                ObservableLabel::Rho12A,
            ],
            output_path: None,
        }
    }
}

/// Values supplied on the command line; each one overrides the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub r: Option<f64>,
    pub delta: Option<f64>,
    pub model: Option<String>,
    pub dt: Option<f64>,
    pub tmax: Option<f64>,
    pub sample_every: Option<usize>,
    pub init: Option<String>,
    pub frame: Option<String>,
    pub couplings: Option<String>,
    pub observables: Option<String>,
    pub out: Option<PathBuf>,
}

impl SimConfig {
    pub fn model_params(&self) -> Result<ModelParams<f64>> {
        Ok(ModelParams {
            coeffs: self.coupling_set()?,
            delta: self.delta,
            frame: self.frame,
        })
    }

    pub fn coupling_set(&self) -> Result<CouplingSet<f64>> {
        let full = self.model.couplings(&self.geometry, 1.0)?;
        Ok(match self.couplings {
            CouplingMode::Full => full,
            CouplingMode::NoCross => full.without_cross_terms(),
            CouplingMode::Off => CouplingSet::uncoupled(1.0),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// Parses `key=value` lines on top of the defaults. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut raw = Overrides::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got `{line}`", n + 1)))?;
            let value = value.trim();
            let num = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .map_err(|_| Error::Config(format!("line {}: `{key}` expects a number, got `{v}`", n + 1)))
            };
            match key.trim() {
                "theta" => raw.theta = Some(num(value)?),
                "phi" => raw.phi = Some(num(value)?),
                "r" | "r_over_lambda" => raw.r = Some(num(value)?),
                "delta" => raw.delta = Some(num(value)?),
                "dt" => raw.dt = Some(num(value)?),
                "tmax" => raw.tmax = Some(num(value)?),
                "sample_every" => {
                    raw.sample_every = Some(value.parse().map_err(|_| {
                        Error::Config(format!("line {}: sample_every expects a positive integer", n + 1))
                    })?)
                }
                "model" => raw.model = Some(value.into()),
                "init" => raw.init = Some(value.into()),
                "frame" => raw.frame = Some(value.into()),
                "couplings" => raw.couplings = Some(value.into()),
                "observables" => raw.observables = Some(value.into()),
                "out" => raw.out = Some(PathBuf::from(value)),
                other => return Err(Error::Config(format!("line {}: unknown key `{other}`", n + 1))),
            }
        }
        Self::default().with_overrides(&raw)
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Result<Self> {
        let g = self.geometry;
        self.geometry = Geometry::from_pi_units(
            o.theta.unwrap_or(g.theta_pi()),
            o.phi.unwrap_or(g.phi_pi()),
            o.r.unwrap_or(g.r_over_lambda()),
        )
        .map_err(|e| Error::Config(e.to_string()))?;
        // ζ validity is checked eagerly so bad separations are config errors
        crate::coupling::radial_functions(self.geometry.zeta()).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(d) = o.delta {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(Error::Config(format!("delta must be finite and >= 0, got {d}")));
            }
            self.delta = d;
        }
        if let Some(m) = &o.model {
            self.model = parse_model(m)?;
        }
        if o.dt.is_some() || o.tmax.is_some() || o.sample_every.is_some() {
            let g = self.grid;
            self.grid = TimeGrid::new(
                o.tmax.unwrap_or(g.t_max()),
                o.dt.unwrap_or(g.dt()),
                o.sample_every.unwrap_or(g.sample_every()),
            )?;
        }
        if let Some(s) = &o.init {
            self.initial_state = s.parse()?;
        }
        if let Some(f) = &o.frame {
            self.frame = parse_frame(f)?;
        }
        if let Some(c) = &o.couplings {
            self.couplings = c.parse()?;
        }
        if let Some(list) = &o.observables {
            let obs: Vec<ObservableLabel> = list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(str::parse)
                .collect::<Result<_>>()?;
            if obs.is_empty() {
                return Err(Error::Config("observables list is empty".into()));
            }
            self.observables = obs;
        }
        if let Some(p) = &o.out {
            self.output_path = Some(p.clone());
        }
        Ok(self)
    }

    /// Serialises to the same `key=value` format `from_text` reads.
    pub fn to_text(&self) -> String {
        let obs: Vec<String> = self.observables.iter().map(ToString::to_string).collect();
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("model", self.model.label().into());
        kv("theta", format!("{:?}", self.geometry.theta_pi()));
        kv("phi", format!("{:?}", self.geometry.phi_pi()));
        kv("r", format!("{:?}", self.geometry.r_over_lambda()));
        kv("delta", format!("{:?}", self.delta));
        kv("dt", format!("{:?}", self.grid.dt()));
        kv("tmax", format!("{:?}", self.grid.t_max()));
        kv("sample_every", self.grid.sample_every().to_string());
        kv("init", self.initial_state.to_string());
        kv("frame", frame_label(self.frame).into());
        kv("couplings", self.couplings.label().into());
        kv("observables", obs.join(","));
        if let Some(p) = &self.output_path {
            kv("out", p.display().to_string());
        }
        s
    }
}
