//! Populations, coherences and the analytic short-time references.

use num_complex::Complex;

use crate::coupling::CouplingSet;
use crate::dynamics::BasisState;
use crate::error::{Error, Result};
use crate::integrate::Trajectory;
use crate::scalar::{Modulus, Real};

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesValues<T> {
    Real(Vec<T>),
    Complex(Vec<Complex<T>>),
}

impl<T: Real> SeriesValues<T> {
    pub fn len(&self) -> usize {
        match self {
            SeriesValues::Real(v) => v.len(),
            SeriesValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Magnitude at each sample (absolute value for real series).
    pub fn magnitudes(&self) -> Vec<T> {
        match self {
            SeriesValues::Real(v) => v.iter().map(|x| x.abs()).collect(),
            SeriesValues::Complex(v) => v.iter().map(|z| z.modulus()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries<T> {
    pub label: String,
    pub times: Vec<T>,
    pub values: SeriesValues<T>,
}

impl<T: Real> ObservableSeries<T> {
    /// Real values; `None` for a complex series.
    pub fn real(&self) -> Option<&[T]> {
        match &self.values {
            SeriesValues::Real(v) => Some(v),
            SeriesValues::Complex(_) => None,
        }
    }

    pub fn complex(&self) -> Option<&[Complex<T>]> {
        match &self.values {
            SeriesValues::Complex(v) => Some(v),
            SeriesValues::Real(_) => None,
        }
    }

    /// `(t, value)` at the largest magnitude.
    pub fn peak(&self) -> Option<(T, T)> {
        self.times
            .iter()
            .zip(self.values.magnitudes())
            .fold(None, |best: Option<(T, T)>, (&t, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((t, v)),
            })
    }

    /// First sample time at which the magnitude exceeds `threshold`.
    pub fn first_crossing(&self, threshold: T) -> Option<T> {
        self.times
            .iter()
            .zip(self.values.magnitudes())
            .find(|(_, v)| *v > threshold)
            .map(|(&t, _)| t)
    }
}

/// `p_{i;j}(t)`: probability of atom A in `|i⟩` and atom B in `|j⟩`.
pub fn population<T: Real>(traj: &Trajectory<T>, i: usize, j: usize) -> Result<ObservableSeries<T>> {
    let s = BasisState::new(i, j)?;
    Ok(ObservableSeries {
        label: format!("p_{i}{j}"),
        times: traj.times.clone(),
        values: SeriesValues::Real(traj.states.iter().map(|r| r.population(s)).collect()),
    })
}

/// Matrix element `⟨bra|ρ(t)|ket⟩` per sample.
pub fn matrix_element<T: Real>(traj: &Trajectory<T>, bra: BasisState, ket: BasisState) -> ObservableSeries<T> {
    ObservableSeries {
        label: format!("rho[{bra},{ket}]"),
        times: traj.times.clone(),
        values: SeriesValues::Complex(traj.states.iter().map(|r| r.element(bra, ket)).collect()),
    }
}

/// Excited-state coherence of atom A with B in its ground state,
/// `⟨1_A,3_B|ρ|2_A,3_B⟩`.
pub fn excited_coherence_a<T: Real>(traj: &Trajectory<T>) -> ObservableSeries<T> {
    let bra = BasisState::new(1, 3).expect("valid levels");
    let ket = BasisState::new(2, 3).expect("valid levels");
    let mut series = matrix_element(traj, bra, ket);
    series.label = "rho12A".into();
    series
}

/// Lowest-order transfer probability into `|3_A,2_B⟩` from `|1_A,3_B⟩`:
/// `4|Γ_vc + iΩ_vc|² sin²(δt/2)/δ²`, with the `δ → 0` limit
/// `|Γ_vc + iΩ_vc|² t²` used once `|δt| < 1e−6`.
pub fn perturbative_p32<T: Real>(coeffs: &CouplingSet<T>, delta: T, t: T) -> Result<T> {
    if t < T::zero() {
        return Err(Error::Domain(format!("time must be non-negative, got {t}")));
    }
    let i = Complex::new(T::zero(), T::one());
    let strength = (coeffs.cross_decay + i * coeffs.cross_shift).norm_sqr();
    if (delta * t).abs() < T::lit(1e-6) {
        return Ok(strength * t * t);
    }
    let s = (delta * t / T::lit(2.0)).sin();
    Ok(T::lit(4.0) * strength * s * s / (delta * delta))
}

/// Isolated-atom survival probability of the excited level, `e^{−2γt}`.
pub fn single_atom_baseline<T: Real>(gamma: T, t: T) -> Result<T> {
    if t < T::zero() {
        return Err(Error::Domain(format!("time must be non-negative, got {t}")));
    }
    Ok((-T::lit(2.0) * gamma * t).exp())
}
