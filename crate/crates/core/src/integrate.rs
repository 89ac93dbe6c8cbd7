//! Fixed-step Cash–Karp Runge–Kutta propagation with sampled trajectories.

use log::{debug, trace};

use crate::coupling::Geometry;
use crate::dynamics::{DensityMatrix, Frame, MasterEquation, ModelParams};
use crate::error::{Error, Result};
use crate::scalar::{Modulus, Real};

/// Cash–Karp tableau.
mod tableau {
    pub const C: [f64; 6] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0];
    pub const A: [[f64; 5]; 6] = [
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
        [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    /// Fifth-order weights.
    pub const B5: [f64; 6] = [37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0];
    /// Embedded fourth-order weights.
    pub const B4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        1.0 / 4.0,
    ];
}

/// Result of one step: the fifth-order state and the max-norm of the
/// difference to the embedded fourth-order solution.
#[derive(Debug, Clone, Copy)]
pub struct Step<T: Real> {
    pub state: DensityMatrix<T>,
    pub error_estimate: T,
}

pub fn rk5_step_with_error<T, F>(rho: &DensityMatrix<T>, t: T, dt: T, rhs: F) -> Step<T>
where
    T: Real,
    F: Fn(T, &DensityMatrix<T>) -> DensityMatrix<T>,
{
    let mut k: [DensityMatrix<T>; 6] = [DensityMatrix::zeros(); 6];
    for stage in 0..6 {
        let mut y = *rho.matrix();
        for (j, kj) in k.iter().enumerate().take(stage) {
            let a = tableau::A[stage][j];
            if a != 0.0 {
                y += kj.matrix() * crate::scalar::c(dt * T::lit(a), T::zero());
            }
        }
        k[stage] = rhs(t + dt * T::lit(tableau::C[stage]), &DensityMatrix::from_matrix(y));
    }
    let mut fifth = *rho.matrix();
    let mut diff = nalgebra::SMatrix::zeros();
    for (j, kj) in k.iter().enumerate() {
        let b5 = tableau::B5[j];
        if b5 != 0.0 {
            fifth += kj.matrix() * crate::scalar::c(dt * T::lit(b5), T::zero());
        }
        let e = tableau::B5[j] - tableau::B4[j];
        if e != 0.0 {
            diff += kj.matrix() * crate::scalar::c(dt * T::lit(e), T::zero());
        }
    }
    let error_estimate = diff.iter().fold(T::zero(), |m, z: &num_complex::Complex<T>| m.max(z.modulus()));
    Step {
        state: DensityMatrix::from_matrix(fifth),
        error_estimate,
    }
}

/// One explicit fifth-order Cash–Karp step.
pub fn rk5_step<T, F>(rho: &DensityMatrix<T>, t: T, dt: T, rhs: F) -> DensityMatrix<T>
where
    T: Real,
    F: Fn(T, &DensityMatrix<T>) -> DensityMatrix<T>,
{
    rk5_step_with_error(rho, t, dt, rhs).state
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    t_max: T,
    dt: T,
    sample_every: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t_max: T, dt: T, sample_every: usize) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() || !t_max.is_finite() || dt > t_max {
            return Err(Error::Config(format!(
                "time grid requires 0 < dt <= t_max, got dt = {dt}, t_max = {t_max}"
            )));
        }
        if sample_every == 0 {
            return Err(Error::Config("sample_every must be positive".into()));
        }
        Ok(Self {
            t_max,
            dt,
            sample_every,
        })
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn sample_every(&self) -> usize {
        self.sample_every
    }

    /// Number of whole steps that fit in `[0, t_max]`.
    pub fn steps(&self) -> usize {
        let n = (self.t_max / self.dt).to_f64_lossy();
        // absorb rounding in t_max/dt (e.g. 5 / 1e-3 = 4999.999...)
        (n + 1e-9).floor() as usize
    }
}

/// Thresholds for the per-sample state monitors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub trace: T,
    pub hermiticity: T,
    pub min_eigenvalue: T,
}

impl<T: Real> Tolerances<T> {
    /// `|Tr ρ − 1| < 1e−8`, `‖ρ − ρ†‖ < 1e−10`, `λ_min ≥ −1e−6`, relaxed to
    /// the working precision for single-precision scalars.
    pub fn for_scalar() -> Self {
        let eps = T::EPSILON;
        Self {
            trace: T::lit(1e-8).max(eps * T::lit(2e3)),
            hermiticity: T::lit(1e-10).max(eps * T::lit(2e3)),
            min_eigenvalue: -T::lit(1e-6).max(eps * T::lit(2e3)),
        }
    }
}

/// Measured invariant defects of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics<T> {
    pub trace_error: T,
    pub hermiticity: T,
    pub min_eigenvalue: T,
}

impl<T: Real> StateDiagnostics<T> {
    pub fn of(rho: &DensityMatrix<T>) -> Self {
        Self {
            trace_error: (rho.trace() - crate::scalar::c(T::one(), T::zero())).modulus(),
            hermiticity: rho.hermiticity_defect(),
            min_eigenvalue: rho.min_eigenvalue(),
        }
    }

    fn check(&self, tol: &Tolerances<T>, step: usize, time: T) -> Result<()> {
        let breach = |metric, value: T, limit: T| Error::InvariantBreach {
            step,
            time: time.to_f64_lossy(),
            metric,
            value: value.to_f64_lossy(),
            limit: limit.to_f64_lossy(),
        };
        if !(self.trace_error < tol.trace) {
            return Err(breach("|Tr ρ − 1|", self.trace_error, tol.trace));
        }
        if !(self.hermiticity < tol.hermiticity) {
            return Err(breach("max|ρ − ρ†|", self.hermiticity, tol.hermiticity));
        }
        if !(self.min_eigenvalue >= tol.min_eigenvalue) {
            return Err(breach("min eigenvalue", self.min_eigenvalue, tol.min_eigenvalue));
        }
        Ok(())
    }
}

/// Sampled solution. States are always stored in the interaction picture,
/// whatever frame was integrated.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub times: Vec<T>,
    pub states: Vec<DensityMatrix<T>>,
    pub params: ModelParams<T>,
    pub geometry: Option<Geometry<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(T, &DensityMatrix<T>)> {
        self.times.last().copied().zip(self.states.last())
    }

    /// Largest entrywise deviation between matching samples.
    pub fn max_deviation(&self, other: &Self) -> T {
        self.states
            .iter()
            .zip(&other.states)
            .fold(T::zero(), |m, (a, b)| m.max(a.max_abs_diff(b)))
    }
}

/// Propagates `rho0` over `grid`, checking state invariants at every sample.
pub fn evolve<T: Real>(rho0: &DensityMatrix<T>, grid: &TimeGrid<T>, params: &ModelParams<T>) -> Result<Trajectory<T>> {
    evolve_with(rho0, grid, params, None, Tolerances::for_scalar())
}

pub fn evolve_with<T: Real>(
    rho0: &DensityMatrix<T>,
    grid: &TimeGrid<T>,
    params: &ModelParams<T>,
    geometry: Option<Geometry<T>>,
    tol: Tolerances<T>,
) -> Result<Trajectory<T>> {
    let eq = MasterEquation::new(*params);
    let steps = grid.steps();
    let dt = grid.dt();
    let capacity = steps / grid.sample_every() + 1;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        states: Vec::with_capacity(capacity),
        params: *params,
        geometry,
    };

    if !rho0.is_finite() {
        return Err(Error::NonFinite { step: 0, time: 0.0 });
    }
    StateDiagnostics::of(rho0).check(&tol, 0, T::zero())?;
    traj.times.push(T::zero());
    traj.states.push(*rho0);

    let mut rho = match params.frame {
        Frame::InteractionPicture => *rho0,
        Frame::RotatingFrame => eq.interaction_to_rotating(T::zero(), rho0),
    };
    let mut worst_local = T::zero();
    for step in 1..=steps {
        let t0 = dt * T::lit((step - 1) as f64);
        let out = rk5_step_with_error(&rho, t0, dt, |t, r| eq.rhs(t, r));
        rho = out.state;
        worst_local = worst_local.max(out.error_estimate);
        if step % grid.sample_every() != 0 {
            continue;
        }
        let t = dt * T::lit(step as f64);
        if !rho.is_finite() {
            return Err(Error::NonFinite {
                step,
                time: t.to_f64_lossy(),
            });
        }
        let state = match params.frame {
            Frame::InteractionPicture => rho,
            Frame::RotatingFrame => eq.rotating_to_interaction(t, &rho),
        };
        StateDiagnostics::of(&state).check(&tol, step, t)?;
        trace!("step {step}: t = {t}, local error estimate {:e}", out.error_estimate);
        traj.times.push(t);
        traj.states.push(state);
    }
    debug!("evolve: {steps} steps, largest embedded error estimate {worst_local:e}");
    Ok(traj)
}
