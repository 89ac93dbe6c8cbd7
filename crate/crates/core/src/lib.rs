//! Spontaneous emission of two radiatively coupled three-level V-systems.
//!
//! The crate computes the retarded dipole-dipole couplings between two
//! identical V-type atoms (including the cross terms linking mutually
//! orthogonal transition dipoles), integrates the resulting two-atom master
//! equation, and extracts populations and excited-state coherences.
//!
//! Units throughout: rates in `γ`, times in `1/γ`, separations in
//! wavelengths, angles in units of π at the configuration layer.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are what the command-line harness uses.

// `!(x < limit)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coupling;
pub mod dynamics;
pub mod error;
pub mod integrate;
pub mod observables;
pub mod scalar;

pub use coupling::{
    chi_tensor, coupling_from_chi, coupling_real_dipoles, coupling_spherical, radial_functions, ChiTensor,
    CouplingSet, DipoleModel, Geometry, RadialFunctions,
};
pub use dynamics::{
    dissipator_term, lowering_op, rhs_interaction, rhs_rotating, Atom, AtomicOperator, BasisState, DensityMatrix,
    Frame, MasterEquation, ModelParams, Transition,
};
pub use error::{Error, Result};
pub use integrate::{evolve, evolve_with, rk5_step, rk5_step_with_error, TimeGrid, Tolerances, Trajectory};
pub use observables::{
    excited_coherence_a, perturbative_p32, population, single_atom_baseline, ObservableSeries, SeriesValues,
};
pub use scalar::Real;

pub type Geometry64 = Geometry<f64>;
pub type CouplingSet64 = CouplingSet<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type ModelParams64 = ModelParams<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type Trajectory64 = Trajectory<f64>;

pub type Geometry32 = Geometry<f32>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type Trajectory32 = Trajectory<f32>;
