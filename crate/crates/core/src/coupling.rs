//! Retarded dipole-dipole tensor and the master-equation coupling coefficients.
//!
//! Everything here is expressed in natural units: rates in units of the
//! single-atom parameter `γ`, lengths in wavelengths, and the tensor scaled
//! by `k₀³` so it depends only on `ζ = k₀R` and the unit vector `R̂`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Modulus, c, czero, sincos_pi, Real};

/// Separations with `ζ = k₀R` below this are outside the point-dipole model.
pub const MIN_ZETA: f64 = 1e-4;

/// Position of atom B relative to atom A.
///
/// Angles are stored in units of π (`theta_pi = 0.5` is θ = π/2) so the
/// geometric null configurations are exactly representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry<T> {
    theta_pi: T,
    phi_pi: T,
    r_over_lambda: T,
}

impl<T: Real> Geometry<T> {
    pub fn from_pi_units(theta_pi: T, phi_pi: T, r_over_lambda: T) -> Result<Self> {
        if !theta_pi.is_finite() || !phi_pi.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        if !(r_over_lambda > T::zero()) || !r_over_lambda.is_finite() {
            return Err(Error::Domain(format!(
                "separation must be positive and finite, got R/λ = {r_over_lambda}"
            )));
        }
        Ok(Self {
            theta_pi,
            phi_pi,
            r_over_lambda,
        })
    }

    pub fn from_radians(theta: T, phi: T, r_over_lambda: T) -> Result<Self> {
        Self::from_pi_units(theta / T::PI(), phi / T::PI(), r_over_lambda)
    }

    pub fn theta_pi(&self) -> T {
        self.theta_pi
    }

    pub fn phi_pi(&self) -> T {
        self.phi_pi
    }

    pub fn theta(&self) -> T {
        self.theta_pi * T::PI()
    }

    pub fn phi(&self) -> T {
        self.phi_pi * T::PI()
    }

    pub fn r_over_lambda(&self) -> T {
        self.r_over_lambda
    }

    /// `ζ = k₀R = 2π R/λ`.
    pub fn zeta(&self) -> T {
        T::lit(2.0) * T::PI() * self.r_over_lambda
    }

    /// Cartesian components of `R̂`.
    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = sincos_pi(self.theta_pi);
        let (sp, cp) = sincos_pi(self.phi_pi);
        [st * cp, st * sp, ct]
    }

    pub fn with_r_over_lambda(self, r_over_lambda: T) -> Result<Self> {
        Self::from_pi_units(self.theta_pi, self.phi_pi, r_over_lambda)
    }

    pub fn with_theta_pi(self, theta_pi: T) -> Result<Self> {
        Self::from_pi_units(theta_pi, self.phi_pi, self.r_over_lambda)
    }

    pub fn with_phi_pi(self, phi_pi: T) -> Result<Self> {
        Self::from_pi_units(self.theta_pi, phi_pi, self.r_over_lambda)
    }
}

/// The four dimensionless radial combinations of the retarded propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFunctions<T> {
    pub pr: T,
    pub pi: T,
    pub qr: T,
    pub qi: T,
}

/// Evaluates the closed forms directly; no small-ζ series is substituted.
pub fn radial_functions<T: Real>(zeta: T) -> Result<RadialFunctions<T>> {
    if !(zeta > T::zero()) || !zeta.is_finite() {
        return Err(Error::Domain(format!("ζ must be positive, got {zeta}")));
    }
    if zeta < T::lit(MIN_ZETA) {
        return Err(Error::Domain(format!(
            "ζ = {zeta} is below the point-dipole validity limit {MIN_ZETA:e}"
        )));
    }
    let (s, co) = (zeta.sin(), zeta.cos());
    let z2 = zeta * zeta;
    let z3 = z2 * zeta;
    let three = T::lit(3.0);
    Ok(RadialFunctions {
        pr: co / zeta - s / z2 - co / z3,
        pi: s / zeta + co / z2 - s / z3,
        qr: co / zeta - three * s / z2 - three * co / z3,
        qi: s / zeta + three * co / z2 - three * s / z3,
    })
}

/// Dyadic propagator scaled by `k₀³`; physical χ is `k₀³ · components`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiTensor<T> {
    pub components: [[Complex<T>; 3]; 3],
}

impl<T: Real> ChiTensor<T> {
    pub fn get(&self, mu: usize, nu: usize) -> Complex<T> {
        self.components[mu][nu]
    }

    /// `Σ_{μν} left_μ · part(χ)_{μν} · right*_ν` with `part` = Re or Im taken
    /// componentwise on the tensor.
    fn sesquilinear(&self, left: &[Complex<T>; 3], right: &[Complex<T>; 3], part: Part) -> Complex<T> {
        let mut acc = czero();
        for (mu, l) in left.iter().enumerate() {
            for (nu, r) in right.iter().enumerate() {
                let x = self.components[mu][nu];
                let entry = match part {
                    Part::Re => x.re,
                    Part::Im => x.im,
                };
                acc += *l * r.conj() * entry;
            }
        }
        acc
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for mu in 0..3 {
            for nu in 0..3 {
                worst = worst.max((self.components[mu][nu] - self.components[nu][mu]).modulus());
            }
        }
        worst
    }
}

#[derive(Clone, Copy)]
enum Part {
    Re,
    Im,
}

/// `[δ_{μν}(1/ζ + i/ζ² − 1/ζ³) − R̂_μR̂_ν(1/ζ + 3i/ζ² − 3/ζ³)] e^{iζ}`.
pub fn chi_tensor<T: Real>(geom: &Geometry<T>) -> Result<ChiTensor<T>> {
    let zeta = geom.zeta();
    if zeta < T::lit(MIN_ZETA) {
        return Err(Error::Domain(format!(
            "ζ = {zeta} is below the point-dipole validity limit {MIN_ZETA:e}"
        )));
    }
    let z2 = zeta * zeta;
    let z3 = z2 * zeta;
    let three = T::lit(3.0);
    let phase = c(zeta.cos(), zeta.sin());
    let isotropic = c(T::one() / zeta - T::one() / z3, T::one() / z2) * phase;
    let radial = c(T::one() / zeta - three / z3, three / z2) * phase;
    let rhat = geom.unit_vector();

    let mut components = [[czero(); 3]; 3];
    for mu in 0..3 {
        for nu in mu..3 {
            let mut v = radial * (-(rhat[mu] * rhat[nu]));
            if mu == nu {
                v += isotropic;
            }
            components[mu][nu] = v;
            components[nu][mu] = v;
        }
    }
    Ok(ChiTensor { components })
}

/// The eight coefficients of the two-atom master equation, in units of `γ`.
///
/// `gamma1`/`gamma2` are the single-atom coefficients (the population decay
/// rate of each excited level is twice these). The `collective_*` entries
/// couple parallel dipoles on different atoms and the `cross_*` entries
/// couple the orthogonal pair `d₁` (atom A) and `d₂` (atom B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet<T> {
    pub gamma1: T,
    pub gamma2: T,
    pub collective_decay1: Complex<T>,
    pub collective_decay2: Complex<T>,
    pub collective_shift1: Complex<T>,
    pub collective_shift2: Complex<T>,
    pub cross_decay: Complex<T>,
    pub cross_shift: Complex<T>,
}

impl<T: Real> CouplingSet<T> {
    /// Two independent atoms: no inter-atomic couplings at all.
    pub fn uncoupled(gamma: T) -> Self {
        Self {
            gamma1: gamma,
            gamma2: gamma,
            collective_decay1: czero(),
            collective_decay2: czero(),
            collective_shift1: czero(),
            collective_shift2: czero(),
            cross_decay: czero(),
            cross_shift: czero(),
        }
    }

    /// Same couplings with the cross (orthogonal-dipole) terms forced to zero.
    pub fn without_cross_terms(mut self) -> Self {
        self.cross_decay = czero();
        self.cross_shift = czero();
        self
    }

    /// Same couplings with every dispersive (level-shift) term forced to zero.
    pub fn without_shifts(mut self) -> Self {
        self.collective_shift1 = czero();
        self.collective_shift2 = czero();
        self.cross_shift = czero();
        self
    }

    /// Complex entries in a fixed order, with their names.
    pub fn complex_entries(&self) -> [(&'static str, Complex<T>); 6] {
        [
            ("Gamma1", self.collective_decay1),
            ("Gamma2", self.collective_decay2),
            ("Omega1", self.collective_shift1),
            ("Omega2", self.collective_shift2),
            ("GammaVc", self.cross_decay),
            ("OmegaVc", self.cross_shift),
        ]
    }

    pub fn max_imaginary(&self) -> T {
        self.complex_entries()
            .iter()
            .fold(T::zero(), |m, (_, z)| m.max(z.im.abs()))
    }
}

/// Transition-dipole configuration of each V-system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleModel {
    /// `d₁ = x̂ d`, `d₂ = ŷ d`.
    RealOrthogonal,
    /// `d₁ = −d ε̂₋`, `d₂ = d ε̂₊` with `ε̂± = (x̂ ± iŷ)/√2` (Zeeman sublevels).
    SphericalComplex,
}

impl DipoleModel {
    /// Unit dipole directions `(d₁, d₂)`.
    pub fn dipoles<T: Real>(self) -> ([Complex<T>; 3], [Complex<T>; 3]) {
        let (o, z) = (T::one(), T::zero());
        match self {
            DipoleModel::RealOrthogonal => (
                [c(o, z), c(z, z), c(z, z)],
                [c(z, z), c(o, z), c(z, z)],
            ),
            DipoleModel::SphericalComplex => {
                let h = T::FRAC_1_SQRT_2();
                // −ε̂₋ = −(x̂ − iŷ)/√2, ε̂₊ = (x̂ + iŷ)/√2
                ([c(-h, z), c(z, h), c(z, z)], [c(h, z), c(z, h), c(z, z)])
            }
        }
    }

    /// Closed-form coefficients for this model.
    pub fn couplings<T: Real>(self, geom: &Geometry<T>, gamma: T) -> Result<CouplingSet<T>> {
        match self {
            DipoleModel::RealOrthogonal => coupling_real_dipoles(geom, gamma),
            DipoleModel::SphericalComplex => coupling_spherical(geom, gamma),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DipoleModel::RealOrthogonal => "real",
            DipoleModel::SphericalComplex => "spherical",
        }
    }
}

fn dot_conj<T: Real>(a: &[Complex<T>; 3], b: &[Complex<T>; 3]) -> Complex<T> {
    a.iter().zip(b).fold(czero(), |acc, (x, y)| acc + *x * y.conj())
}

/// Coefficients from the tensor for arbitrary orthogonal dipoles of equal
/// strength, normalised so an isolated atom decays with `gamma`.
///
/// Re/Im are taken componentwise on the tensor before contracting, so the
/// cross terms are complex for complex dipoles.
pub fn coupling_from_chi<T: Real>(
    d1: &[Complex<T>; 3],
    d2: &[Complex<T>; 3],
    chi: &ChiTensor<T>,
    gamma: T,
) -> Result<CouplingSet<T>> {
    let n1 = dot_conj(d1, d1).re;
    let n2 = dot_conj(d2, d2).re;
    if !(n1 > T::zero()) || !(n2 > T::zero()) {
        return Err(Error::Precondition("dipoles must be non-zero".into()));
    }
    let tol = T::lit(1e3) * T::EPSILON;
    if dot_conj(d1, d2).modulus() > tol * (n1 * n2).sqrt() {
        return Err(Error::Precondition("transition dipoles must be orthogonal".into()));
    }
    if (n1 - n2).abs() > tol * n1.max(n2) {
        return Err(Error::Precondition("transition dipoles must have equal magnitude".into()));
    }
    // γ = (2/3)|d|²k₀³/ħ, so |d|²k₀³/ħ = 3γ/2.
    let scale = T::lit(1.5) * gamma / n1;
    let form = |l: &[Complex<T>; 3], r: &[Complex<T>; 3], part| chi.sesquilinear(l, r, part) * scale;
    Ok(CouplingSet {
        gamma1: gamma,
        gamma2: gamma,
        collective_decay1: form(d1, d1, Part::Im),
        collective_decay2: form(d2, d2, Part::Im),
        collective_shift1: form(d1, d1, Part::Re),
        collective_shift2: form(d2, d2, Part::Re),
        cross_decay: form(d2, d1, Part::Im),
        cross_shift: form(d2, d1, Part::Re),
    })
}

/// Closed forms for `d₁ = x̂ d`, `d₂ = ŷ d`. All entries are real.
pub fn coupling_real_dipoles<T: Real>(geom: &Geometry<T>, gamma: T) -> Result<CouplingSet<T>> {
    let f = radial_functions(geom.zeta())?;
    let (st, _) = sincos_pi(geom.theta_pi());
    let (sp, cp) = sincos_pi(geom.phi_pi());
    let s2 = st * st;
    let k = T::lit(1.5) * gamma;
    let re = |x: T| c(x, T::zero());
    Ok(CouplingSet {
        gamma1: gamma,
        gamma2: gamma,
        collective_decay1: re(k * (f.pi - s2 * cp * cp * f.qi)),
        collective_decay2: re(k * (f.pi - s2 * sp * sp * f.qi)),
        collective_shift1: re(k * (f.pr - s2 * cp * cp * f.qr)),
        collective_shift2: re(k * (f.pr - s2 * sp * sp * f.qr)),
        cross_decay: re(-k * s2 * sp * cp * f.qi),
        cross_shift: re(-k * s2 * sp * cp * f.qr),
    })
}

/// Closed forms for the circular (σ±) dipole pair.
pub fn coupling_spherical<T: Real>(geom: &Geometry<T>, gamma: T) -> Result<CouplingSet<T>> {
    let f = radial_functions(geom.zeta())?;
    let (st, _) = sincos_pi(geom.theta_pi());
    let s2 = st * st;
    let (s2p, c2p) = sincos_pi(T::lit(2.0) * geom.phi_pi());
    let k = T::lit(0.75) * gamma;
    let two = T::lit(2.0);
    let re = |x: T| c(x, T::zero());
    let decay = re(k * (two * f.pi - s2 * f.qi));
    let shift = re(k * (two * f.pr - s2 * f.qr));
    let azimuthal = c(c2p, s2p);
    Ok(CouplingSet {
        gamma1: gamma,
        gamma2: gamma,
        collective_decay1: decay,
        collective_decay2: decay,
        collective_shift1: shift,
        collective_shift2: shift,
        cross_decay: azimuthal * (k * s2 * f.qi),
        cross_shift: azimuthal * (k * s2 * f.qr),
    })
}
