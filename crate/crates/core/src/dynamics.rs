//! Two-atom state space, atomic operators and the master-equation generator.
//!
//! The product basis is `|i_A, j_B⟩` with `i, j ∈ {1, 2, 3}` (levels 1 and 2
//! excited, 3 ground) and flat index `3(i−1) + (j−1)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use nalgebra::SMatrix;
use num_complex::Complex;

use crate::coupling::CouplingSet;
use crate::error::{Error, Result};
use crate::scalar::{Modulus, c, czero, Real};

pub const DIM: usize = 9;

pub type Matrix9<T> = SMatrix<Complex<T>, DIM, DIM>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    A,
    B,
}

impl Atom {
    pub fn other(self) -> Atom {
        match self {
            Atom::A => Atom::B,
            Atom::B => Atom::A,
        }
    }
}

/// Which decay channel of a V-system: `|1⟩→|3⟩` or `|2⟩→|3⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transition {
    First,
    Second,
}

impl Transition {
    fn excited_level(self) -> usize {
        match self {
            Transition::First => 1,
            Transition::Second => 2,
        }
    }
}

/// A product basis state `|i_A, j_B⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    a: u8,
    b: u8,
}

impl BasisState {
    pub fn new(level_a: usize, level_b: usize) -> Result<Self> {
        if !(1..=3).contains(&level_a) || !(1..=3).contains(&level_b) {
            return Err(Error::IndexOutOfRange(format!(
                "levels must be 1..=3, got ({level_a}, {level_b})"
            )));
        }
        Ok(Self {
            a: level_a as u8,
            b: level_b as u8,
        })
    }

    pub fn from_index(index: usize) -> Self {
        assert!(index < DIM);
        Self {
            a: (index / 3 + 1) as u8,
            b: (index % 3 + 1) as u8,
        }
    }

    pub fn level_a(self) -> usize {
        self.a as usize
    }

    pub fn level_b(self) -> usize {
        self.b as usize
    }

    pub fn index(self) -> usize {
        3 * (self.level_a() - 1) + (self.level_b() - 1)
    }

    /// Number of atoms sitting in level 2.
    pub fn level2_count(self) -> usize {
        usize::from(self.a == 2) + usize::from(self.b == 2)
    }

    pub fn is_double_ground(self) -> bool {
        self.a == 3 && self.b == 3
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}A{}B", self.a, self.b)
    }
}

impl FromStr for BasisState {
    type Err = Error;

    /// Parses labels of the form `1A3B`.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.trim().as_bytes();
        let bad = || Error::Config(format!("invalid basis state label `{s}` (expected e.g. 1A3B)"));
        if b.len() != 4 || !b[1].eq_ignore_ascii_case(&b'A') || !b[3].eq_ignore_ascii_case(&b'B') {
            return Err(bad());
        }
        let digit = |x: u8| (x as char).to_digit(10).map(|d| d as usize).ok_or_else(bad);
        BasisState::new(digit(b[0])?, digit(b[2])?).map_err(|_| bad())
    }
}

/// Sparse operator on the two-atom space, stored as `(row, col, value)` triples.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicOperator<T> {
    entries: Vec<(usize, usize, Complex<T>)>,
}

impl<T: Real> AtomicOperator<T> {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    /// `|to⟩⟨from|` on `atom`, tensored with the identity on the other atom.
    pub fn transition(atom: Atom, to: usize, from: usize) -> Self {
        let mut entries = Vec::with_capacity(3);
        for spectator in 1..=3 {
            let (ket, bra) = match atom {
                Atom::A => (BasisState::new(to, spectator), BasisState::new(from, spectator)),
                Atom::B => (BasisState::new(spectator, to), BasisState::new(spectator, from)),
            };
            entries.push((ket.unwrap().index(), bra.unwrap().index(), c(T::one(), T::zero())));
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, usize, Complex<T>)] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|&(r, k, v)| (k, r, v.conj())).collect(),
        }
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|&(r, k, v)| (r, k, v * s)).collect(),
        }
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut entries: Vec<(usize, usize, Complex<T>)> = Vec::new();
        for &(r1, k1, v1) in &self.entries {
            for &(r2, k2, v2) in &rhs.entries {
                if k1 != r2 {
                    continue;
                }
                let v = v1 * v2;
                match entries.iter_mut().find(|(r, k, _)| *r == r1 && *k == k2) {
                    Some(slot) => slot.2 += v,
                    None => entries.push((r1, k2, v)),
                }
            }
        }
        entries.retain(|e| e.2 != czero());
        Self { entries }
    }

    pub fn to_dense(&self) -> Matrix9<T> {
        let mut m = Matrix9::zeros();
        for &(r, k, v) in &self.entries {
            m[(r, k)] += v;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `out += s · self · m`
    fn left_mul_acc(&self, s: Complex<T>, m: &Matrix9<T>, out: &mut Matrix9<T>) {
        for &(r, k, v) in &self.entries {
            let f = s * v;
            for col in 0..DIM {
                out[(r, col)] += f * m[(k, col)];
            }
        }
    }

    /// `out += s · m · self`
    fn right_mul_acc(&self, s: Complex<T>, m: &Matrix9<T>, out: &mut Matrix9<T>) {
        for &(r, k, v) in &self.entries {
            let f = s * v;
            for row in 0..DIM {
                out[(row, k)] += f * m[(row, r)];
            }
        }
    }

    /// `out += s · left · m · right`
    fn sandwich_acc(left: &Self, right: &Self, s: Complex<T>, m: &Matrix9<T>, out: &mut Matrix9<T>) {
        for &(r1, k1, v1) in &left.entries {
            for &(r2, k2, v2) in &right.entries {
                out[(r1, k2)] += s * v1 * m[(k1, r2)] * v2;
            }
        }
    }

    /// `out · |ψ⟩` for a basis ket.
    pub fn apply(&self, ket: BasisState) -> Vec<(BasisState, Complex<T>)> {
        self.entries
            .iter()
            .filter(|(_, k, _)| *k == ket.index())
            .map(|&(r, _, v)| (BasisState::from_index(r), v))
            .collect()
    }
}

/// Lowering operator `|3_μ⟩⟨t_μ|` of `atom` on `transition`
/// (`α_μ` for the first transition, `β_μ` for the second).
pub fn lowering_op<T: Real>(atom: Atom, transition: Transition) -> AtomicOperator<T> {
    AtomicOperator::transition(atom, 3, transition.excited_level())
}

/// Operator on the two-atom space; also used for generator outputs, which
/// are traceless rather than unit-trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T: Real> {
    m: Matrix9<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn from_matrix(m: Matrix9<T>) -> Self {
        Self { m }
    }

    pub fn zeros() -> Self {
        Self { m: Matrix9::zeros() }
    }

    /// Pure product state `|s⟩⟨s|`.
    pub fn pure(s: BasisState) -> Self {
        let mut m = Matrix9::zeros();
        m[(s.index(), s.index())] = c(T::one(), T::zero());
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix9<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix9<T> {
        self.m
    }

    pub fn element(&self, bra: BasisState, ket: BasisState) -> Complex<T> {
        self.m[(bra.index(), ket.index())]
    }

    pub fn population(&self, s: BasisState) -> T {
        self.element(s, s).re
    }

    pub fn trace(&self) -> Complex<T> {
        self.m.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..DIM {
            for j in i..DIM {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).modulus());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> T {
        let h = (self.m + self.m.adjoint()) * c(T::lit(0.5), T::zero());
        h.symmetric_eigenvalues()
            .iter()
            .fold(T::INFINITY, |m, &x| if x < m { x } else { m })
    }

    pub fn max_abs(&self) -> T {
        self.m.iter().fold(T::zero(), |m, z| m.max(z.modulus()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.m - other.m).iter().fold(T::zero(), |m, z| m.max(z.modulus()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real> Add for DensityMatrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { m: self.m + rhs.m }
    }
}

impl<T: Real> Sub for DensityMatrix<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { m: self.m - rhs.m }
    }
}

impl<T: Real> Mul<T> for DensityMatrix<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self {
            m: self.m * c(s, T::zero()),
        }
    }
}

/// `XYρ − 2YρX + ρXY`.
pub fn dissipator_term<T: Real>(
    x: &AtomicOperator<T>,
    y: &AtomicOperator<T>,
    rho: &DensityMatrix<T>,
) -> DensityMatrix<T> {
    let mut out = Matrix9::zeros();
    let xy = x.compose(y);
    dissipator_acc(&xy, x, y, c(T::one(), T::zero()), rho.matrix(), &mut out);
    DensityMatrix::from_matrix(out)
}

/// `out += s · (XYρ − 2YρX + ρXY)` with `XY` supplied precomputed.
fn dissipator_acc<T: Real>(
    xy: &AtomicOperator<T>,
    x: &AtomicOperator<T>,
    y: &AtomicOperator<T>,
    s: Complex<T>,
    rho: &Matrix9<T>,
    out: &mut Matrix9<T>,
) {
    xy.left_mul_acc(s, rho, out);
    xy.right_mul_acc(s, rho, out);
    AtomicOperator::sandwich_acc(y, x, s * T::lit(-2.0), rho, out);
}

/// `out += s · [X, ρ]`
fn commutator_acc<T: Real>(x: &AtomicOperator<T>, s: Complex<T>, rho: &Matrix9<T>, out: &mut Matrix9<T>) {
    x.left_mul_acc(s, rho, out);
    x.right_mul_acc(-s, rho, out);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Explicit `e^{∓iδt}` phases on the cross terms.
    InteractionPicture,
    /// `ρ̃ = UρU†` with `U = exp(iδt N₂)`; the generator is time independent.
    RotatingFrame,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    pub coeffs: CouplingSet<T>,
    /// Splitting `ω₁ − ω₂` of the excited levels, in units of `γ`.
    pub delta: T,
    pub frame: Frame,
}

/// A pair of operators `(X, Y)` entering `XYρ − 2YρX + ρXY`, with `XY` cached.
#[derive(Debug, Clone)]
struct DissipatorPair<T> {
    x: AtomicOperator<T>,
    y: AtomicOperator<T>,
    xy: AtomicOperator<T>,
}

impl<T: Real> DissipatorPair<T> {
    /// `X = raising`, `Y = lowering`.
    fn new(raising: AtomicOperator<T>, lowering: AtomicOperator<T>) -> Self {
        let xy = raising.compose(&lowering);
        Self {
            x: raising,
            y: lowering,
            xy,
        }
    }

    fn acc(&self, s: Complex<T>, rho: &Matrix9<T>, out: &mut Matrix9<T>) {
        dissipator_acc(&self.xy, &self.x, &self.y, s, rho, out);
    }
}

/// Exchange term `S_from†S_to`-style pair between two atoms, with the pair
/// describing its Hermitian-conjugate partner.
#[derive(Debug, Clone)]
struct Exchange<T> {
    forward: DissipatorPair<T>,
    backward: DissipatorPair<T>,
}

impl<T: Real> Exchange<T> {
    /// `forward = (raise†, lower)`, `backward = (lower†, raise)`, i.e. the
    /// Hermitian conjugate of the forward bracket for Hermitian ρ.
    fn new(raised: &AtomicOperator<T>, lowered: &AtomicOperator<T>) -> Self {
        Self {
            forward: DissipatorPair::new(raised.adjoint(), lowered.clone()),
            backward: DissipatorPair::new(lowered.adjoint(), raised.clone()),
        }
    }
}

/// Precomputed operator content of the two-atom master equation.
#[derive(Debug, Clone)]
pub struct MasterEquation<T: Real> {
    params: ModelParams<T>,
    /// `(γ_j, S†S pair)` for each atom and transition.
    single_atom: Vec<(T, DissipatorPair<T>)>,
    /// `(Γ_j, Ω_j, exchange A→B)` for each transition.
    collective: Vec<(Complex<T>, Complex<T>, Exchange<T>)>,
    /// `β_A†α_B` and `β_B†α_A` (the A↔B partner).
    cross: [Exchange<T>; 2],
    level2_number: Vec<usize>,
}

impl<T: Real> MasterEquation<T> {
    pub fn new(params: ModelParams<T>) -> Self {
        let k = &params.coeffs;
        let ops = |t| (lowering_op::<T>(Atom::A, t), lowering_op::<T>(Atom::B, t));
        let (alpha_a, alpha_b) = ops(Transition::First);
        let (beta_a, beta_b) = ops(Transition::Second);

        let mut single_atom = Vec::with_capacity(4);
        for (rate, s) in [
            (k.gamma1, &alpha_a),
            (k.gamma1, &alpha_b),
            (k.gamma2, &beta_a),
            (k.gamma2, &beta_b),
        ] {
            single_atom.push((rate, DissipatorPair::new(s.adjoint(), s.clone())));
        }

        let collective = vec![
            (
                k.collective_decay1,
                k.collective_shift1,
                Exchange::new(&alpha_a, &alpha_b),
            ),
            (
                k.collective_decay2,
                k.collective_shift2,
                Exchange::new(&beta_a, &beta_b),
            ),
        ];

        let cross = [Exchange::new(&beta_a, &alpha_b), Exchange::new(&beta_b, &alpha_a)];
        let level2_number = (0..DIM).map(|i| BasisState::from_index(i).level2_count()).collect();

        Self {
            params,
            single_atom,
            collective,
            cross,
            level2_number,
        }
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    /// Generator in the configured frame.
    pub fn rhs(&self, t: T, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        match self.params.frame {
            Frame::InteractionPicture => self.rhs_interaction(t, rho),
            Frame::RotatingFrame => self.rhs_rotating(rho),
        }
    }

    /// Interaction-picture generator with explicit `e^{∓iδt}` cross-term phases.
    pub fn rhs_interaction(&self, t: T, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let theta = -self.params.delta * t;
        let phase = c(theta.cos(), theta.sin());
        DensityMatrix::from_matrix(self.assemble(phase, rho.matrix()))
    }

    /// Time-independent generator for `ρ̃ = UρU†`, `U = exp(iδt N₂)`.
    pub fn rhs_rotating(&self, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let m = rho.matrix();
        let mut out = self.assemble(c(T::one(), T::zero()), m);
        // + iδ[N₂, ρ̃]; N₂ is diagonal so the commutator is elementwise.
        let delta = self.params.delta;
        if delta != T::zero() {
            for r in 0..DIM {
                for col in 0..DIM {
                    let dn = self.level2_number[r] as f64 - self.level2_number[col] as f64;
                    if dn != 0.0 {
                        out[(r, col)] += c(T::zero(), delta * T::lit(dn)) * m[(r, col)];
                    }
                }
            }
        }
        DensityMatrix::from_matrix(out)
    }

    /// Sums the five term families with `phase` multiplying the cross terms
    /// (`e^{−iδt}` in the interaction picture, 1 in the rotating frame).
    fn assemble(&self, phase: Complex<T>, rho: &Matrix9<T>) -> Matrix9<T> {
        let mut out = Matrix9::zeros();
        let neg = |z: Complex<T>| -z;
        let i = c(T::zero(), T::one());

        // single-atom decay: −γ_j (S†Sρ − 2SρS† + ρS†S)
        for (rate, pair) in &self.single_atom {
            pair.acc(c(-*rate, T::zero()), rho, &mut out);
        }

        for (decay, shift, ex) in &self.collective {
            // −Γ_j {(S_A†S_B ρ − 2 S_B ρ S_A† + ρ S_A†S_B) + h.c.}
            ex.forward.acc(neg(*decay), rho, &mut out);
            ex.backward.acc(neg(decay.conj()), rho, &mut out);
            // +{iΩ_j [S_A†S_B, ρ] + h.c.}
            commutator_acc(&ex.forward.xy, i * *shift, rho, &mut out);
            commutator_acc(&ex.backward.xy, i * shift.conj(), rho, &mut out);
        }

        let decay = self.params.coeffs.cross_decay * phase;
        let shift = self.params.coeffs.cross_shift * phase;
        for ex in &self.cross {
            // −{Γ_vc (β†α ρ − 2 α ρ β† + ρ β†α) e^{−iδt} + h.c.}
            ex.forward.acc(neg(decay), rho, &mut out);
            ex.backward.acc(neg(decay.conj()), rho, &mut out);
            // +{iΩ_vc [β†α, ρ] e^{−iδt} + h.c.}
            commutator_acc(&ex.forward.xy, i * shift, rho, &mut out);
            commutator_acc(&ex.backward.xy, i * shift.conj(), rho, &mut out);
        }
        out
    }

    /// Maps a rotating-frame state at time `t` back to the interaction picture.
    pub fn rotating_to_interaction(&self, t: T, rho_tilde: &DensityMatrix<T>) -> DensityMatrix<T> {
        self.frame_phase(t, rho_tilde, -T::one())
    }

    pub fn interaction_to_rotating(&self, t: T, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        self.frame_phase(t, rho, T::one())
    }

    fn frame_phase(&self, t: T, rho: &DensityMatrix<T>, sign: T) -> DensityMatrix<T> {
        let mut m = *rho.matrix();
        let w = sign * self.params.delta * t;
        for r in 0..DIM {
            for col in 0..DIM {
                let dn = self.level2_number[r] as f64 - self.level2_number[col] as f64;
                if dn != 0.0 {
                    let a = w * T::lit(dn);
                    m[(r, col)] *= c(a.cos(), a.sin());
                }
            }
        }
        DensityMatrix::from_matrix(m)
    }
}

/// Free-function form of the interaction-picture generator.
pub fn rhs_interaction<T: Real>(t: T, rho: &DensityMatrix<T>, params: &ModelParams<T>) -> DensityMatrix<T> {
    MasterEquation::new(*params).rhs_interaction(t, rho)
}

/// Free-function form of the rotating-frame generator.
pub fn rhs_rotating<T: Real>(rho: &DensityMatrix<T>, params: &ModelParams<T>) -> DensityMatrix<T> {
    MasterEquation::new(*params).rhs_rotating(rho)
}
