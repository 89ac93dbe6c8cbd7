//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra as na;
use num_complex::Complex;
use num_traits as nt;

/// Real floating-point type the simulation is generic over (`f32` or `f64`).
pub trait Real:
    na::RealField
    + nt::FloatConst
    + nt::ToPrimitive
    + nt::FromPrimitive
    + Copy
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Machine epsilon.
    const EPSILON: Self;
    const INFINITY: Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as nt::FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        nt::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const EPSILON: Self = f32::EPSILON;
    const INFINITY: Self = f32::INFINITY;
}

impl Real for f64 {
    const EPSILON: Self = f64::EPSILON;
    const INFINITY: Self = f64::INFINITY;
}

pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Modulus of a complex number over any [`Real`].
pub trait Modulus<T> {
    fn modulus(&self) -> T;
}

impl<T: Real> Modulus<T> for Complex<T> {
    fn modulus(&self) -> T {
        self.re.hypot(self.im)
    }
}

/// `(sin(πx), cos(πx))`, exact when `x` is a multiple of 1/2.
///
/// Angles are carried in units of π so that the geometric special cases
/// (θ = nπ, φ = nπ/2) produce exact zeros instead of `1e-16` residues.
pub fn sincos_pi<T: Real>(x: T) -> (T, T) {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r += two;
    }
    let quarter_turns = r * two;
    if quarter_turns == quarter_turns.floor() {
        let k = nt::ToPrimitive::to_i64(&quarter_turns).unwrap_or(0).rem_euclid(4);
        let (one, zero) = (T::one(), T::zero());
        return match k {
            0 => (zero, one),
            1 => (one, zero),
            2 => (zero, -one),
            _ => (-one, zero),
        };
    }
    let angle = r * T::PI();
    (angle.sin(), angle.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_half_turn_multiples() {
        assert_eq!(sincos_pi(0.0_f64), (0.0, 1.0));
        assert_eq!(sincos_pi(0.5_f64), (1.0, 0.0));
        assert_eq!(sincos_pi(1.0_f64), (0.0, -1.0));
        assert_eq!(sincos_pi(1.5_f64), (-1.0, 0.0));
        assert_eq!(sincos_pi(-0.5_f64), (-1.0, 0.0));
        assert_eq!(sincos_pi(4.0_f32), (0.0, 1.0));
    }

    #[test]
    fn generic_angles_match_std() {
        for &x in &[0.1_f64, 0.25, 0.7, 1.3, -2.2, 7.77] {
            let (s, co) = sincos_pi(x);
            let a = x * std::f64::consts::PI;
            assert!((s - a.sin()).abs() < 1e-14);
            assert!((co - a.cos()).abs() < 1e-14);
        }
    }
}
