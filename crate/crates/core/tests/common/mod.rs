//! Independent reference computations shared by the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;

/// `e^{i r}/r` in units where `k₀ = 1`.
fn outgoing_wave(x: [f64; 3]) -> Complex64 {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    Complex64::new(r.cos(), r.sin()) / r
}

/// `(δ_{μν} + ∂_μ∂_ν) e^{ir}/r` at `x = ζ R̂`, by central differences.
pub fn chi_by_finite_differences(zeta: f64, rhat: [f64; 3]) -> [[Complex64; 3]; 3] {
    let x = [zeta * rhat[0], zeta * rhat[1], zeta * rhat[2]];
    let h = 1e-3 * zeta.min(1.0);
    let f = |dx: [f64; 3]| outgoing_wave([x[0] + dx[0], x[1] + dx[1], x[2] + dx[2]]);
    let unit = |mu: usize, s: f64| {
        let mut v = [0.0; 3];
        v[mu] = s;
        v
    };
    let add = |a: [f64; 3], b: [f64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    #[allow(clippy::needless_range_loop)]
    for mu in 0..3 {
        for nu in 0..3 {
            let d2 = if mu == nu {
                // fourth-order stencil
                let (p1, m1) = (f(unit(mu, h)), f(unit(mu, -h)));
                let (p2, m2) = (f(unit(mu, 2.0 * h)), f(unit(mu, -2.0 * h)));
                (-p2 + 16.0 * p1 - 30.0 * f([0.0; 3]) + 16.0 * m1 - m2) / (12.0 * h * h)
            } else {
                let mixed = |h: f64| {
                    let pp = f(add(unit(mu, h), unit(nu, h)));
                    let pm = f(add(unit(mu, h), unit(nu, -h)));
                    let mp = f(add(unit(mu, -h), unit(nu, h)));
                    let mm = f(add(unit(mu, -h), unit(nu, -h)));
                    (pp - pm - mp + mm) / (4.0 * h * h)
                };
                // Richardson step lifts the cross stencil to fourth order
                (mixed(h) * 4.0 - mixed(2.0 * h)) / 3.0
            };
            out[mu][nu] = d2 + if mu == nu { f([0.0; 3]) } else { Complex64::new(0.0, 0.0) };
        }
    }
    out
}

/// Entrywise deviation between two coefficient lists, relative to the
/// largest magnitude in either list.
pub fn relative_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = a.iter().chain(b).fold(0.0_f64, |m, z| m.max(z.norm()));
    let worst = a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()));
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}
