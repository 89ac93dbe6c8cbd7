mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

use vicsim::{
    chi_tensor, coupling_from_chi, coupling_real_dipoles, coupling_spherical, radial_functions, CouplingSet64,
    DipoleModel, Geometry64,
};

fn entries(k: &CouplingSet64) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(k.gamma1, 0.0), Complex64::new(k.gamma2, 0.0)];
    v.extend(k.complex_entries().iter().map(|(_, z)| *z));
    v
}

fn zeta_to_r(zeta: f64) -> f64 {
    zeta / (2.0 * std::f64::consts::PI)
}

#[test]
fn closed_forms_agree_with_tensor_route_on_sampled_geometries() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let g = Geometry64::from_pi_units(rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0), zeta_to_r(rng.gen_range(0.05..50.0)))
            .unwrap();
        let chi = chi_tensor(&g).unwrap();
        for (model, closed) in [
            (DipoleModel::RealOrthogonal, coupling_real_dipoles(&g, 1.0).unwrap()),
            (DipoleModel::SphericalComplex, coupling_spherical(&g, 1.0).unwrap()),
        ] {
            let (d1, d2) = model.dipoles();
            let via_chi = coupling_from_chi(&d1, &d2, &chi, 1.0).unwrap();
            let dev = common::relative_deviation(&entries(&closed), &entries(&via_chi));
            assert!(dev < 1e-10, "{model:?} at {g:?}: {dev:e}");
        }
    }
}

#[test]
fn tensor_matches_finite_difference_derivative() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..30 {
        let g = Geometry64::from_pi_units(rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0), zeta_to_r(rng.gen_range(0.3..15.0)))
            .unwrap();
        let chi = chi_tensor(&g).unwrap();
        let fd = common::chi_by_finite_differences(g.zeta(), g.unit_vector());
        let a: Vec<Complex64> = chi.components.iter().flatten().copied().collect();
        let b: Vec<Complex64> = fd.iter().flatten().copied().collect();
        let dev = common::relative_deviation(&a, &b);
        assert!(dev < 1e-6, "{g:?}: {dev:e}");
    }
    // the example point: θ = π/2, φ = π/4, ζ = 1
    let g = Geometry64::from_pi_units(0.5, 0.25, zeta_to_r(1.0)).unwrap();
    let chi = chi_tensor(&g).unwrap();
    let fd = common::chi_by_finite_differences(1.0, g.unit_vector());
    #[allow(clippy::needless_range_loop)]
    for mu in 0..3 {
        for nu in 0..3 {
            let (x, y) = (chi.get(mu, nu), fd[mu][nu]);
            if y.norm() > 1e-12 {
                assert!((x - y).norm() / y.norm() < 1e-6, "({mu},{nu}): {x} vs {y}");
            }
        }
    }
}

#[test]
fn decay_couplings_bounded_by_single_atom_rate() {
    let mut rng = StdRng::seed_from_u64(11);
    for k in 0..=300 {
        let zeta = 10f64.powf(-3.0 + 6.0 * k as f64 / 300.0);
        let g = Geometry64::from_pi_units(rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0), zeta_to_r(zeta)).unwrap();
        for model in [DipoleModel::RealOrthogonal, DipoleModel::SphericalComplex] {
            let c = model.couplings(&g, 1.0).unwrap();
            for z in [c.collective_decay1, c.collective_decay2, c.cross_decay] {
                assert!(z.norm() <= 1.0 + 1e-12, "{model:?} ζ={zeta}: {z}");
            }
        }
    }
}

#[test]
fn near_field_limits() {
    let g = Geometry64::from_pi_units(0.5, 0.25, zeta_to_r(1e-3)).unwrap();
    for model in [DipoleModel::RealOrthogonal, DipoleModel::SphericalComplex] {
        let c = model.couplings(&g, 1.0).unwrap();
        assert!((c.collective_decay1.re - 1.0).abs() <= 1e-4);
        assert!(c.collective_shift1.norm() > 100.0);
        assert!(c.cross_shift.norm() > 100.0);
        // cross decay vanishes with Qi ~ −ζ²/15
        assert!(c.cross_decay.norm() < 1e-6);
    }
}

#[test]
fn imaginary_parts_vanish_for_real_dipoles_and_collective_spherical_terms() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let g = Geometry64::from_pi_units(rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0), rng.gen_range(0.01..3.0)).unwrap();
        let (d1, d2) = DipoleModel::RealOrthogonal.dipoles();
        let k = coupling_from_chi(&d1, &d2, &chi_tensor(&g).unwrap(), 1.0).unwrap();
        assert_eq!(k.max_imaginary(), 0.0);
        let s = coupling_spherical(&g, 1.0).unwrap();
        assert_eq!(s.collective_decay1, s.collective_decay2);
        assert_eq!(s.collective_shift1, s.collective_shift2);
        assert_eq!(s.collective_decay1.im, 0.0);
        assert_eq!(s.collective_shift1.im, 0.0);
    }
}

#[test]
fn far_zone_radial_decay() {
    let f = radial_functions(2.0 * std::f64::consts::PI * 10.0).unwrap();
    assert!(f.pi.abs() < 0.02 && f.qi.abs() < 0.02 && f.pr.abs() < 0.02 && f.qr.abs() < 0.02);
}

proptest! {
    #[test]
    fn tensor_is_symmetric(theta in 0.0f64..1.0, phi in 0.0f64..2.0, r in 0.001f64..20.0) {
        let g = Geometry64::from_pi_units(theta, phi, r).unwrap();
        prop_assert!(chi_tensor(&g).unwrap().max_asymmetry() < 1e-12);
    }

    #[test]
    fn spherical_cross_magnitude_is_azimuth_free(theta in 0.0f64..1.0, phi in 0.0f64..2.0, r in 0.01f64..5.0) {
        let a = coupling_spherical(&Geometry64::from_pi_units(theta, 0.0, r).unwrap(), 1.0).unwrap();
        let b = coupling_spherical(&Geometry64::from_pi_units(theta, phi, r).unwrap(), 1.0).unwrap();
        prop_assert!((a.cross_decay.norm() - b.cross_decay.norm()).abs() < 1e-12 * (1.0 + a.cross_decay.norm()));
        prop_assert!((a.cross_shift.norm() - b.cross_shift.norm()).abs() < 1e-12 * (1.0 + a.cross_shift.norm()));
        prop_assert_eq!(a.collective_decay1, b.collective_decay1);
    }
}
