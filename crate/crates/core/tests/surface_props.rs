use mixed_surfaces::minkowski::{lorentz_transform, MinkVector3};
use mixed_surfaces::presets;
use mixed_surfaces::surface::{adapted_data, gauss_codazzi_residuals, invariants_at, l_chart_surface, l_gauss_map};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn invariants_are_isometry_invariant(phi in -3.0..3.0f64, a in -0.7..0.7f64, b in -0.7..0.7f64, u in -0.6..0.6f64) {
        let f = presets::four_f1::<f64>();
        let g = f.transformed(&lorentz_transform(phi, a, b), &MinkVector3::new(0.5, -1.0, 2.0));
        let (x, y) = (invariants_at(&f, (u, 0.0), 8).unwrap(), invariants_at(&g, (u, 0.0), 8).unwrap());
        for (p, q) in [(x.kappa_l, y.kappa_l), (x.kappa_n, y.kappa_n), (x.kappa_g, y.kappa_g)] {
            prop_assert!((p.unwrap() - q.unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn surface_kappa_l_is_intrinsic(u in -0.9..0.9f64) {
        let r = invariants_at(&presets::four_f1::<f64>(), (u, 0.0), 8).unwrap();
        prop_assert!((r.kappa_l.unwrap() - r.kappa_l_intrinsic.unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn l_gauss_frame_conditions(u in -0.9..0.9f64, v in -0.2..0.2f64) {
        for f in [presets::four_f1::<f64>(), presets::two_f1()] {
            if let Ok(d) = l_gauss_map(&f, (u, v), None) {
                prop_assert!(d.frame_residual() <= 1e-9);
                prop_assert!(d.cross_residual() <= 1e-9);
            }
        }
    }

    #[test]
    fn extracted_data_satisfy_gauss_codazzi(u in -0.5..0.5f64) {
        let (_, g) = l_chart_surface(&presets::four_f1::<f64>(), (u, 0.0), 14).unwrap();
        let d = adapted_data(&g, (0.0, 0.0), 10, None).unwrap();
        let r = gauss_codazzi_residuals(&d.e, &d.g, &d.x, &d.y, &d.z, 0.03, 7).unwrap();
        prop_assert!(r.iter().all(|&x| x <= 1e-7), "{r:?}");
    }
}
