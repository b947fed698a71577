use mixed_surfaces::curves::{analyze, circle_invariants, frame_series, reconstruct_from_invariants, CurveInvariants, CurveType};
use mixed_surfaces::minkowski::{lorentz_transform, MinkVector3};
use mixed_surfaces::series::USeries;
use proptest::prelude::*;

fn frenet(t0: f64, t1: f64, tau0: f64, tau1: f64) -> CurveInvariants<f64> {
    let mut inv = circle_invariants::<f64>(16);
    inv.theta = USeries::from_fn(16, |k| [t0, t1].get(k).copied().unwrap_or(0.0));
    inv.torsion = USeries::from_fn(16, |k| [tau0, tau1].get(k).copied().unwrap_or(0.0));
    inv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frenet_round_trip(t0 in 0.3..2.0f64, t1 in -0.5..0.5f64, tau0 in -1.0..1.0f64, tau1 in -0.5..0.5f64) {
        let inv = frenet(t0, t1, tau0, tau1);
        let back = analyze(&reconstruct_from_invariants(&inv, 16).unwrap()).unwrap();
        prop_assert_eq!(back.kind, CurveType::S);
        for k in 0..=10 {
            prop_assert!((back.theta.coeff(k) - inv.theta.coeff(k)).abs() <= 1e-8);
            prop_assert!((back.torsion.coeff(k) - inv.torsion.coeff(k)).abs() <= 1e-8);
        }
    }

    #[test]
    fn frame_gram_is_conserved(t0 in 0.3..2.0f64, t1 in -0.5..0.5f64, tau0 in -1.0..1.0f64, s in -0.1..0.1f64) {
        let inv = frenet(t0, t1, tau0, 0.0);
        let fr = frame_series(&inv, 14).unwrap();
        let at = |i: usize| MinkVector3::new(fr[i].x1.eval(s), fr[i].x2.eval(s), fr[i].x3.eval(s));
        let want = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                prop_assert!((at(i).inner(&at(j)) - w).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn classification_is_isometry_invariant(phi in -3.0..3.0f64, a in -0.8..0.8f64, b in -0.8..0.8f64, tau0 in -1.0..1.0f64) {
        let inv = frenet(1.0, 0.2, tau0, 0.0);
        let c = reconstruct_from_invariants(&inv, 14).unwrap();
        let moved = c.transformed(&lorentz_transform(phi, a, b), &MinkVector3::new(0.3, -0.2, 0.1));
        let (x, y) = (analyze(&c).unwrap(), analyze(&moved).unwrap());
        prop_assert_eq!(x.kind, y.kind);
        for k in 0..=8 {
            prop_assert!((x.theta.coeff(k) - y.theta.coeff(k)).abs() <= 1e-10);
            prop_assert!((x.torsion.coeff(k) - y.torsion.coeff(k)).abs() <= 1e-10);
        }
    }
}
