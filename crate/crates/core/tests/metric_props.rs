use mixed_surfaces::metric::{
    classify_semidefinite, geodesic_curvature_christoffel, kappa_tilde_l, min_eigenvalue, pullback_metric, straight_line,
    to_l_coordinates, trace_semidefinite_set, characteristic_curve, Domain, MetricField, SemidefiniteKind,
};
use mixed_surfaces::presets;
use mixed_surfaces::series::{Algebra, BiSeries};
use proptest::prelude::*;

fn metric(e: String, f: String, g: String) -> MetricField<f64> {
    MetricField::parse(&e, &f, &g, Domain::square(0.25)).unwrap()
}

#[test]
fn semidefinite_points_are_positive_semidefinite() {
    for m in [presets::torus_metric(2.0).unwrap(), presets::type_one_metric(), presets::type_two_metric()] {
        let comps = trace_semidefinite_set(&m, m.domain, (61, 61)).unwrap();
        assert!(!comps.is_empty());
        for p in comps.iter().flat_map(|c| c.points.iter()) {
            assert!(min_eigenvalue(m.gram(p.u, p.v).unwrap()) >= -1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kappa_tilde_is_invariant(a in 0.5..2.0f64, d in -2.0..-0.5f64, c in -1.0..1.0f64, q in prop::array::uniform4(-1.0..1.0f64)) {
        let m = metric("1 + 2*v + u*v".into(), "0".into(), "v*(1 + u)".into());
        let reference = kappa_tilde_l(&m, (0.0, 0.0)).unwrap();
        let jets = m.jets(0.0, 0.0, 4).unwrap();
        let x = BiSeries::var_u(0.0, 4);
        let y = BiSeries::var_v(0.0, 4);
        let uu = x.scale(a) + (x.clone() * y.clone()).scale(q[0]) + (y.clone() * y.clone()).scale(q[1]);
        let vv = x.scale(c) + y.scale(d) + (x.clone() * x.clone()).scale(q[2]) + (y.clone() * y).scale(q[3]);
        let p = pullback_metric(&jets, &uu, &vv);
        let moved = MetricField::from_series(p.e, p.f, p.g, (0.0, 0.0), Domain::square(0.1));
        prop_assert!((kappa_tilde_l(&moved, (0.0, 0.0)).unwrap() - reference).abs() <= 1e-9);
    }

    #[test]
    fn limiting_geodesic_curvature_is_two_sided(c in 0.5..3.0f64, b in -1.0..1.0f64, k in 0.5..2.0f64) {
        let m = metric(format!("1 + ({c})*v"), "0".into(), format!("({k})*u*(1 + ({b})*u)"));
        let line = straight_line((0.0, 0.0), [1.0, 0.0], 6);
        let t = 1e-8;
        let lim = |s: f64| s.abs().sqrt() * geodesic_curvature_christoffel(&m, &line, s).unwrap();
        prop_assert!((lim(t) - lim(-t)).abs() <= 1e-6);
        prop_assert!((lim(t) + c / (2.0 * k.sqrt())).abs() <= 1e-6);
    }

    #[test]
    fn type_matches_g_v_in_l_coordinates(a in -1.0..1.0f64, b in -1.0..1.0f64, s in prop::bool::ANY) {
        let g = if s { format!("v*(1 + ({a})*u) + ({b})*v^2") } else { format!("u*(1 + ({a})*v) + ({b})*u^2") };
        let m = metric("1 + 2*v".into(), "0".into(), g);
        let kind = classify_semidefinite(&m, (0.0, 0.0)).unwrap();
        let c = match kind {
            SemidefiniteKind::TypeI => characteristic_curve(&m, (0.0, 0.0), 7).unwrap(),
            SemidefiniteKind::TypeII => straight_line((0.0, 0.0), [1.0, 0.0], 7),
        };
        let chart = to_l_coordinates(&m, &c, 6).unwrap();
        prop_assert_eq!(kind == SemidefiniteKind::TypeI, chart.g.coeff(0, 1).abs() > 1e-8);
        prop_assert_eq!(kind == SemidefiniteKind::TypeI, s);
    }
}
