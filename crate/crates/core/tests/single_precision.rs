use mixed_surfaces::minkowski::MinkVector3;
use mixed_surfaces::presets;
use mixed_surfaces::surface::invariants_along_ld;

#[test]
fn vector_identities_hold_in_f32() {
    let (u, v, w) = (
        MinkVector3::<f32>::new(0.3, -1.2, 0.7),
        MinkVector3::<f32>::new(1.1, 0.4, -0.5),
        MinkVector3::<f32>::new(-0.2, 0.9, 1.3),
    );
    let lhs = u.cross(&v.cross(&w));
    let rhs = w.scale(u.inner(&v)) - v.scale(u.inner(&w));
    assert!((lhs - rhs).norm_inf() < 1e-5);
}

#[test]
fn lightlike_locus_is_found_in_f32() {
    let f = presets::four_f1::<f32>();
    let r = invariants_along_ld(&f, (41, 21), 6).unwrap();
    let pts: Vec<_> = r.points().collect();
    assert!(!pts.is_empty());
    assert!(pts.iter().all(|p| p.v.abs() < 1e-3));
}

#[test]
fn realization_runs_in_f32() {
    use mixed_surfaces::realization::{realize_all, RealizationProblem};
    let pb = RealizationProblem::from_metric(&presets::four_metric::<f32>(), (0.0, 0.0), presets::four_curve(12), 6).unwrap();
    let all = realize_all(&pb, 0.05).unwrap();
    assert_eq!(all.len(), 4);
    assert!(all.iter().all(|s| s.residuals.metric < 1e-3));
}
