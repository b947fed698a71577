//! Built-in closed-form surfaces, metrics and curves.

use crate::curves::{analyze, circle_invariants, CurveInvariants, CurveModel};
use crate::error::{GeomError, Result};
use crate::expr::{parse, Var};
use crate::metric::{Domain, MetricField};
use crate::minkowski::{Matrix3, MinkVector3};
use crate::scalar::{lit, Scalar};
use crate::surface::SurfacePatch;

/// Domain `(-1, 1) × (-1/4, 1/4)` of the four-branch example.
pub fn four_domain<T: Scalar>() -> Domain<T> {
    Domain::new((-T::one(), T::one()), (lit(-0.25), lit(0.25)))
}

/// Domain `(-1, 1) × (-1/8, 1/8)` of the two-branch example.
pub fn two_domain<T: Scalar>() -> Domain<T> {
    Domain::new((-T::one(), T::one()), (lit(-0.125), lit(0.125)))
}

/// Cuspidal-edge type surface whose lightlike set is the `u`-axis and whose
/// lightlike image lies on the circle `(cos u - 1, sin u, 0)`.
pub fn four_f1<T: Scalar>() -> SurfacePatch<T> {
    SurfacePatch::parse(
        "(1 - (u+2)*(v + v^2/2))*cos(u) - 1",
        "(1 - (u+2)*(v + v^2/2))*sin(u)",
        "(u+2)*(v - v^2/2)",
        four_domain(),
    )
    .expect("preset expressions parse")
}

/// `f₁, Sf₁, Rf₁, RSf₁` for `i = 1..=4`.
pub fn four<T: Scalar>(i: usize) -> Result<SurfacePatch<T>> {
    let f = four_f1::<T>();
    let a = match i {
        1 => return Ok(f),
        2 => Matrix3::s(),
        3 => Matrix3::r(),
        4 => Matrix3::r().mul(&Matrix3::s()),
        _ => return Err(GeomError::invalid(format!("the four-branch example has no surface {i}"))),
    };
    Ok(f.transformed(&a, &MinkVector3::zero()))
}

/// `γ(u) + (u+2) v (-ξ(u) + v ζ)` with `γ = (u, -u²/2, u²/2)`, a lightlike
/// curvature vector curve.
pub fn two_f1<T: Scalar>() -> SurfacePatch<T> {
    SurfacePatch::parse(
        "u + (u+2)*v*(-2*u)",
        "-u^2/2 + (u+2)*v*(-(1-u^2) - v)",
        "u^2/2 + (u+2)*v*(-(1+u^2) + v)",
        two_domain(),
    )
    .expect("preset expressions parse")
}

/// `f₁` and `diag(-1, 1, 1) f₁` for `i = 1, 2`.
pub fn two<T: Scalar>(i: usize) -> Result<SurfacePatch<T>> {
    let f = two_f1::<T>();
    match i {
        1 => Ok(f),
        2 => Ok(f.transformed(&Matrix3::diag(-T::one(), T::one(), T::one()), &MinkVector3::zero())),
        _ => Err(GeomError::invalid(format!("the two-branch example has no surface {i}"))),
    }
}

/// Invariants of the circle `(cos u - 1, sin u, 0)` at `u = 0`.
pub fn four_curve<T: Scalar>(order: usize) -> CurveInvariants<T> {
    circle_invariants(order)
}

/// Invariants of `(u, -u²/2, u²/2)` at `u = 0`.
pub fn two_curve<T: Scalar>(order: usize) -> Result<CurveInvariants<T>> {
    let x = [parse("u")?, parse("-u^2/2")?, parse("u^2/2")?];
    let c = CurveModel::from_exprs([&x[0], &x[1], &x[2]], Var::U, T::zero(), order)?;
    analyze(&c)
}

/// `du² + cos u (r + cos u) dv²`, the second fundamental form of a torus of
/// revolution, on `[0, 2π] × [-1, 1]`.
pub fn torus_metric<T: Scalar>(r: T) -> Result<MetricField<T>> {
    let r = r.to_f64().unwrap_or(f64::NAN);
    if !(r > 1.0) {
        return Err(GeomError::invalid("the torus needs r > 1"));
    }
    MetricField::parse(
        "1",
        "0",
        &format!("cos(u)*({r} + cos(u))"),
        Domain::new((T::zero(), lit(2.0 * std::f64::consts::PI)), (-T::one(), T::one())),
    )
}

/// Pullback metric of [`four_f1`].
pub fn four_metric<T: Scalar>() -> MetricField<T> {
    MetricField::from_surface(four_f1())
}

/// Pullback metric of [`two_f1`].
pub fn two_metric<T: Scalar>() -> MetricField<T> {
    MetricField::from_surface(two_f1())
}

/// `(1 + 2v) du² + v dv²`: type I along the `u`-axis with `κ̃_L ≡ -1`.
pub fn type_one_metric<T: Scalar>() -> MetricField<T> {
    MetricField::parse("1 + 2*v", "0", "v", Domain::square(lit(0.25))).expect("preset expressions parse")
}

/// `(1 + 2v) du² + u dv²`: type II along the `v`-axis with `μ_c = -1`.
pub fn type_two_metric<T: Scalar>() -> MetricField<T> {
    MetricField::parse("1 + 2*v", "0", "u", Domain::square(lit(0.25))).expect("preset expressions parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_f1_at_origin() {
        let f = four_f1::<f64>();
        let [e, fm, g] = f.first_fundamental_form().gram(0.0, 0.0).unwrap();
        assert!((e - 1.0).abs() < 1e-14 && fm.abs() < 1e-14 && g.abs() < 1e-14);
    }

    #[test]
    fn realizing_the_four_metric_recovers_f1() {
        use crate::realization::{realize_all, RealizationProblem};
        let pb = RealizationProblem::from_metric(&four_metric::<f64>(), (0.0, 0.0), four_curve(12), 10).unwrap();
        let all = realize_all(&pb, 0.05).unwrap();
        assert_eq!(all.len(), 4);
        let chart = pb.chart.clone().unwrap();
        let target = four_f1::<f64>().in_chart(&chart, Domain::square(0.05)).unwrap();
        let dist: Vec<f64> = all
            .iter()
            .map(|s| {
                let mut d: f64 = 0.0;
                for i in -5..=5 {
                    for j in -5..=5 {
                        let (u, v) = (0.01 * i as f64, 0.01 * j as f64);
                        d = d.max((s.point(u, v) - target.point(u, v).unwrap()).norm_inf());
                    }
                }
                d
            })
            .collect();
        for s in &all {
            assert!(s.residuals.max() < 1e-6, "{:?} {:?}", s.branch, s.residuals);
        }
        assert!(dist[1] < 1e-7, "{dist:?}");
        assert!(dist.iter().enumerate().all(|(i, &d)| i == 1 || d > 1e-3), "{dist:?}");
    }

    #[test]
    fn realizing_the_two_metric_gives_two_branches() {
        use crate::realization::{realize_all, RealizationProblem};
        let pb = RealizationProblem::from_metric(&two_metric::<f64>(), (0.0, 0.0), two_curve(16).unwrap(), 10).unwrap();
        let all = realize_all(&pb, 0.05).unwrap();
        assert_eq!(all.len(), 2);
        for s in &all {
            assert!(s.residuals.metric < 1e-6 && s.residuals.curve < 1e-9, "{:?} {:?}", s.branch, s.residuals);
        }
        let chart = pb.chart.clone().unwrap();
        let target = two_f1::<f64>().in_chart(&chart, Domain::square(0.05)).unwrap();
        let d: Vec<f64> = all.iter().map(|s| (s.point(0.03, 0.02) - target.point(0.03, 0.02).unwrap()).norm_inf()).collect();
        assert!(d.iter().any(|&x| x < 1e-7), "{d:?}");
    }

    #[test]
    fn two_curve_is_type_l() {
        let inv = two_curve::<f64>(8).unwrap();
        assert!(!inv.kind.is_frenet());
        assert!(inv.theta.max_abs_coeff() < 1e-12);
    }

    #[test]
    fn branch_indices() {
        assert!(four::<f64>(5).is_err());
        assert!(two::<f64>(3).is_err());
        assert!(torus_metric(0.5f64).is_err());
    }
}
