use super::{null_direction_of, MetricField, MetricJets};
use crate::error::{GeomError, Result};
use crate::scalar::{lit, tolerance, Scalar};
use crate::series::{Algebra, BiSeries, USeries};

/// Curve in the parameter plane: `base + (du(t), dv(t))` with
/// `du(0) = dv(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve<T> {
    pub base: (T, T),
    pub du: USeries<T>,
    pub dv: USeries<T>,
}

impl<T: Scalar> PlaneCurve<T> {
    pub fn point(&self, t: T) -> (T, T) {
        (self.base.0 + self.du.eval(t), self.base.1 + self.dv.eval(t))
    }

    pub fn tangent(&self) -> [T; 2] {
        [self.du.coeff(1), self.dv.coeff(1)]
    }

    /// Point, velocity and acceleration at `t`.
    pub fn derivatives(&self, t: T) -> ((T, T), [T; 2], [T; 2]) {
        let (a1, b1) = (self.du.diff(), self.dv.diff());
        let (a2, b2) = (a1.diff(), b1.diff());
        (self.point(t), [a1.eval(t), b1.eval(t)], [a2.eval(t), b2.eval(t)])
    }

    pub fn order(&self) -> usize {
        self.du.order().min(self.dv.order())
    }
}

/// Straight line `p + t d`.
pub fn straight_line<T: Scalar>(p: (T, T), d: [T; 2], order: usize) -> PlaneCurve<T> {
    let t = USeries::variable(T::zero(), order);
    PlaneCurve {
        base: p,
        du: t.scale(d[0]),
        dv: t.scale(d[1]),
    }
}

/// Parametrization of `λ = 0` through `p`, as a series.
///
/// The curve is `t τ + φ(t) n` about `p`, with `n = ∇λ/|∇λ|`, tangent
/// `τ = (λ_v, -λ_u)/|∇λ|`, and `φ` found by Newton iteration on series.
pub fn characteristic_curve<T: Scalar>(g: &MetricField<T>, p: (T, T), order: usize) -> Result<PlaneCurve<T>> {
    let lam = g.jets(p.0, p.1, order)?.lambda();
    zero_set_curve(&lam, p)
}

pub(crate) fn zero_set_curve<T: Scalar>(lam: &BiSeries<T>, p: (T, T)) -> Result<PlaneCurve<T>> {
    let (lu, lv) = (lam.coeff(1, 0), lam.coeff(0, 1));
    let gn = (lu * lu + lv * lv).sqrt();
    let scale = T::one().max(lam.max_abs_coeff());
    if gn <= tolerance::<T>(1e-10) * scale {
        return Err(GeomError::degenerate("dλ = 0: no regular characteristic curve"));
    }
    if lam.value().abs() > tolerance::<T>(1e-8) * scale {
        return Err(GeomError::invalid(format!("λ = {} ≠ 0 at the base point", lam.value())));
    }
    let tau = [lv / gn, -lu / gn];
    let nrm = [lu / gn, lv / gn];
    let n = lam.order();
    let x = BiSeries::var_u(T::zero(), n);
    let y = BiSeries::var_v(T::zero(), n);
    let lam_ty = lam.compose(&(x.scale(tau[0]) + y.scale(nrm[0])), &(x.scale(tau[1]) + y.scale(nrm[1])));
    let dlam = lam_ty.diff_v();
    let t = USeries::variable(T::zero(), n);
    let mut phi = USeries::zeros(n);
    for _ in 0..=n + 2 {
        let r = lam_ty.compose_curve(&t, &phi);
        let d = dlam.compose_curve(&t.truncate(n - 1), &phi.truncate(n - 1));
        let step = r.truncate(n - 1).div(&d)?;
        let size = step.max_abs_coeff();
        phi = phi - step.truncate(n).with_constant_zero();
        if size <= lit::<T>(1e-15) * scale {
            break;
        }
    }
    Ok(PlaneCurve {
        base: p,
        du: t.scale(tau[0]) + phi.scale(nrm[0]),
        dv: t.scale(tau[1]) + phi.scale(nrm[1]),
    })
}

trait ZeroConstant {
    fn with_constant_zero(self) -> Self;
}

impl<T: Scalar> ZeroConstant for USeries<T> {
    fn with_constant_zero(mut self) -> Self {
        self.set(0, T::zero());
        self
    }
}

/// Pulls `(E, F, G)` back along `(a(x,y), b(x,y))` with zero constant terms.
pub fn pullback_metric<T: Scalar>(j: &MetricJets<T>, a: &BiSeries<T>, b: &BiSeries<T>) -> MetricJets<T> {
    let e0 = j.e.compose(a, b);
    let f0 = j.f.compose(a, b);
    let g0 = j.g.compose(a, b);
    let (ax, ay, bx, by) = (a.diff_u(), a.diff_v(), b.diff_u(), b.diff_v());
    let two = lit::<T>(2.0);
    MetricJets {
        e: e0.clone() * ax.clone() * ax.clone() + (f0.clone() * ax.clone() * bx.clone()).scale(two) + g0.clone() * bx.clone() * bx.clone(),
        f: e0.clone() * ax.clone() * ay.clone()
            + f0.clone() * (ax.clone() * by.clone() + ay.clone() * bx.clone())
            + g0.clone() * bx.clone() * by.clone(),
        g: e0 * ay.clone() * ay.clone() + (f0 * ay.clone() * by.clone()).scale(two) + g0 * by.clone() * by,
    }
}

/// L-coordinate system about a point: original coordinates are
/// `center + (u(x,y), v(x,y))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LChart<T> {
    pub center: (T, T),
    pub map_u: BiSeries<T>,
    pub map_v: BiSeries<T>,
    pub e: BiSeries<T>,
    pub f: BiSeries<T>,
    pub g: BiSeries<T>,
    /// Largest coefficient of the transformed `F`.
    pub f_residual: T,
    /// Largest coefficient of `E(u,0) - 1`.
    pub arclength_residual: T,
}

impl<T: Scalar> LChart<T> {
    pub fn order(&self) -> usize {
        self.e.order()
    }

    /// Original parameters of chart point `(x, y)`.
    pub fn to_original(&self, x: T, y: T) -> (T, T) {
        (self.center.0 + self.map_u.eval(x, y), self.center.1 + self.map_v.eval(x, y))
    }

    pub fn metric_jets(&self) -> MetricJets<T> {
        MetricJets {
            e: self.e.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
        }
    }
}

/// Builds L-coordinates along a non-null curve `c` through a semidefinite
/// point: `F ≡ 0`, `∂_y` null on the semidefinite set, `c` is the `x`-axis
/// with `E(x, 0) = 1`.
///
/// The curve is first straightened along the null direction at its base
/// point, then the transversal coordinate lines are bent into integral
/// curves of `(-F, E)` by Picard iteration, and finally `x` is replaced by
/// arclength. `order` is the truncation order of the returned metric.
pub fn to_l_coordinates<T: Scalar>(g: &MetricField<T>, c: &PlaneCurve<T>, order: usize) -> Result<LChart<T>> {
    let w = order;
    let p = c.base;
    let jets = g.jets(p.0, p.1, w)?;
    let gram = [jets.e.value(), jets.f.value(), jets.g.value()];
    let mut n0 = null_direction_of(gram)?;
    let t0 = c.tangent();
    let cross = t0[0] * n0[1] - t0[1] * n0[0];
    let tn = (t0[0] * t0[0] + t0[1] * t0[1]).sqrt();
    if cross.abs() <= tolerance::<T>(1e-8) * tn {
        return Err(GeomError::invalid("curve is tangent to the null direction"));
    }
    if cross < T::zero() {
        n0 = [-n0[0], -n0[1]];
    }
    let x = BiSeries::var_u(T::zero(), w + 1);
    let y = BiSeries::var_v(T::zero(), w + 1);
    let cu = BiSeries::from_useries_u(&c.du, w + 1);
    let cv = BiSeries::from_useries_u(&c.dv, w + 1);
    let a0 = cu + y.scale(n0[0]);
    let b0 = cv + y.scale(n0[1]);
    let m0 = pullback_metric(&jets, &a0, &b0);
    if m0.e.value() <= T::zero() {
        return Err(GeomError::invalid("curve is not spacelike for the metric at its base point"));
    }
    let ratio = (-m0.f.clone()).div(&m0.e)?;

    // ξ_y = -F/E (ξ, y), ξ(x, 0) = x; each sweep fixes one more power of y.
    let mut xi = x.clone();
    for _ in 0..=w + 1 {
        let r = ratio.compose(&xi.with_order(w), &y.with_order(w));
        let next = x.clone() + r.antideriv_v();
        let change = (next.clone() - xi.clone()).max_abs_coeff();
        xi = next;
        if change == T::zero() {
            break;
        }
    }
    let a1 = a0.compose(&xi, &y);
    let b1 = b0.compose(&xi, &y);
    let m1 = pullback_metric(&jets, &a1, &b1);

    // arclength along the curve
    let speed = m1.e.restrict_v0().sqrt()?;
    let s = speed.antideriv();
    let x_of_s = s.truncate(w + 1).reversion()?;
    let xs = BiSeries::from_useries_u(&x_of_s, w + 1);
    let map_u = a1.compose(&xs, &y);
    let map_v = b1.compose(&xs, &y);
    let m = pullback_metric(&jets, &map_u, &map_v);

    let f_residual = m.f.max_abs_coeff();
    let ev = m.e.restrict_v0();
    let arclength_residual = (0..=ev.order())
        .map(|k| (ev.coeff(k) - if k == 0 { T::one() } else { T::zero() }).abs())
        .fold(T::zero(), T::max);
    // relative to the output: high-order coefficients grow like the inverse convergence radius
    let tol = tolerance::<T>(1e-9)
        * T::one()
            .max(jets.e.max_abs_coeff())
            .max(jets.g.max_abs_coeff())
            .max(m.e.max_abs_coeff())
            .max(m.g.max_abs_coeff());
    if f_residual > tol || arclength_residual > tol {
        return Err(GeomError::NoConvergence {
            what: "L-coordinate straightening".into(),
            residual: f_residual.max(arclength_residual).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(LChart {
        center: p,
        map_u,
        map_v,
        e: m.e,
        f: m.f,
        g: m.g,
        f_residual,
        arclength_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Domain;

    fn metric(e: &str, f: &str, g: &str) -> MetricField<f64> {
        MetricField::parse(e, f, g, Domain::new((-1.0, 1.0), (-1.0, 1.0))).unwrap()
    }

    #[test]
    fn already_l_form_is_identity() {
        let g = metric("1 + 2*v", "0", "v");
        let c = straight_line((0.0, 0.0), [1.0, 0.0], 9);
        let ch = to_l_coordinates(&g, &c, 8).unwrap();
        for (i, j, x) in ch.map_u.coeffs() {
            let want = if (i, j) == (1, 0) { 1.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-14);
        }
        for (i, j, x) in ch.map_v.coeffs() {
            let want = if (i, j) == (0, 1) { 1.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-14);
        }
    }

    #[test]
    fn arclength_rescaling() {
        let g = metric("4", "0", "v");
        let c = straight_line((0.0, 0.0), [1.0, 0.0], 9);
        let ch = to_l_coordinates(&g, &c, 8).unwrap();
        assert!((ch.map_u.coeff(1, 0) - 0.5).abs() < 1e-15);
        assert!((ch.map_v.coeff(0, 1) - 1.0).abs() < 1e-15);
        assert!((ch.e.value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn general_metric_is_straightened() {
        // λ = (1 + u²)(v + u v) - (u v)² vanishes on v = 0 with ∂_v transversal.
        let g = metric("1 + u^2", "u*v", "v + u*v + v^2");
        let c = characteristic_curve(&g, (0.0, 0.0), 10).unwrap();
        let ch = to_l_coordinates(&g, &c, 10).unwrap();
        assert!(ch.f_residual < 1e-12, "{}", ch.f_residual);
        assert!(ch.arclength_residual < 1e-12);
        // ∂_y is null on the x-axis
        assert!(ch.g.restrict_v0().max_abs_coeff() < 1e-12);
    }

    #[test]
    fn characteristic_curve_of_tilted_locus() {
        let g = metric("1", "0", "v - u^2 + 0.5*u");
        let c = characteristic_curve(&g, (0.0, 0.0), 20).unwrap();
        for &t in &[0.05, -0.1, 0.02] {
            let (u, v) = c.point(t);
            let l = g.lambda(u, v).unwrap();
            assert!(l.abs() < 1e-11, "{t} {l}");
        }
    }
}
