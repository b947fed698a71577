//! Mixed type metrics `E du² + 2F du dv + G dv²`: semidefinite set,
//! type I/II points, intrinsic invariants and L-coordinates.

mod chart;
mod trace;

pub use chart::{characteristic_curve, pullback_metric, straight_line, to_l_coordinates, LChart, PlaneCurve};
pub use trace::{trace_semidefinite_set, LocusComponent, LocusVertex};

use crate::error::{GeomError, Result};
use crate::expr::Expr;
use crate::scalar::{lit, tolerance, Scalar};
use crate::series::{Algebra, BiSeries};
use crate::surface::SurfacePatch;

/// Rectangular parameter domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain<T> {
    pub u: (T, T),
    pub v: (T, T),
}

impl<T: Scalar> Domain<T> {
    pub fn new(u: (T, T), v: (T, T)) -> Self {
        Self { u, v }
    }

    /// Square of half-width `rho` about the origin.
    pub fn square(rho: T) -> Self {
        Self::new((-rho, rho), (-rho, rho))
    }

    pub fn contains(&self, u: T, v: T) -> bool {
        u >= self.u.0 && u <= self.u.1 && v >= self.v.0 && v <= self.v.1
    }
}

#[derive(Clone, Debug)]
enum MetricRepr<T> {
    Exprs([Expr; 3]),
    Series { efg: [BiSeries<T>; 3], center: (T, T) },
    Surface(Box<SurfacePatch<T>>),
}

/// A metric given by formulas, by series about a center, or as the first
/// fundamental form of a surface patch.
#[derive(Clone, Debug)]
pub struct MetricField<T> {
    repr: MetricRepr<T>,
    pub domain: Domain<T>,
}

/// Local Taylor data `(E, F, G)` about a point, in displacement coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJets<T> {
    pub e: BiSeries<T>,
    pub f: BiSeries<T>,
    pub g: BiSeries<T>,
}

impl<T: Scalar> MetricJets<T> {
    pub fn lambda(&self) -> BiSeries<T> {
        self.e.clone() * self.g.clone() - self.f.clone() * self.f.clone()
    }

    pub fn order(&self) -> usize {
        self.e.order().min(self.f.order()).min(self.g.order())
    }
}

impl<T: Scalar> MetricField<T> {
    pub fn from_exprs(e: Expr, f: Expr, g: Expr, domain: Domain<T>) -> Self {
        Self {
            repr: MetricRepr::Exprs([e, f, g]),
            domain,
        }
    }

    /// Parses the three coefficient formulas.
    pub fn parse(e: &str, f: &str, g: &str, domain: Domain<T>) -> Result<Self> {
        Ok(Self::from_exprs(
            crate::expr::parse(e)?,
            crate::expr::parse(f)?,
            crate::expr::parse(g)?,
            domain,
        ))
    }

    pub fn from_series(e: BiSeries<T>, f: BiSeries<T>, g: BiSeries<T>, center: (T, T), domain: Domain<T>) -> Self {
        Self {
            repr: MetricRepr::Series { efg: [e, f, g], center },
            domain,
        }
    }

    pub fn from_surface(f: SurfacePatch<T>) -> Self {
        let domain = f.domain;
        Self {
            repr: MetricRepr::Surface(Box::new(f)),
            domain,
        }
    }

    pub fn exprs(&self) -> Option<&[Expr; 3]> {
        match &self.repr {
            MetricRepr::Exprs(e) => Some(e),
            _ => None,
        }
    }

    /// `(E, F, G)` expanded about `(u, v)` to `order`.
    pub fn jets(&self, u: T, v: T, order: usize) -> Result<MetricJets<T>> {
        match &self.repr {
            MetricRepr::Exprs([e, f, g]) => Ok(MetricJets {
                e: e.eval_jet((u, v), order)?.series,
                f: f.eval_jet((u, v), order)?.series,
                g: g.eval_jet((u, v), order)?.series,
            }),
            MetricRepr::Series { efg, center } => {
                let (du, dv) = (u - center.0, v - center.1);
                let r = |s: &BiSeries<T>| s.recenter(du, dv).with_order(order);
                Ok(MetricJets {
                    e: r(&efg[0]),
                    f: r(&efg[1]),
                    g: r(&efg[2]),
                })
            }
            MetricRepr::Surface(f) => f.metric_jets(u, v, order),
        }
    }

    /// `[E, F, G]` at a point.
    pub fn gram(&self, u: T, v: T) -> Result<[T; 3]> {
        let j = self.jets(u, v, 0)?;
        Ok([j.e.value(), j.f.value(), j.g.value()])
    }

    /// Discriminant `λ = EG - F²` at a point.
    pub fn lambda(&self, u: T, v: T) -> Result<T> {
        let [e, f, g] = self.gram(u, v)?;
        Ok(e * g - f * f)
    }

    /// `λ` with its gradient.
    pub fn lambda_gradient(&self, u: T, v: T) -> Result<(T, [T; 2])> {
        let l = self.jets(u, v, 1)?.lambda();
        Ok((l.value(), [l.coeff(1, 0), l.coeff(0, 1)]))
    }

    /// Discriminant as a formula, when the metric is given by formulas.
    pub fn discriminant_expr(&self) -> Option<Expr> {
        let [e, f, g] = self.exprs()?;
        Some(e.clone() * g.clone() - f.clone() * f.clone())
    }
}

/// Smallest eigenvalue of the symmetric 2x2 Gram matrix.
pub fn min_eigenvalue<T: Scalar>(gram: [T; 3]) -> T {
    let [e, f, g] = gram;
    let half = lit::<T>(0.5);
    let m = (e + g) * half;
    let d = (((e - g) * half).powi(2) + f * f).sqrt();
    m - d
}

/// Unit vector spanning the kernel of the Gram matrix at a semidefinite
/// point, oriented with nonnegative `v`-component (ties broken by `u`).
pub fn null_direction<T: Scalar>(g: &MetricField<T>, p: (T, T)) -> Result<[T; 2]> {
    null_direction_of(g.gram(p.0, p.1)?)
}

pub(crate) fn null_direction_of<T: Scalar>(gram: [T; 3]) -> Result<[T; 2]> {
    let [e, f, g] = gram;
    let scale = e.abs().max(f.abs()).max(g.abs());
    if scale <= lit(1e-14) {
        return Err(GeomError::invalid("Gram matrix vanishes; the null space is not a line"));
    }
    let (a, b) = if e.abs() >= g.abs() { (-f, e) } else { (g, -f) };
    let n = (a * a + b * b).sqrt();
    let (mut a, mut b) = (a / n, b / n);
    let tie = tolerance::<T>(1e-12);
    if b < -tie || (b.abs() <= tie && a < T::zero()) {
        a = -a;
        b = -b;
    }
    Ok([a, b])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemidefiniteKind {
    /// The null direction is transversal to the semidefinite set.
    TypeI,
    /// The null direction is tangent to the semidefinite set.
    TypeII,
}

/// Relative threshold on `|ηλ| / |dλ|` separating type I from type II.
pub const TYPE_TOL: f64 = 1e-8;

/// Threshold on `κ̃_L` and `μ_c` for genericity.
pub const GENERIC_TOL: f64 = 1e-8;

pub fn classify_semidefinite<T: Scalar>(g: &MetricField<T>, p: (T, T)) -> Result<SemidefiniteKind> {
    let (_, grad) = g.lambda_gradient(p.0, p.1)?;
    let eta = null_direction(g, p)?;
    let gn = (grad[0] * grad[0] + grad[1] * grad[1]).sqrt();
    if gn <= tolerance(1e-12) {
        return Err(GeomError::degenerate("dλ vanishes; the semidefinite point is not admissible"));
    }
    let d = grad[0] * eta[0] + grad[1] * eta[1];
    Ok(if d.abs() > tolerance::<T>(TYPE_TOL) * gn {
        SemidefiniteKind::TypeI
    } else {
        SemidefiniteKind::TypeII
    })
}

/// Metric jets in rotated coordinates `(x, y)` about `p` with `∂_y` null at `p`.
pub fn adjusted_jets<T: Scalar>(g: &MetricField<T>, p: (T, T), order: usize) -> Result<MetricJets<T>> {
    let j = g.jets(p.0, p.1, order)?;
    let eta = null_direction_of([j.e.value(), j.f.value(), j.g.value()])?;
    let w = [eta[1], -eta[0]];
    let x = BiSeries::var_u(T::zero(), order);
    let y = BiSeries::var_v(T::zero(), order);
    let a = x.scale(w[0]) + y.scale(eta[0]);
    let b = x.scale(w[1]) + y.scale(eta[1]);
    let jac = [[w[0], eta[0]], [w[1], eta[1]]];
    Ok(linear_pullback(&j, &a, &b, jac))
}

fn linear_pullback<T: Scalar>(j: &MetricJets<T>, a: &BiSeries<T>, b: &BiSeries<T>, jac: [[T; 2]; 2]) -> MetricJets<T> {
    let e0 = j.e.compose(a, b);
    let f0 = j.f.compose(a, b);
    let g0 = j.g.compose(a, b);
    let [[ax, ay], [bx, by]] = jac;
    let two = lit::<T>(2.0);
    MetricJets {
        e: e0.scale(ax * ax) + f0.scale(two * ax * bx) + g0.scale(bx * bx),
        f: e0.scale(ax * ay) + f0.scale(ax * by + ay * bx) + g0.scale(bx * by),
        g: e0.scale(ay * ay) + f0.scale(two * ay * by) + g0.scale(by * by),
    }
}

/// `κ̃_L = (F_u - E_v/2 - G_u²/(2G_v)) / (E ∛G_v)` from jets in adjusted
/// coordinates (`E > 0`, `F = G = 0` at the origin).
pub fn kappa_tilde_l_adjusted<T: Scalar>(j: &MetricJets<T>) -> Result<T> {
    let e = j.e.value();
    let tol = tolerance::<T>(1e-9) * T::one().max(e.abs());
    if e <= T::zero() || j.f.value().abs() > tol || j.g.value().abs() > tol {
        return Err(GeomError::invalid("coordinates are not adjusted at the point"));
    }
    let gv = j.g.coeff(0, 1);
    if gv.abs() <= tolerance(1e-12) {
        return Err(GeomError::degenerate("G_v = 0: the point is not of type I"));
    }
    let (fu, ev, gu) = (j.f.coeff(1, 0), j.e.coeff(0, 1), j.g.coeff(1, 0));
    let half = lit::<T>(0.5);
    Ok((fu - ev * half - gu * gu / (lit::<T>(2.0) * gv)) / (e * gv.cbrt()))
}

/// Intrinsic lightlike singular curvature at a type I point.
pub fn kappa_tilde_l<T: Scalar>(g: &MetricField<T>, p: (T, T)) -> Result<T> {
    kappa_tilde_l_adjusted(&adjusted_jets(g, p, 2)?)
}

/// Geodesic curvature `-E_v(u,0) / (2 sqrt|λ(u,0)|)` of the `u`-axis of
/// an L-coordinate system.
pub fn geodesic_curvature_l<T: Scalar>(e: &BiSeries<T>, g: &BiSeries<T>, u: T) -> Result<T> {
    let ev = e.diff_v().restrict_v0().eval(u);
    let lam = e.restrict_v0().eval(u) * g.restrict_v0().eval(u);
    if lam == T::zero() {
        return Err(GeomError::domain("geodesic curvature is undefined on the semidefinite set", format!("u = {u}")));
    }
    Ok(-ev / (lit::<T>(2.0) * lam.abs().sqrt()))
}

/// Geodesic curvature of a parameter curve from the Christoffel symbols.
pub fn geodesic_curvature_christoffel<T: Scalar>(g: &MetricField<T>, c: &PlaneCurve<T>, t: T) -> Result<T> {
    let (p, d1, d2) = c.derivatives(t);
    let j = g.jets(p.0, p.1, 1)?;
    let (e, f, gg) = (j.e.value(), j.f.value(), j.g.value());
    let lam = e * gg - f * f;
    if lam.abs() <= lit(1e-300) {
        return Err(GeomError::domain("metric is degenerate on the curve", format!("t = {t}")));
    }
    // ∂_k g_ij
    let de = [j.e.coeff(1, 0), j.e.coeff(0, 1)];
    let df = [j.f.coeff(1, 0), j.f.coeff(0, 1)];
    let dg = [j.g.coeff(1, 0), j.g.coeff(0, 1)];
    let gij = |i: usize, k: usize| -> [T; 2] {
        match (i, k) {
            (0, 0) => de,
            (1, 1) => dg,
            _ => df,
        }
    };
    let inv = [[gg / lam, -f / lam], [-f / lam, e / lam]];
    let half = lit::<T>(0.5);
    let mut acc = [d2[0], d2[1]];
    for (k, ak) in acc.iter_mut().enumerate() {
        for i in 0..2 {
            for jj in 0..2 {
                let mut gamma = T::zero();
                for l in 0..2 {
                    gamma += half * inv[k][l] * (gij(jj, l)[i] + gij(i, l)[jj] - gij(i, jj)[l]);
                }
                *ak += gamma * d1[i] * d1[jj];
            }
        }
    }
    let (a, b) = (d1[0], d1[1]);
    let m = [-(f * a + gg * b), e * a + f * b];
    let metric = |x: [T; 2], y: [T; 2]| e * x[0] * y[0] + f * (x[0] * y[1] + x[1] * y[0]) + gg * x[1] * y[1];
    let mm = metric(m, m);
    let speed2 = metric(d1, d1);
    if mm == T::zero() || speed2 == T::zero() {
        return Err(GeomError::domain("curve is null at this parameter", format!("t = {t}")));
    }
    Ok(metric(acc, m) / (mm.abs().sqrt() * speed2))
}

/// Limiting geodesic curvature of an L-coordinate `u`-axis through a type II
/// point at the origin: `μ_c = -E_v(0,0) / (2 sqrt|λ̂(0)|)` with `λ(u,0) = u λ̂(u)`.
pub fn limiting_geodesic_curvature_l<T: Scalar>(e: &BiSeries<T>, g: &BiSeries<T>) -> Result<T> {
    let lam = e.restrict_v0() * g.restrict_v0();
    let hat = lam.shift_divide(1, tolerance(1e-10)).map_err(|_| {
        GeomError::degenerate("λ(u,0) does not vanish at the point")
    })?;
    let h0 = hat.coeff(0);
    if h0.abs() <= tolerance(1e-10) {
        return Err(GeomError::degenerate("λ̂(0) = 0: the point is not admissible"));
    }
    Ok(-e.coeff(0, 1) / (lit::<T>(2.0) * h0.abs().sqrt()))
}

/// Limiting geodesic curvature along `c` (by default the line through `p`
/// orthogonal to the null direction).
pub fn limiting_geodesic_curvature<T: Scalar>(g: &MetricField<T>, p: (T, T), c: Option<&PlaneCurve<T>>, order: usize) -> Result<T> {
    let chart = l_chart_for_type_ii(g, p, c, order)?;
    limiting_geodesic_curvature_l(&chart.e, &chart.g)
}

pub(crate) fn l_chart_for_type_ii<T: Scalar>(g: &MetricField<T>, p: (T, T), c: Option<&PlaneCurve<T>>, order: usize) -> Result<LChart<T>> {
    let owned;
    let c = match c {
        Some(c) => c,
        None => {
            let eta = null_direction(g, p)?;
            owned = straight_line(p, [eta[1], -eta[0]], order + 1);
            &owned
        }
    };
    to_l_coordinates(g, c, order)
}

/// Result of analysing one semidefinite point.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidefinitePoint<T> {
    pub location: (T, T),
    pub null_direction: [T; 2],
    pub kind: SemidefiniteKind,
    pub generic: bool,
    /// `κ̃_L` for type I points.
    pub kappa_tilde_l: Option<T>,
    /// `μ_c` for type II points, along the line orthogonal to the null direction.
    pub mu_c: Option<T>,
}

pub fn analyze_semidefinite_point<T: Scalar>(g: &MetricField<T>, p: (T, T), order: usize) -> Result<SemidefinitePoint<T>> {
    let kind = classify_semidefinite(g, p)?;
    let eta = null_direction(g, p)?;
    let tol = tolerance::<T>(GENERIC_TOL);
    Ok(match kind {
        SemidefiniteKind::TypeI => {
            let k = kappa_tilde_l(g, p)?;
            SemidefinitePoint {
                location: p,
                null_direction: eta,
                kind,
                generic: k.abs() > tol,
                kappa_tilde_l: Some(k),
                mu_c: None,
            }
        }
        SemidefiniteKind::TypeII => {
            let mu = limiting_geodesic_curvature(g, p, None, order)?;
            SemidefinitePoint {
                location: p,
                null_direction: eta,
                kind,
                generic: mu.abs() > tol,
                kappa_tilde_l: None,
                mu_c: Some(mu),
            }
        }
    })
}

/// Genericity of a classified semidefinite point.
pub fn is_generic<T: Scalar>(g: &MetricField<T>, p: (T, T), order: usize) -> Result<bool> {
    Ok(analyze_semidefinite_point(g, p, order)?.generic)
}

/// The three equivalent genericity conditions at a type II point, evaluated
/// independently: `μ_c ≠ 0`, `√|s| κ_g` bounded away from 0 near the point,
/// and `E_v(0,0) ≠ 0` in L-coordinates.
pub fn type_ii_genericity_conditions<T: Scalar>(g: &MetricField<T>, p: (T, T), order: usize) -> Result<[bool; 3]> {
    let chart = l_chart_for_type_ii(g, p, None, order)?;
    let tol = tolerance::<T>(GENERIC_TOL);
    let mu = limiting_geodesic_curvature_l(&chart.e, &chart.g)?;
    let ev = chart.e.coeff(0, 1);
    let s = lit::<T>(1e-4);
    let lim = geodesic_curvature_l(&chart.e, &chart.g, s)? * s.sqrt();
    Ok([mu.abs() > tol, lim.abs() > tolerance(1e-6), ev.abs() > tol])
}
