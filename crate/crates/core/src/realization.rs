//! Isometric realization of mixed type metrics.
//!
//! Given `E du² + G dv²` in L-coordinates and a target spacelike curve `γ`,
//! the initial strip `(x, y)` along the `u`-axis is read off from the curve
//! invariants, the Gauss–Codazzi system is solved by a Cauchy–Kowalevski
//! recurrence in the `v`-degree, and the adapted frame is integrated from its
//! value at the origin. Frenet curves give four branches, non-Frenet curves two.

use rayon::prelude::*;

use crate::curves::{deform_invariants, reconstruct_from_invariants, reversed_invariants, veval, CurveInvariants, DeformMode};
use crate::error::{GeomError, Result};
use crate::metric::{characteristic_curve, null_direction, straight_line, to_l_coordinates, LChart, MetricField, SemidefiniteKind};
use crate::minkowski::{Matrix3, MinkVector3};
use crate::scalar::{lit, tolerance, Scalar};
use crate::series::{mat_map, mat_mul, mat_sub, Algebra, BiSeries, Mat3, USeries};
use crate::surface::{adapted_data, gauss_codazzi_residuals, gw_matrices, invariants_l_axis, GwInputs, SurfacePatch, VBi};
use crate::metric::Domain;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 10;
/// Default half-width of the residual check box.
pub const DEFAULT_RADIUS: f64 = 0.05;

/// One element of `Z_γ`: the sign `ε` of the L-coordinate orientation and
/// whether the curve is traversed as `γ(-u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub epsilon: i8,
    pub reversed: bool,
}

/// Realization data: a metric in L-coordinates and a target curve.
#[derive(Clone, Debug)]
pub struct RealizationProblem<T> {
    /// `E`, `G` about the origin, truncated at `order + 2`.
    pub e: BiSeries<T>,
    pub g: BiSeries<T>,
    pub kind: SemidefiniteKind,
    pub curve: CurveInvariants<T>,
    pub order: usize,
    /// Chart from the original metric coordinates, when built from a [`MetricField`].
    pub chart: Option<LChart<T>>,
}

impl<T: Scalar> RealizationProblem<T> {
    /// From series already in L-coordinates (`F ≡ 0`, `E(u,0) = 1`).
    pub fn from_l_metric(e: BiSeries<T>, g: BiSeries<T>, curve: CurveInvariants<T>, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(GeomError::invalid("the truncation order must be at least 2"));
        }
        if e.order() < order + 2 || g.order() < order + 2 {
            return Err(GeomError::invalid(format!("E and G must be given to order {}", order + 2)));
        }
        let tol = tolerance::<T>(1e-9);
        let e0 = e.restrict_v0();
        let drift = (0..=e0.order())
            .map(|k| (e0.coeff(k) - if k == 0 { T::one() } else { T::zero() }).abs())
            .fold(T::zero(), T::max);
        if drift > tol {
            return Err(GeomError::invalid("E(u, 0) must be 1 in L-coordinates"));
        }
        if g.value().abs() > tol {
            return Err(GeomError::invalid("the origin must be a semidefinite point (G(0,0) = 0)"));
        }
        if e.coeff(0, 1).abs() <= tolerance(1e-8) {
            return Err(GeomError::degenerate("E_v(0,0) = 0: the metric is not generic at the origin"));
        }
        let kind = if g.coeff(0, 1).abs() > tolerance(1e-8) {
            SemidefiniteKind::TypeI
        } else if g.coeff(1, 0).abs() > tolerance(1e-8) {
            SemidefiniteKind::TypeII
        } else {
            return Err(GeomError::degenerate("dλ = 0 at the origin"));
        };
        if kind == SemidefiniteKind::TypeI {
            let gu = g.restrict_v0();
            if gu.max_abs_coeff() > tol {
                return Err(GeomError::invalid("for a type I point the u-axis must be the semidefinite set"));
            }
        }
        Ok(Self {
            e: e.with_order(order + 2),
            g: g.with_order(order + 2),
            kind,
            curve,
            order,
            chart: None,
        })
    }

    /// Builds L-coordinates of `metric` at the semidefinite point `p`: along
    /// the characteristic curve for type I points, along the line orthogonal
    /// to the null direction for type II points.
    pub fn from_metric(metric: &MetricField<T>, p: (T, T), curve: CurveInvariants<T>, order: usize) -> Result<Self> {
        let w = order + 2;
        let kind = crate::metric::classify_semidefinite(metric, p)?;
        let c = match kind {
            SemidefiniteKind::TypeI => characteristic_curve(metric, p, w + 1)?,
            SemidefiniteKind::TypeII => {
                let eta = null_direction(metric, p)?;
                straight_line(p, [eta[1], -eta[0]], w + 1)
            }
        };
        let chart = to_l_coordinates(metric, &c, w).map_err(|e| e.at_stage("l_coordinates"))?;
        let mut pb = Self::from_l_metric(chart.e.clone(), chart.g.clone(), curve, order)?;
        pb.chart = Some(chart);
        Ok(pb)
    }

    pub fn is_frenet(&self) -> bool {
        self.curve.kind.is_frenet()
    }

    /// `Z_γ` in the fixed order `(+1, γ(u)), (-1, γ(u)), (+1, γ(-u)), (-1, γ(-u))`,
    /// keeping only the admissible `ε` for non-Frenet curves.
    pub fn branches(&self) -> Vec<Branch> {
        if self.is_frenet() {
            vec![
                Branch { epsilon: 1, reversed: false },
                Branch { epsilon: -1, reversed: false },
                Branch { epsilon: 1, reversed: true },
                Branch { epsilon: -1, reversed: true },
            ]
        } else {
            let sig = self.curve.kind.signature().unwrap_or(1);
            vec![
                Branch { epsilon: -sig, reversed: false },
                Branch { epsilon: sig, reversed: true },
            ]
        }
    }

    /// Curve invariants used by a branch.
    pub fn branch_curve(&self, b: Branch) -> Result<CurveInvariants<T>> {
        let inv = if b.reversed {
            reversed_invariants(&self.curve)
        } else {
            self.curve.clone()
        };
        if let Some(sig) = inv.kind.signature() {
            if b.epsilon != -sig {
                return Err(GeomError::invalid(format!(
                    "ε = {} is not admissible for a non-Frenet curve of signature {sig}",
                    b.epsilon
                )));
            }
        }
        Ok(inv)
    }
}

/// `x(u) = X(u,0)` and `y(u) = Y(u,0)` for a branch.
///
/// With `λ(u) = G(u,0)`:
/// `x = -2θ / (E_v + sgn(E_v(0)) sqrt(E_v² - 4λθ))`; Frenet
/// `y = ετ + (E_v x' - λ_u x² - E_uv x) / (2θ)`; non-Frenet
/// `y = μ + (E_uv + λ x' + λ_u x) / (E_v + λ x)`. On a type I strip `λ ≡ 0`
/// and these reduce to `x = -θ/E_v`, `y = ετ + E_uv/E_v - θ'/(2θ)` and
/// `y = μ + E_uv/E_v`.
pub fn initial_strip<T: Scalar>(pb: &RealizationProblem<T>, b: Branch) -> Result<(USeries<T>, USeries<T>)> {
    let n = pb.order;
    let inv = pb.branch_curve(b)?;
    if inv.theta.order() < n + 1 || inv.torsion.order() < n {
        return Err(GeomError::invalid(format!("curve invariants must be given to order {}", n + 1)));
    }
    let ev = pb.e.diff_v().restrict_v0().truncate(n + 1);
    let euv = ev.diff();
    let lam = pb.g.restrict_v0().truncate(n + 1);
    let lam_u = lam.diff();
    let theta = inv.theta.truncate(n + 1);
    let sgn = ev.coeff(0).signum();
    let disc = ev.clone() * ev.clone() - (lam.clone() * theta.clone()).scale(lit(4.0));
    let den = ev.clone() + disc.sqrt()?.scale(sgn);
    let x = theta.scale(lit(-2.0)).div(&den)?;
    let dx = x.diff();
    let x = x.truncate(n);
    let (ev, lam, theta) = (ev.truncate(n), lam.truncate(n), theta.truncate(n));
    let y = if inv.kind.is_frenet() {
        if x.coeff(0).abs() <= tolerance(1e-12) {
            return Err(GeomError::degenerate("x(0) = 0: the Frenet initial frame degenerates"));
        }
        let eps = lit::<T>(b.epsilon as f64);
        let num = ev.clone() * dx - lam_u * x.clone() * x.clone() - euv * x.clone();
        inv.torsion.truncate(n).scale(eps) + num.div(&theta.scale(lit(2.0)))?
    } else {
        let den = ev + lam.clone() * x.clone();
        if den.coeff(0).abs() <= tolerance(1e-12) {
            return Err(GeomError::degenerate("E_v + λx vanishes at the origin"));
        }
        inv.torsion.truncate(n) + (euv + lam * dx + lam_u * x.clone()).div(&den)?
    };
    Ok((x, y))
}

/// Solves (C1), (C2), (G) for `X, Y, Z` with `X(u,0) = x`, `Y(u,0) = y`:
/// `Z = (L + G_v X - 2 G_u Y + 2 G Y²) / (2 G X + E_v)` with
/// `L = E_vv + G_uu - (E_u G_u + E_v²)/(2E)`,
/// `X_v = Y_u + (E_v X - E_u Y)/(2E) + Y² - X Z`,
/// `Y_v = Z_u - (G_u X + E_v Y)/(2E)`.
/// `E`, `G` must carry two more orders than `x`, `y`.
pub fn solve_normal_form<T: Scalar>(
    e: &BiSeries<T>,
    g: &BiSeries<T>,
    x: &USeries<T>,
    y: &USeries<T>,
) -> Result<[BiSeries<T>; 3]> {
    let n = x.order().min(y.order());
    if e.order() < n + 2 || g.order() < n + 2 {
        return Err(GeomError::invalid("E and G must carry two more orders than the initial data"));
    }
    let (eu, ev, gu, gv) = (e.diff_u(), e.diff_v(), g.diff_u(), g.diff_v());
    let ie2 = e.recip()?.scale(lit(0.5));
    let l = ev.diff_v() + gu.diff_u() - (eu.clone() * gu.clone() + ev.clone() * ev.clone()) * ie2.clone();
    let cut = |s: &BiSeries<T>| s.with_order(n);
    let (eu, ev, gu, gv, ie2, l, g) = (cut(&eu), cut(&ev), cut(&gu), cut(&gv), cut(&ie2), cut(&l), cut(g));
    let denom0 = ev.value();
    if denom0.abs() <= tolerance(1e-12) {
        return Err(GeomError::degenerate("2GX + E_v vanishes at the origin"));
    }
    let two = lit::<T>(2.0);
    let zeta = |xx: &BiSeries<T>, yy: &BiSeries<T>| -> Result<BiSeries<T>> {
        let num = l.clone() + gv.clone() * xx.clone() - (gu.clone() * yy.clone()).scale(two)
            + (g.clone() * yy.clone() * yy.clone()).scale(two);
        let den = (g.clone() * xx.clone()).scale(two) + ev.clone();
        num.div(&den)
    };
    let mut xs = BiSeries::from_useries_u(x, n);
    let mut ys = BiSeries::from_useries_u(y, n);
    for k in 0..n {
        let z = zeta(&xs, &ys)?;
        let rx = ys.diff_u().with_order(n) + (ev.clone() * xs.clone() - eu.clone() * ys.clone()) * ie2.clone()
            + ys.clone() * ys.clone()
            - xs.clone() * z.clone();
        let ry = z.diff_u().with_order(n) - (gu.clone() * xs.clone() + ev.clone() * ys.clone()) * ie2.clone();
        let kk = lit::<T>((k + 1) as f64);
        for i in 0..n - k {
            xs.set(i, k + 1, rx.coeff(i, k) / kk);
            ys.set(i, k + 1, ry.coeff(i, k) / kk);
        }
    }
    let z = zeta(&xs, &ys)?;
    Ok([xs, ys, z])
}

/// Initial adapted frame at the origin.
///
/// Frenet: `(e, (√|θ|/(2x))(n + εσ b), (√|θ|/E_v)(-n + εσ b))`;
/// non-Frenet: `(e, -(E_v/2) β, -(2/E_v) 𝜿)`.
pub fn initial_frame<T: Scalar>(pb: &RealizationProblem<T>, b: Branch, x0: T) -> Result<Matrix3<T>> {
    let inv = pb.branch_curve(b)?;
    let ev = pb.e.coeff(0, 1);
    let [e, a, c] = inv.frame;
    let f = if let Some(sigma) = inv.kind.sigma() {
        if x0.abs() <= tolerance(1e-12) {
            return Err(GeomError::degenerate("x(0) = 0: the Frenet initial frame degenerates"));
        }
        let k = inv.theta.coeff(0).abs().sqrt();
        let es = lit::<T>((b.epsilon * sigma) as f64);
        let col2 = (a + c.scale(es)).scale(k / (lit::<T>(2.0) * x0));
        let col3 = (c.scale(es) - a).scale(k / ev);
        Matrix3::from_columns([e, col2, col3])
    } else {
        Matrix3::from_columns([e, c.scale(-ev / lit::<T>(2.0)), a.scale(-lit::<T>(2.0) / ev)])
    };
    check_frame_gram(&f, pb.e.value(), pb.g.value(), b.epsilon)?;
    Ok(f)
}

/// `F₀^±` with `<col1,col1> = E(0,0)` and null columns 2 and 3.
pub fn standard_initial_frame<T: Scalar>(e00: T, positive: bool) -> Matrix3<T> {
    let r = lit::<T>(0.5).sqrt();
    let s = e00.sqrt();
    let z = T::zero();
    if positive {
        Matrix3::from_rows([[s, z, z], [z, r, r], [z, -r, r]])
    } else {
        Matrix3::from_rows([[s, z, z], [z, -r, -r], [z, -r, r]])
    }
}

/// `P = [[E, 0, 0], [0, G, 1], [0, 1, 0]]`.
pub fn frame_gram_target<T: Scalar>(e: T, g: T) -> Matrix3<T> {
    let (z, o) = (T::zero(), T::one());
    Matrix3::from_rows([[e, z, z], [z, g, o], [z, o, z]])
}

fn check_frame_gram<T: Scalar>(f: &Matrix3<T>, e: T, g: T, eps: i8) -> Result<()> {
    let err = f.gram().sub(&frame_gram_target(e, g)).max_abs();
    if err > tolerance(1e-9) {
        return Err(GeomError::Residual {
            name: "initial frame Gram matrix".into(),
            value: err.to_f64().unwrap_or(f64::NAN),
            tol: 1e-9,
        });
    }
    let det = f.det() - lit::<T>(eps as f64) * e.sqrt();
    if det.abs() > tolerance(1e-9) {
        return Err(GeomError::Residual {
            name: "initial frame determinant".into(),
            value: det.abs().to_f64().unwrap_or(f64::NAN),
            tol: 1e-9,
        });
    }
    Ok(())
}

/// Frame and position obtained by integrating `𝓕_u = 𝓕𝒰`, `𝓕_v = 𝓕𝒱`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSolution<T> {
    /// Rows are components, columns are `(f_u, f_v, ψ)`.
    pub frame: Mat3<BiSeries<T>>,
    pub f: VBi<T>,
}

impl<T: Scalar> FrameSolution<T> {
    pub fn psi(&self) -> VBi<T> {
        MinkVector3::new(self.frame[0][2].clone(), self.frame[1][2].clone(), self.frame[2][2].clone())
    }
}

/// Integrates the frame along `v = 0` from `f0`, then marches in `v`; the
/// position is `origin + ∫ col1(t,0) dt + ∫ col2(u,s) ds`.
pub fn integrate_frame_and_position<T: Scalar>(
    u: &Mat3<BiSeries<T>>,
    v: &Mat3<BiSeries<T>>,
    f0: &Matrix3<T>,
    origin: &MinkVector3<T>,
) -> FrameSolution<T> {
    let n = u.iter().flatten().chain(v.iter().flatten()).map(|s| s.order()).min().unwrap_or(0);
    let axis = mat_map(u, |s| s.restrict_v0().truncate(n));
    let along = crate::series::solve_ode_series(&axis, f0);
    let mut fr: Mat3<BiSeries<T>> = mat_map(&along, |s| BiSeries::from_useries_u(&s.truncate(n), n));
    let v = mat_map(v, |s| s.with_order(n));
    for k in 0..n {
        let rhs = mat_mul(&fr, &v);
        let kk = lit::<T>((k + 1) as f64);
        for (row, rrow) in fr.iter_mut().zip(rhs.iter()) {
            for (s, r) in row.iter_mut().zip(rrow.iter()) {
                for i in 0..n - k {
                    s.set(i, k + 1, r.coeff(i, k) / kk);
                }
            }
        }
    }
    let f = MinkVector3::from_array(std::array::from_fn(|i| {
        let base = fr[i][0].restrict_v0().antideriv();
        BiSeries::from_useries_u(&base, n + 1) + fr[i][1].antideriv_v() + BiSeries::constant(origin.component(i), n + 1)
    }));
    FrameSolution { frame: fr, f }
}

/// Sup of `‖𝓕_u - 𝓕𝒰‖` on the box.
pub fn frame_compatibility_residual<T: Scalar>(s: &FrameSolution<T>, u: &Mat3<BiSeries<T>>, rho: T, samples: usize) -> T {
    let fu = mat_map(&s.frame, |x| x.diff_u());
    let r = mat_sub(&fu, &mat_mul(&s.frame, u));
    r.iter().flatten().map(|x| x.sup_on_box(rho, samples)).fold(T::zero(), T::max)
}

/// Sup of `‖𝓕ᵀ S 𝓕 - P‖` on the box.
pub fn gram_residual<T: Scalar>(s: &FrameSolution<T>, e: &BiSeries<T>, g: &BiSeries<T>, rho: T, samples: usize) -> T {
    let fr = &s.frame;
    let n = fr[0][0].order();
    let mut worst = T::zero();
    for a in 0..3 {
        for b in 0..3 {
            let mut q = fr[0][a].clone() * fr[0][b].clone() + fr[1][a].clone() * fr[1][b].clone()
                - fr[2][a].clone() * fr[2][b].clone();
            let target = match (a, b) {
                (0, 0) => e.with_order(n),
                (1, 1) => g.with_order(n),
                (1, 2) | (2, 1) => BiSeries::constant(T::one(), n),
                _ => BiSeries::zeros(n),
            };
            q = q - target;
            worst = worst.max(q.sup_on_box(rho, samples));
        }
    }
    worst
}

/// Sup on the box of the difference between the first fundamental form of
/// the polynomial `f` and `(E, 0, G)`.
pub fn metric_residual<T: Scalar>(f: &VBi<T>, e: &BiSeries<T>, g: &BiSeries<T>, rho: T, samples: usize) -> T {
    let fu = f.map(|s| s.diff_u());
    let fv = f.map(|s| s.diff_v());
    let m = samples.max(2) - 1;
    let mut worst = T::zero();
    for a in 0..=m {
        for b in 0..=m {
            let s = rho * (lit::<T>((2 * a) as f64) / lit::<T>(m as f64) - T::one());
            let t = rho * (lit::<T>((2 * b) as f64) / lit::<T>(m as f64) - T::one());
            let pu = fu.map(|x| x.eval(s, t));
            let pv = fv.map(|x| x.eval(s, t));
            let r = (pu.inner(&pu) - e.eval(s, t))
                .abs()
                .max(pu.inner(&pv).abs())
                .max((pv.inner(&pv) - g.eval(s, t)).abs());
            worst = worst.max(r);
        }
    }
    worst
}

/// Diagnostics of one realized branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealizationResiduals<T> {
    pub metric: T,
    pub gauss_codazzi: [T; 3],
    pub frame: T,
    pub gram: T,
    /// Sup of `|f(u,0) - γ(±u)|` for `|u| ≤ ρ`.
    pub curve: T,
}

impl<T: Scalar> RealizationResiduals<T> {
    pub fn max(&self) -> T {
        self.gauss_codazzi
            .iter()
            .fold(self.metric.max(self.frame).max(self.gram).max(self.curve), |a, &b| a.max(b))
    }
}

/// One surface of `Z_γ`.
#[derive(Clone, Debug)]
pub struct RealizedSurface<T> {
    pub branch: Branch,
    pub f: VBi<T>,
    pub psi: VBi<T>,
    pub x: BiSeries<T>,
    pub y: BiSeries<T>,
    pub z: BiSeries<T>,
    pub frame0: Matrix3<T>,
    pub residuals: RealizationResiduals<T>,
    pub radius: T,
}

impl<T: Scalar> RealizedSurface<T> {
    pub fn patch(&self) -> SurfacePatch<T> {
        let r = self.radius;
        SurfacePatch::from_series(self.f.clone(), (T::zero(), T::zero()), Domain::square(r))
    }

    pub fn point(&self, u: T, v: T) -> MinkVector3<T> {
        self.f.map(|s| s.eval(u, v))
    }

    /// `κ_L, κ_N, κ_G` along the `u`-axis (type I problems).
    pub fn invariants(&self) -> Result<[USeries<T>; 3]> {
        let order = self.x.order().saturating_sub(2).max(2);
        let d = adapted_data(&self.patch(), (T::zero(), T::zero()), order, Some(self.branch.epsilon))?;
        invariants_l_axis(&d)
    }

    pub fn check(&self, tol: T) -> Result<()> {
        let r = self.residuals.max();
        if r > tol {
            return Err(GeomError::Residual {
                name: "realization".into(),
                value: r.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

/// Realizes one branch; residuals are measured on `|u|, |v| ≤ rho`.
pub fn realize<T: Scalar>(pb: &RealizationProblem<T>, b: Branch, rho: T) -> Result<RealizedSurface<T>> {
    let (x, y) = initial_strip(pb, b).map_err(|e| e.at_stage("initial_strip"))?;
    let [xs, ys, zs] = solve_normal_form(&pb.e, &pb.g, &x, &y).map_err(|e| e.at_stage("normal_form"))?;
    let f0 = initial_frame(pb, b, x.coeff(0)).map_err(|e| e.at_stage("initial_frame"))?;
    let inputs = GwInputs::from_series(&pb.e, &pb.g, &xs, &ys, &zs);
    let (u, v) = gw_matrices(&inputs).map_err(|e| e.at_stage("structure_matrices"))?;
    let inv = pb.branch_curve(b)?;
    let sol = integrate_frame_and_position(&u, &v, &f0, &inv.origin);
    let samples = 11;
    let gc = gauss_codazzi_residuals(&pb.e, &pb.g, &xs, &ys, &zs, rho, samples).map_err(|e| e.at_stage("residuals"))?;
    let gamma = reconstruct_from_invariants(&pb.curve, pb.order + 1).map_err(|e| e.at_stage("curve"))?;
    let mut curve = T::zero();
    for i in 0..=20 {
        let t = rho * (lit::<T>(i as f64 / 10.0) - T::one());
        let on = sol.f.map(|s| s.eval(t, T::zero()));
        let target = veval(&gamma.gamma, if b.reversed { -t } else { t });
        curve = curve.max((on - target).norm_inf());
    }
    let residuals = RealizationResiduals {
        metric: metric_residual(&sol.f, &pb.e, &pb.g, rho, samples),
        gauss_codazzi: gc,
        frame: frame_compatibility_residual(&sol, &u, rho, samples),
        gram: gram_residual(&sol, &pb.e, &pb.g, rho, samples),
        curve,
    };
    Ok(RealizedSurface {
        branch: b,
        psi: sol.psi(),
        f: sol.f,
        x: xs,
        y: ys,
        z: zs,
        frame0: f0,
        residuals,
        radius: rho,
    })
}

/// All branches of `Z_γ`, in the fixed order of [`RealizationProblem::branches`].
pub fn realize_all<T: Scalar>(pb: &RealizationProblem<T>, rho: T) -> Result<Vec<RealizedSurface<T>>> {
    pb.branches().into_par_iter().map(|b| realize(pb, b, rho)).collect()
}

/// Realizes the deformed curve `θ_s` for each `s`, on a fixed branch.
pub fn deformation_family<T: Scalar>(
    pb: &RealizationProblem<T>,
    b: Branch,
    s_values: &[T],
    mode: DeformMode,
    rho: T,
) -> Result<Vec<RealizedSurface<T>>> {
    s_values
        .par_iter()
        .map(|&s| {
            let curve = deform_invariants(&pb.curve, s, mode).map_err(|e| e.at_stage("deform"))?;
            let member = RealizationProblem { curve, ..pb.clone() };
            realize(&member, b, rho)
        })
        .collect()
}
