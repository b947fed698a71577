//! Surface patches in L³: first fundamental form, lightlike points of the
//! first and second kind, the L-Gauss map `ψ`, the adapted frame
//! `(f_u, f_v, ψ)` with its structure matrices, Gauss–Codazzi residuals and
//! the invariants `κ_L`, `κ_N`, `κ_G` along the lightlike set.

use crate::curves::{null_complement, VSeries};
use crate::error::{GeomError, Result};
use crate::expr::Expr;
use crate::metric::{
    characteristic_curve, kappa_tilde_l, to_l_coordinates, trace_semidefinite_set, Domain, LChart, MetricField,
    MetricJets, TYPE_TOL,
};
use crate::minkowski::{Matrix3, MinkVector3};
use crate::scalar::{lit, tolerance, Scalar};
use crate::series::{Algebra, BiSeries, Mat3, USeries};

/// Vector-valued series in two parameters.
pub type VBi<T> = MinkVector3<BiSeries<T>>;

#[derive(Clone, Debug)]
enum SurfaceRepr<T> {
    Exprs([Expr; 3]),
    Series { f: VBi<T>, center: (T, T) },
}

/// A parametrized patch `f(u, v)` given by formulas or by series.
#[derive(Clone, Debug)]
pub struct SurfacePatch<T> {
    repr: SurfaceRepr<T>,
    pub domain: Domain<T>,
}

impl<T: Scalar> SurfacePatch<T> {
    pub fn from_exprs(x: [Expr; 3], domain: Domain<T>) -> Self {
        Self {
            repr: SurfaceRepr::Exprs(x),
            domain,
        }
    }

    pub fn parse(x1: &str, x2: &str, x3: &str, domain: Domain<T>) -> Result<Self> {
        Ok(Self::from_exprs(
            [crate::expr::parse(x1)?, crate::expr::parse(x2)?, crate::expr::parse(x3)?],
            domain,
        ))
    }

    /// Patch given by its Taylor polynomial about `center`.
    pub fn from_series(f: VBi<T>, center: (T, T), domain: Domain<T>) -> Self {
        Self {
            repr: SurfaceRepr::Series { f, center },
            domain,
        }
    }

    pub fn exprs(&self) -> Option<&[Expr; 3]> {
        match &self.repr {
            SurfaceRepr::Exprs(x) => Some(x),
            SurfaceRepr::Series { .. } => None,
        }
    }

    /// `f` expanded about `(u, v)` in displacement coordinates.
    pub fn position_jets(&self, u: T, v: T, order: usize) -> Result<VBi<T>> {
        match &self.repr {
            SurfaceRepr::Exprs(x) => Ok(MinkVector3::new(
                x[0].eval_jet((u, v), order)?.series,
                x[1].eval_jet((u, v), order)?.series,
                x[2].eval_jet((u, v), order)?.series,
            )),
            SurfaceRepr::Series { f, center } => {
                let (du, dv) = (u - center.0, v - center.1);
                Ok(f.map(|s| s.recenter(du, dv).with_order(order)))
            }
        }
    }

    pub fn point(&self, u: T, v: T) -> Result<MinkVector3<T>> {
        Ok(self.position_jets(u, v, 0)?.map(|s| s.value()))
    }

    /// `(E, F, G)` about `(u, v)` to `order`.
    pub fn metric_jets(&self, u: T, v: T, order: usize) -> Result<MetricJets<T>> {
        let f = self.position_jets(u, v, order + 1)?;
        let fu = f.map(|s| s.diff_u());
        let fv = f.map(|s| s.diff_v());
        Ok(MetricJets {
            e: fu.inner(&fu),
            f: fu.inner(&fv),
            g: fv.inner(&fv),
        })
    }

    pub fn first_fundamental_form(&self) -> MetricField<T> {
        MetricField::from_surface(self.clone())
    }

    /// Fails unless `f_u` and `f_v` are linearly independent at `(u, v)`.
    pub fn check_immersion(&self, u: T, v: T) -> Result<()> {
        let j = self.position_jets(u, v, 1)?;
        let fu = j.map(|s| s.coeff(1, 0));
        let fv = j.map(|s| s.coeff(0, 1));
        let area = fu.euclid_cross(&fv).euclid_norm();
        if area <= tolerance::<T>(1e-12) * fu.euclid_norm() * fv.euclid_norm() || area == T::zero() {
            return Err(GeomError::degenerate(format!("f_u and f_v are dependent at ({u}, {v})")));
        }
        Ok(())
    }

    /// `A f + b`.
    pub fn transformed(&self, a: &Matrix3<T>, b: &MinkVector3<T>) -> Self {
        let repr = match &self.repr {
            SurfaceRepr::Exprs(x) => {
                let num = |t: T| Expr::num(t.to_f64().unwrap_or(f64::NAN));
                SurfaceRepr::Exprs(std::array::from_fn(|i| {
                    let mut acc = num(b.component(i));
                    for (j, xj) in x.iter().enumerate() {
                        let c = a.m[i][j];
                        if c != T::zero() {
                            acc = acc + num(c) * xj.clone();
                        }
                    }
                    acc
                }))
            }
            SurfaceRepr::Series { f, center } => SurfaceRepr::Series {
                f: transform_vbi(f, a, b),
                center: *center,
            },
        };
        Self {
            repr,
            domain: self.domain,
        }
    }

    /// The patch `f ∘ Φ` in the coordinates of `chart`, as a series about
    /// the chart origin.
    pub fn in_chart(&self, chart: &LChart<T>, domain: Domain<T>) -> Result<Self> {
        let n = chart.map_u.order();
        let f = self.position_jets(chart.center.0, chart.center.1, n)?;
        let g = f.map(|s| s.compose(&chart.map_u, &chart.map_v));
        Ok(Self::from_series(g, (T::zero(), T::zero()), domain))
    }
}

fn transform_vbi<T: Scalar>(f: &VBi<T>, a: &Matrix3<T>, b: &MinkVector3<T>) -> VBi<T> {
    let c = f.to_array();
    MinkVector3::from_array(std::array::from_fn(|i| {
        c[0].scale(a.m[i][0]) + c[1].scale(a.m[i][1]) + c[2].scale(a.m[i][2]) + BiSeries::constant(b.component(i), c[0].order())
    }))
}

/// Kind of a non-degenerate lightlike point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LightlikeKind {
    /// The lightlike set image is a spacelike curve near the point.
    FirstKind,
    /// The characteristic direction is null.
    SecondKind,
}

/// Classifies a lightlike point by `η<df(η), df(η)> ≠ 0` and, independently,
/// by the causal character of the characteristic tangent.
pub fn classify_lightlike<T: Scalar>(f: &SurfacePatch<T>, p: (T, T)) -> Result<LightlikeKind> {
    let m = f.metric_jets(p.0, p.1, 1)?;
    let (e, ff, g) = (m.e.value(), m.f.value(), m.g.value());
    let lam = m.lambda();
    // η = (-F, E) or (G, -F), whichever is larger; <df η, df η> = E λ or G λ.
    let (eta, h) = if e.abs() >= g.abs() {
        ([-ff, e], m.e.clone() * lam)
    } else {
        ([g, -ff], m.g.clone() * lam)
    };
    let grad = [h.coeff(1, 0), h.coeff(0, 1)];
    let en = eta[0].hypot(eta[1]);
    let gn = grad[0].hypot(grad[1]);
    if en == T::zero() || gn <= lit::<T>(1e-14) * T::one().max(e.abs()).max(g.abs()) {
        return Err(GeomError::degenerate("the lightlike point is degenerate (dλ = 0)"));
    }
    let beta = (eta[0] * grad[0] + eta[1] * grad[1]) / (en * gn);
    let first_by_beta = beta.abs() > tolerance(TYPE_TOL);

    let c = characteristic_curve(&f.first_fundamental_form(), p, 2)?;
    let t = c.tangent();
    let q = (e * t[0] * t[0] + lit::<T>(2.0) * ff * t[0] * t[1] + g * t[1] * t[1])
        / ((t[0] * t[0] + t[1] * t[1]) * e.abs().max(g.abs()));
    let first_by_tangent = q > tolerance(TYPE_TOL);
    if first_by_beta != first_by_tangent {
        return Err(GeomError::Residual {
            name: "first-kind criteria disagree".into(),
            value: beta.abs().min(q.abs()).to_f64().unwrap_or(f64::NAN),
            tol: TYPE_TOL,
        });
    }
    Ok(if first_by_beta {
        LightlikeKind::FirstKind
    } else {
        LightlikeKind::SecondKind
    })
}

/// Largest `|F|` (relative to `E`) accepted as "orthogonal coordinates".
pub const L_COORD_TOL: f64 = 1e-9;

/// L-Gauss map and second fundamental form at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LGaussData<T> {
    pub location: (T, T),
    pub psi: MinkVector3<T>,
    /// Sign in `f_u × f_v = ε √E (f_v - G ψ)`.
    pub epsilon: i8,
    pub x: T,
    pub y: T,
    pub z: T,
    /// Adapted frame with columns `(f_u, f_v, ψ)`.
    pub frame: Matrix3<T>,
}

impl<T: Scalar> LGaussData<T> {
    /// Residuals of `<ψ,ψ> = 0`, `<ψ,f_u> = 0`, `<ψ,f_v> = 1`.
    pub fn frame_residual(&self) -> T {
        let [fu, fv, psi] = self.frame.columns();
        psi.inner(&psi).abs().max(psi.inner(&fu).abs()).max((psi.inner(&fv) - T::one()).abs())
    }

    /// Largest residual among `f_u × f_v = ε√E(f_v - Gψ)`, `f_u × ψ = -ε√E ψ`,
    /// `f_v × ψ = (ε/√E) f_u` and `det(f_u, f_v, ψ) = ε√E`.
    pub fn cross_residual(&self) -> T {
        let [fu, fv, psi] = self.frame.columns();
        let e = fu.inner(&fu);
        let g = fv.inner(&fv);
        let se = e.sqrt();
        let eps = lit::<T>(self.epsilon as f64);
        let r1 = (fu.cross(&fv) - (fv - psi.scale(g)).scale(eps * se)).norm_inf();
        let r2 = (fu.cross(&psi) + psi.scale(eps * se)).norm_inf();
        let r3 = (fv.cross(&psi) - fu.scale(eps / se)).norm_inf();
        let r4 = (self.frame.det() - eps * se).abs();
        r1.max(r2).max(r3).max(r4)
    }
}

/// Solves `<ψ,ψ> = 0`, `<ψ,f_u> = 0`, `<ψ,f_v> = 1` at a point of an
/// orthogonal parametrization.
///
/// `epsilon = None` selects the branch that extends smoothly across the
/// lightlike set; `Some(±1)` selects the branch with that sign in
/// `f_u × f_v = ε √E (f_v - G ψ)`.
pub fn l_gauss_map<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), epsilon: Option<i8>) -> Result<LGaussData<T>> {
    let j = f.position_jets(p.0, p.1, 2)?;
    let fu = j.map(|s| s.coeff(1, 0));
    let fv = j.map(|s| s.coeff(0, 1));
    let two = lit::<T>(2.0);
    let fuu = j.map(|s| s.coeff(2, 0) * two);
    let fuv = j.map(|s| s.coeff(1, 1));
    let fvv = j.map(|s| s.coeff(0, 2) * two);
    let (psi, eps) = psi_at(fu, fv, epsilon)?;
    Ok(LGaussData {
        location: p,
        psi,
        epsilon: eps,
        x: fuu.inner(&psi),
        y: fuv.inner(&psi),
        z: fvv.inner(&psi),
        frame: Matrix3::from_columns([fu, fv, psi]),
    })
}

fn psi_at<T: Scalar>(fu: MinkVector3<T>, fv: MinkVector3<T>, epsilon: Option<i8>) -> Result<(MinkVector3<T>, i8)> {
    let e = fu.inner(&fu);
    let ff = fu.inner(&fv);
    let g = fv.inner(&fv);
    if e <= T::zero() {
        return Err(GeomError::invalid("f_u is not spacelike; the coordinates are not L-coordinates"));
    }
    if ff.abs() > tolerance::<T>(L_COORD_TOL) * e.max(T::one()) {
        return Err(GeomError::invalid(format!(
            "F = {ff} ≠ 0; reparametrize by L-coordinates first"
        )));
    }
    let se = e.sqrt();
    let unit = fu.scale(se.recip());
    let smooth = polish_psi(null_complement(&unit, &fv)?, fu, fv)?;
    let c = fu.cross(&fv);
    let w = (fv - smooth.scale(g)).scale(se);
    let dot = c.x1 * w.x1 + c.x2 * w.x2 + c.x3 * w.x3;
    let eps_smooth: i8 = if dot >= T::zero() { 1 } else { -1 };
    match epsilon {
        None => Ok((smooth, eps_smooth)),
        Some(s) if s == eps_smooth => Ok((smooth, s)),
        Some(s) => {
            if g.abs() <= tolerance::<T>(1e-12) * e {
                return Err(GeomError::domain(
                    "the requested L-Gauss branch is unbounded on the lightlike set",
                    "G = 0",
                ));
            }
            let eps = lit::<T>(s as f64);
            let psi = (fv - c.scale(eps / se)).scale(g.recip());
            Ok((polish_psi(psi, fu, fv)?, s))
        }
    }
}

fn polish_psi<T: Scalar>(mut psi: MinkVector3<T>, fu: MinkVector3<T>, fv: MinkVector3<T>) -> Result<MinkVector3<T>> {
    let s = |v: MinkVector3<T>| [v.x1, v.x2, -v.x3];
    for _ in 0..4 {
        let r = MinkVector3::new(psi.inner(&psi), psi.inner(&fu), psi.inner(&fv) - T::one());
        if r.norm_inf() <= lit(1e-16) {
            break;
        }
        let two = lit::<T>(2.0);
        let sp = s(psi);
        let jac = Matrix3::from_rows([[two * sp[0], two * sp[1], two * sp[2]], s(fu), s(fv)]);
        let inv = jac
            .inverse()
            .ok_or_else(|| GeomError::degenerate("f_u, f_v and ψ are linearly dependent"))?;
        psi = psi - inv.apply(&r);
    }
    Ok(psi)
}

/// `ψ` as a series, from position jets of an orthogonal parametrization and
/// the value `psi0` of the wanted branch at the expansion point.
pub fn l_gauss_map_series<T: Scalar>(fj: &VBi<T>, psi0: MinkVector3<T>) -> Result<VBi<T>> {
    let fu = fj.map(|s| s.diff_u());
    let fv = fj.map(|s| s.diff_v());
    let n = fu.x1.order();
    let fu0 = fu.map(|s| s.value());
    let fv0 = fv.map(|s| s.value());
    let psi0 = polish_psi(psi0, fu0, fv0)?;
    let two = lit::<T>(2.0);
    let jac = Matrix3::from_rows([
        [two * psi0.x1, two * psi0.x2, -two * psi0.x3],
        [fu0.x1, fu0.x2, -fu0.x3],
        [fv0.x1, fv0.x2, -fv0.x3],
    ]);
    let inv = jac
        .inverse()
        .ok_or_else(|| GeomError::degenerate("f_u, f_v and ψ are linearly dependent"))?;
    let one = BiSeries::constant(T::one(), n);
    let mut psi = psi0.map(|&x| BiSeries::constant(x, n));
    let scale = T::one().max(fu0.norm_inf()).max(fv0.norm_inf());
    // Chord iteration: each sweep fixes at least one more degree.
    for _ in 0..=n + 1 {
        let r = [psi.inner(&psi), psi.inner(&fu), psi.inner(&fv) - one.clone()];
        let size = r.iter().map(|s| s.max_abs_coeff()).fold(T::zero(), T::max);
        if size <= lit::<T>(1e-15) * scale {
            break;
        }
        let step = MinkVector3::from_array(std::array::from_fn(|i| {
            r[0].scale(inv.m[i][0]) + r[1].scale(inv.m[i][1]) + r[2].scale(inv.m[i][2])
        }));
        psi = psi - step;
    }
    Ok(psi)
}

/// Metric, `ψ` and second fundamental form as series about a point.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedData<T> {
    pub center: (T, T),
    pub epsilon: i8,
    pub fu: VBi<T>,
    pub fv: VBi<T>,
    pub psi: VBi<T>,
    pub e: BiSeries<T>,
    pub f: BiSeries<T>,
    pub g: BiSeries<T>,
    pub x: BiSeries<T>,
    pub y: BiSeries<T>,
    pub z: BiSeries<T>,
}

impl<T: Scalar> AdaptedData<T> {
    /// Frame `(f_u, f_v, ψ)` as a matrix of series (rows are components).
    pub fn frame(&self) -> Mat3<BiSeries<T>> {
        let cols = [&self.fu, &self.fv, &self.psi];
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j].component(i)))
    }

    pub fn frame_at_origin(&self) -> Matrix3<T> {
        Matrix3::from_columns([
            self.fu.map(|s| s.value()),
            self.fv.map(|s| s.value()),
            self.psi.map(|s| s.value()),
        ])
    }

    pub fn gw_inputs(&self) -> GwInputs<BiSeries<T>> {
        GwInputs::from_series(&self.e, &self.g, &self.x, &self.y, &self.z)
    }
}

/// Computes [`AdaptedData`] about `p` for an orthogonal parametrization.
/// `order` is the order of `X, Y, Z`; `E, F, G` carry one more.
pub fn adapted_data<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), order: usize, epsilon: Option<i8>) -> Result<AdaptedData<T>> {
    let pt = l_gauss_map(f, p, epsilon)?;
    let fj = f.position_jets(p.0, p.1, order + 2)?;
    let psi = l_gauss_map_series(&fj, pt.psi)?;
    let fu = fj.map(|s| s.diff_u());
    let fv = fj.map(|s| s.diff_v());
    let fuu = fu.map(|s| s.diff_u());
    let fuv = fu.map(|s| s.diff_v());
    let fvv = fv.map(|s| s.diff_v());
    Ok(AdaptedData {
        center: p,
        epsilon: pt.epsilon,
        e: fu.inner(&fu),
        f: fu.inner(&fv),
        g: fv.inner(&fv),
        x: fuu.inner(&psi),
        y: fuv.inner(&psi),
        z: fvv.inner(&psi),
        fu,
        fv,
        psi,
    })
}

/// `X, Y, Z` as series about `p`.
pub fn second_ff_psi<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), order: usize) -> Result<[BiSeries<T>; 3]> {
    let d = adapted_data(f, p, order, None)?;
    Ok([d.x, d.y, d.z])
}

/// Inputs of the structure matrices, in any algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GwInputs<A> {
    pub e: A,
    pub e_u: A,
    pub e_v: A,
    pub g: A,
    pub g_u: A,
    pub g_v: A,
    pub x: A,
    pub y: A,
    pub z: A,
}

impl<T: Scalar> GwInputs<BiSeries<T>> {
    pub fn from_series(e: &BiSeries<T>, g: &BiSeries<T>, x: &BiSeries<T>, y: &BiSeries<T>, z: &BiSeries<T>) -> Self {
        Self {
            e: e.clone(),
            e_u: e.diff_u(),
            e_v: e.diff_v(),
            g: g.clone(),
            g_u: g.diff_u(),
            g_v: g.diff_v(),
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
        }
    }
}

/// Structure matrices `(𝒰, 𝒱)` with `𝓕_u = 𝓕 𝒰`, `𝓕_v = 𝓕 𝒱` for the
/// adapted frame of `E du² + G dv²`.
pub fn gw_matrices<T: Scalar, A: Algebra<T>>(d: &GwInputs<A>) -> Result<(Mat3<A>, Mat3<A>)> {
    if d.e.constant_term() <= T::zero() {
        return Err(GeomError::invalid("E must be positive"));
    }
    let half = lit::<T>(0.5);
    let ie = d.e.recip()?;
    let zero = d.e.constant_like(T::zero());
    let xg = d.x.clone() * d.g.clone();
    let yg = d.y.clone() * d.g.clone();
    let zg = d.z.clone() * d.g.clone();
    let eu2e = d.e_u.clone() * ie.clone().scale(half);
    let ev2e = d.e_v.clone() * ie.clone().scale(half);
    let gu2e = d.g_u.clone() * ie.clone().scale(half);
    let gu2 = d.g_u.scale(half);
    let u = [
        [eu2e, ev2e.clone(), -(d.x.clone() * ie.clone())],
        [d.x.clone(), d.y.clone(), zero.clone()],
        [-(d.e_v.scale(half) + xg), gu2.clone() - yg.clone(), -d.y.clone()],
    ];
    let v = [
        [ev2e, -gu2e, -(d.y.clone() * ie)],
        [d.y.clone(), d.z.clone(), zero],
        [gu2 - yg, d.g_v.scale(half) - zg, -d.z.clone()],
    ];
    Ok((u, v))
}

/// Sup over a `samples × samples` grid on `|u|, |v| ≤ rho` of
/// `‖𝓕_u - 𝓕𝒰‖` and `‖𝓕_v - 𝓕𝒱‖`.
pub fn gw_residual<T: Scalar>(d: &AdaptedData<T>, rho: T, samples: usize) -> Result<T> {
    let (u, v) = gw_matrices(&d.gw_inputs())?;
    let fr = d.frame();
    let fu = crate::series::mat_map(&fr, |s| s.diff_u());
    let fv = crate::series::mat_map(&fr, |s| s.diff_v());
    let ru = crate::series::mat_sub(&fu, &crate::series::mat_mul(&fr, &u));
    let rv = crate::series::mat_sub(&fv, &crate::series::mat_mul(&fr, &v));
    let mut worst = T::zero();
    for r in ru.iter().chain(rv.iter()) {
        for s in r {
            worst = worst.max(s.sup_on_box(rho, samples));
        }
    }
    Ok(worst)
}

/// Left minus right sides of the two Codazzi equations and the Gauss
/// equation, in the series algebra.
pub fn gauss_codazzi_series<T: Scalar>(
    e: &BiSeries<T>,
    g: &BiSeries<T>,
    x: &BiSeries<T>,
    y: &BiSeries<T>,
    z: &BiSeries<T>,
) -> Result<[BiSeries<T>; 3]> {
    let (eu, ev, gu, gv) = (e.diff_u(), e.diff_v(), g.diff_u(), g.diff_v());
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let i2e = e.recip()?.scale(half);
    let c1 = x.diff_v() - y.diff_u()
        - (ev.clone() * x.clone() - eu.clone() * y.clone()) * i2e.clone()
        - y.clone() * y.clone()
        + x.clone() * z.clone();
    let c2 = y.diff_v() - z.diff_u() + (gu.clone() * x.clone() + ev.clone() * y.clone()) * i2e.clone();
    let gauss = ev.diff_v() + gu.diff_u()
        - (eu * gu.clone() + ev.clone() * ev.clone()) * i2e
        - (g.clone() * (x.clone() * z.clone() - y.clone() * y.clone())).scale(two)
        + gv * x.clone()
        - (gu * y.clone()).scale(two)
        - ev * z.clone();
    Ok([c1, c2, gauss])
}

/// Sup-norm residuals `(r_C1, r_C2, r_G)` on `|u|, |v| ≤ rho`.
///
/// Each sample re-expands the given polynomials about the sample point, so
/// truncation error away from the origin is measured, not just the low
/// order coefficients.
pub fn gauss_codazzi_residuals<T: Scalar>(
    e: &BiSeries<T>,
    g: &BiSeries<T>,
    x: &BiSeries<T>,
    y: &BiSeries<T>,
    z: &BiSeries<T>,
    rho: T,
    samples: usize,
) -> Result<[T; 3]> {
    let m = samples.max(2) - 1;
    let mut worst = [T::zero(); 3];
    for a in 0..=m {
        for b in 0..=m {
            let s = rho * (lit::<T>((2 * a) as f64) / lit::<T>(m as f64) - T::one());
            let t = rho * (lit::<T>((2 * b) as f64) / lit::<T>(m as f64) - T::one());
            let r = |p: &BiSeries<T>| p.recenter(s, t).with_order(3);
            let res = gauss_codazzi_series(&r(e), &r(g), &r(x), &r(y), &r(z))?;
            for k in 0..3 {
                worst[k] = worst[k].max(res[k].value().abs());
            }
        }
    }
    Ok(worst)
}

/// `κ_L`, `κ_N`, `κ_G` along the `u`-axis of L-coordinates in which the
/// `u`-axis is a first-kind lightlike curve:
/// `κ_L = -E_v / (2∛G_v)`, `κ_N = ∛G_v X`, `κ_G = -Y + G_uv / (3 G_v)`.
pub fn invariants_l_axis<T: Scalar>(d: &AdaptedData<T>) -> Result<[USeries<T>; 3]> {
    let ev = d.e.diff_v().restrict_v0();
    let gv = d.g.diff_v().restrict_v0();
    let guv = d.g.diff_v().diff_u().restrict_v0();
    if gv.coeff(0).abs() <= tolerance(1e-12) {
        return Err(GeomError::degenerate("G_v = 0: the u-axis is not of the first kind"));
    }
    let n = guv.order().min(d.x.order()).min(ev.order());
    let (ev, gv, guv) = (ev.truncate(n), gv.truncate(n), guv.truncate(n));
    let cg = gv.cbrt()?;
    let kl = ev.scale(lit(-0.5)).div(&cg)?;
    let kn = cg * d.x.restrict_v0().truncate(n);
    let kg = guv.div(&gv.scale(lit(3.0)))? - d.y.restrict_v0().truncate(n);
    Ok([kl, kn, kg])
}

/// `κ_L`, `κ_N`, `κ_G` at a first-kind point straight from their
/// definitions along the characteristic curve, with `L = df(η)` and the
/// null field `N` built explicitly. The curve is oriented along
/// `(λ_v, -λ_u)`.
pub fn invariants_by_definition<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), order: usize) -> Result<[T; 3]> {
    let n = order.max(3);
    let mf = f.first_fundamental_form();
    let c = characteristic_curve(&mf, p, n)?;
    let fj = f.position_jets(p.0, p.1, n + 1)?;
    let fu = fj.map(|s| s.diff_u());
    let fv = fj.map(|s| s.diff_v());
    let m = f.metric_jets(p.0, p.1, n)?;
    let lam = m.lambda();
    let (e0, g0) = (m.e.value(), m.g.value());
    let (eta, h) = if e0.abs() >= g0.abs() {
        ([-m.f.clone(), m.e.clone()], m.e.clone() * lam)
    } else {
        ([m.g.clone(), -m.f.clone()], m.g.clone() * lam)
    };
    let along = |s: &BiSeries<T>| s.compose_curve(&c.du, &c.dv);
    let vcurve = |v: &VBi<T>| -> VSeries<T> { v.map(along) };
    let chat = vcurve(&fj);
    let d1 = chat.map(|s| s.diff());
    let d2 = d1.map(|s| s.diff());
    let (eta1, eta2) = (along(&eta[0]), along(&eta[1]));
    let l: VSeries<T> = vcurve(&fu).map(|s| s.clone() * eta1.clone()) + vcurve(&fv).map(|s| s.clone() * eta2.clone());
    let beta = along(&(eta[0].clone() * h.diff_u() + eta[1].clone() * h.diff_v()));
    let speed2 = d1.inner(&d1);
    let speed = speed2.sqrt()?;
    let k = speed.order().min(l.x1.order()).min(d2.x1.order());
    let inv_speed = speed.recip()?.truncate(k);
    let unit = d1.map(|s| s.truncate(k) * inv_speed.clone());
    let l = l.map(|s| s.truncate(k));
    let nn = null_complement(&unit, &l)?;
    let b0 = beta.coeff(0);
    if b0.abs() <= lit(1e-14) {
        return Err(GeomError::degenerate("β = 0: the point is not of the first kind"));
    }
    let cb = b0.cbrt();
    let s0 = speed.coeff(0);
    let d2_0 = d2.map(|s| s.coeff(0));
    let l0 = l.map(|s| s.coeff(0));
    let n0 = nn.map(|s| s.coeff(0));
    let dn0 = nn.map(|s| s.diff().coeff(0));
    let kl = d2_0.inner(&l0) / (cb * s0 * s0);
    let kn = cb * d2_0.inner(&n0) / (s0 * s0);
    let kg = (l0.inner(&dn0) + beta.coeff(1) / (lit::<T>(3.0) * b0)) / s0;
    Ok([kl, kn, kg])
}

/// L-chart along the characteristic curve through `p` together with the
/// patch re-expressed in it.
pub fn l_chart_surface<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), order: usize) -> Result<(LChart<T>, SurfacePatch<T>)> {
    let mf = f.first_fundamental_form();
    let c = characteristic_curve(&mf, p, order + 1)?;
    let chart = to_l_coordinates(&mf, &c, order)?;
    let patch = f.in_chart(&chart, Domain::square(lit(0.05)))?;
    Ok((chart, patch))
}

/// Report for one lightlike point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocusPointReport<T> {
    pub u: T,
    pub v: T,
    pub kind: LightlikeKind,
    pub kappa_l: Option<T>,
    pub kappa_n: Option<T>,
    pub kappa_g: Option<T>,
    /// `κ̃_L` of the first fundamental form.
    pub kappa_l_intrinsic: Option<T>,
    pub generic: bool,
    /// Largest disagreement between the independent evaluators.
    pub spread: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusReportComponent<T> {
    pub points: Vec<LocusPointReport<T>>,
    pub closed: bool,
}

/// Lightlike locus of a patch with per-point kind and invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct LightlikeLocusReport<T> {
    pub components: Vec<LocusReportComponent<T>>,
}

impl<T: Scalar> LightlikeLocusReport<T> {
    pub fn points(&self) -> impl Iterator<Item = &LocusPointReport<T>> {
        self.components.iter().flat_map(|c| c.points.iter())
    }
}

/// Evaluators of `κ_L, κ_N, κ_G` must agree to this tolerance.
pub const EVALUATOR_TOL: f64 = 1e-7;

/// Threshold on `|κ_L|` for genericity.
pub const GENERIC_KAPPA_TOL: f64 = 1e-8;

/// Kind and invariants at one lightlike point, cross-checking the
/// L-coordinate formulas against the definitions and `κ_L` against the
/// intrinsic formula.
pub fn invariants_at<T: Scalar>(f: &SurfacePatch<T>, p: (T, T), order: usize) -> Result<LocusPointReport<T>> {
    let kind = classify_lightlike(f, p)?;
    if kind == LightlikeKind::SecondKind {
        return Ok(LocusPointReport {
            u: p.0,
            v: p.1,
            kind,
            kappa_l: None,
            kappa_n: None,
            kappa_g: None,
            kappa_l_intrinsic: None,
            generic: false,
            spread: T::zero(),
        });
    }
    let def = invariants_by_definition(f, p, order)?;
    let (_, patch) = l_chart_surface(f, p, order)?;
    let data = adapted_data(&patch, (T::zero(), T::zero()), order.saturating_sub(2).max(2), None)?;
    let ax = invariants_l_axis(&data)?;
    let intrinsic = kappa_tilde_l(&f.first_fundamental_form(), p)?;
    let mut spread = (intrinsic - def[0]).abs();
    for k in 0..3 {
        spread = spread.max((ax[k].coeff(0) - def[k]).abs());
    }
    if spread > tolerance::<T>(EVALUATOR_TOL) * T::one().max(def[0].abs()).max(def[1].abs()).max(def[2].abs()) {
        return Err(GeomError::Residual {
            name: format!("invariant evaluators disagree at ({}, {})", p.0, p.1),
            value: spread.to_f64().unwrap_or(f64::NAN),
            tol: EVALUATOR_TOL,
        });
    }
    Ok(LocusPointReport {
        u: p.0,
        v: p.1,
        kind,
        kappa_l: Some(def[0]),
        kappa_n: Some(def[1]),
        kappa_g: Some(def[2]),
        kappa_l_intrinsic: Some(intrinsic),
        generic: def[0].abs() > tolerance(GENERIC_KAPPA_TOL),
        spread,
    })
}

/// Traces the lightlike set of `f` on its domain and reports every vertex.
pub fn invariants_along_ld<T: Scalar>(f: &SurfacePatch<T>, grid: (usize, usize), order: usize) -> Result<LightlikeLocusReport<T>> {
    let mf = f.first_fundamental_form();
    let comps = trace_semidefinite_set(&mf, f.domain, grid)?;
    let mut out = Vec::with_capacity(comps.len());
    for c in comps {
        let points = c
            .points
            .iter()
            .map(|q| invariants_at(f, (q.u, q.v), order))
            .collect::<Result<Vec<_>>>()?;
        out.push(LocusReportComponent { points, closed: c.closed });
    }
    Ok(LightlikeLocusReport { components: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex_four() -> SurfacePatch<f64> {
        SurfacePatch::parse(
            "(1 - (u+2)*(v + v^2/2))*cos(u) - 1",
            "(1 - (u+2)*(v + v^2/2))*sin(u)",
            "(u+2)*(v - v^2/2)",
            Domain::new((-1.0, 1.0), (-0.25, 0.25)),
        )
        .unwrap()
    }

    #[test]
    fn first_fundamental_form_examples() {
        let m = ex_four().metric_jets(0.0, 0.0, 1).unwrap();
        assert!((m.e.value() - 1.0).abs() < 1e-15 && m.f.value().abs() < 1e-15 && m.g.value().abs() < 1e-15);
        let plane = SurfacePatch::parse("u", "v", "v", Domain::square(1.0)).unwrap();
        let m = plane.metric_jets(0.3, 0.1, 1).unwrap();
        assert_eq!([m.e.value(), m.f.value(), m.g.value()], [1.0, 0.0, 0.0]);
        let graph = SurfacePatch::parse("u", "v", "0", Domain::square(1.0)).unwrap();
        assert_eq!(graph.first_fundamental_form().gram(0.2, 0.2).unwrap(), [1.0, 0.0, 1.0]);
    }

    #[test]
    fn psi_at_origin_of_ex_four() {
        let d = l_gauss_map(&ex_four(), (0.0, 0.0), None).unwrap();
        let want = MinkVector3::new(-0.25, 0.0, -0.25);
        assert!((d.psi - want).norm_inf() < 1e-14);
        assert!(d.frame_residual() < 1e-14 && d.cross_residual() < 1e-12);
    }

    #[test]
    fn both_branches_off_the_locus() {
        let f = ex_four();
        let a = l_gauss_map(&f, (0.1, 0.1), None);
        // F ≠ 0 off the u-axis for this parametrization
        assert!(a.is_err());
        let plane = SurfacePatch::parse("u", "v", "0.5*v", Domain::square(1.0)).unwrap();
        for eps in [1, -1] {
            let d = l_gauss_map(&plane, (0.0, 0.0), Some(eps)).unwrap();
            assert_eq!(d.epsilon, eps);
            assert!(d.frame_residual() < 1e-14 && d.cross_residual() < 1e-12);
        }
    }

    #[test]
    fn ex_four_is_first_kind_and_generic() {
        let f = ex_four();
        for &u in &[-0.5, 0.0, 0.3] {
            assert_eq!(classify_lightlike(&f, (u, 0.0)).unwrap(), LightlikeKind::FirstKind);
            let r = invariants_at(&f, (u, 0.0), 10).unwrap();
            let w = ((u + 2.0) / 4.0).cbrt();
            assert!((r.kappa_l.unwrap() - w).abs() < 1e-9, "{r:?}");
            assert!((r.kappa_n.unwrap() - (2.0 * (u + 2.0)).powf(-1.0 / 3.0)).abs() < 1e-9);
            assert!((r.kappa_g.unwrap() + 1.0 / (3.0 * (u + 2.0))).abs() < 1e-9);
            assert!(r.generic);
        }
    }

    #[test]
    fn flat_data_has_no_residual() {
        let z = BiSeries::<f64>::zeros(4);
        let e = BiSeries::constant(1.0, 4);
        let r = gauss_codazzi_residuals(&e, &z, &z, &z, &z, 0.1, 5).unwrap();
        assert_eq!(r, [0.0; 3]);
        let (u, v) = gw_matrices(&GwInputs::from_series(&e, &z, &z, &z, &z)).unwrap();
        for row in u.iter().chain(v.iter()) {
            for s in row {
                assert_eq!(s.max_abs_coeff(), 0.0);
            }
        }
    }

    #[test]
    fn gw_entries() {
        let e = BiSeries::constant(2.0, 2);
        let g = BiSeries::constant(0.5, 2);
        let x = BiSeries::constant(0.3, 2);
        let y = BiSeries::constant(-0.7, 2);
        let z = BiSeries::constant(0.9, 2);
        let (u, v) = gw_matrices(&GwInputs::from_series(&e, &g, &x, &y, &z)).unwrap();
        assert_eq!(u[2][2].value(), 0.7);
        assert_eq!(v[2][2].value(), -0.9);
        assert_eq!(u[1][2].value(), 0.0);
        assert_eq!(u[0][2].value(), -0.15);
    }
}
