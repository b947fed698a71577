//! Spacelike curves: causal curvature, type S/T/L/L_k, torsion and
//! pseudo-torsion, frame equations and reconstruction.

use crate::error::{GeomError, Result};
use crate::expr::{Expr, Var};
use crate::minkowski::{det3, pair_orientation, Matrix3, MinkVector3, PairOrientation};
use crate::scalar::{lit, tolerance, Scalar};
use crate::series::{solve_ode_series, Algebra, Mat3, USeries};

/// Vector-valued series in one parameter.
pub type VSeries<T> = MinkVector3<USeries<T>>;

pub fn vdiff<T: Scalar>(v: &VSeries<T>) -> VSeries<T> {
    v.map(|s| s.diff())
}

pub fn vantideriv<T: Scalar>(v: &VSeries<T>) -> VSeries<T> {
    v.map(|s| s.antideriv())
}

pub fn vvalue<T: Scalar>(v: &VSeries<T>) -> MinkVector3<T> {
    v.map(|s| s.coeff(0))
}

pub fn veval<T: Scalar>(v: &VSeries<T>, t: T) -> MinkVector3<T> {
    v.map(|s| s.eval(t))
}

pub fn vtruncate<T: Scalar>(v: &VSeries<T>, order: usize) -> VSeries<T> {
    v.map(|s| s.truncate(order))
}

fn vscale_series<T: Scalar>(v: &VSeries<T>, c: &USeries<T>) -> VSeries<T> {
    v.map(|s| s.clone() * c.clone())
}

fn vconst<T: Scalar>(v: &MinkVector3<T>, order: usize) -> VSeries<T> {
    v.map(|&x| USeries::constant(x, order))
}

/// Curve given by a vector series in its parameter about 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveModel<T> {
    pub gamma: VSeries<T>,
}

impl<T: Scalar> CurveModel<T> {
    pub fn new(gamma: VSeries<T>) -> Self {
        Self { gamma }
    }

    /// Expands three formulas in `var` about `t0`; the new parameter is `t - t0`.
    pub fn from_exprs(x: [&Expr; 3], var: Var, t0: T, order: usize) -> Result<Self> {
        let c = |e: &Expr| e.eval_useries(var, t0, order);
        Ok(Self::new(MinkVector3::new(c(x[0])?, c(x[1])?, c(x[2])?)))
    }

    pub fn order(&self) -> usize {
        self.gamma.x1.order().min(self.gamma.x2.order()).min(self.gamma.x3.order())
    }

    pub fn point(&self, t: T) -> MinkVector3<T> {
        veval(&self.gamma, t)
    }

    /// The curve `t ↦ γ(-t)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.gamma.map(|s| s.reflect()))
    }

    /// Applies `x ↦ A x + b`.
    pub fn transformed(&self, a: &Matrix3<T>, b: &MinkVector3<T>) -> Self {
        let g = &self.gamma;
        let row = |i: usize| {
            g.x1.scale(a.m[i][0]) + g.x2.scale(a.m[i][1]) + g.x3.scale(a.m[i][2])
        };
        let mut out = MinkVector3::new(row(0), row(1), row(2));
        out.x1 = out.x1.shifted_by(b.x1);
        out.x2 = out.x2.shifted_by(b.x2);
        out.x3 = out.x3.shifted_by(b.x3);
        Self::new(out)
    }
}

/// Causal type of a spacelike curve with nonzero curvature vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveType {
    /// Spacelike curvature vector.
    S,
    /// Timelike curvature vector.
    T,
    /// Lightlike curvature vector everywhere; `signature` is `ε` in `e × 𝜿 = ε 𝜿`.
    L { signature: i8 },
    /// Causal curvature vanishing to exact order `k` at the base point.
    Lk { k: usize, signature: i8 },
}

impl CurveType {
    pub fn is_frenet(self) -> bool {
        matches!(self, CurveType::S | CurveType::T)
    }

    /// `σ` with `b = σ e × n`: `-1` for S, `+1` for T.
    pub fn sigma(self) -> Option<i8> {
        match self {
            CurveType::S => Some(-1),
            CurveType::T => Some(1),
            _ => None,
        }
    }

    pub fn signature(self) -> Option<i8> {
        match self {
            CurveType::L { signature } | CurveType::Lk { signature, .. } => Some(signature),
            _ => None,
        }
    }

    fn with_signature(self, signature: i8) -> Self {
        match self {
            CurveType::L { .. } => CurveType::L { signature },
            CurveType::Lk { k, .. } => CurveType::Lk { k, signature },
            other => other,
        }
    }
}

/// Invariants of a unit-speed curve at parameter 0.
///
/// For Frenet curves `torsion` is `τ` and `frame` is `(e, n, b)`; for
/// non-Frenet curves `torsion` is the pseudo-torsion `μ` and `frame` is
/// `(e, 𝜿, β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveInvariants<T> {
    pub kind: CurveType,
    pub theta: USeries<T>,
    pub torsion: USeries<T>,
    pub frame: [MinkVector3<T>; 3],
    pub origin: MinkVector3<T>,
}

/// Threshold for treating the causal curvature as identically zero.
pub const THETA_ZERO_TOL: f64 = 1e-10;

fn coefficient_scale<T: Scalar>(c: &CurveModel<T>) -> T {
    let g = &c.gamma;
    T::one()
        .max(g.x1.max_abs_coeff())
        .max(g.x2.max_abs_coeff())
        .max(g.x3.max_abs_coeff())
}

/// Reparametrizes by arclength from the base point.
pub fn arclength_reparametrize<T: Scalar>(c: &CurveModel<T>) -> Result<CurveModel<T>> {
    let d = vdiff(&c.gamma);
    let q = d.inner(&d);
    let n = c.order();
    let speed2 = q.constant_term();
    if speed2 <= T::zero() {
        return Err(GeomError::invalid(format!(
            "curve is not spacelike at its base point (<γ',γ'> = {speed2})"
        )));
    }
    let s = q.sqrt()?.antideriv();
    let t_of_s = s.truncate(n).reversion()?;
    let g = c.gamma.map(|x| x.compose(&t_of_s));
    Ok(CurveModel::new(g))
}

/// `θ = <γ'', γ''>` of a unit-speed curve.
pub fn causal_curvature<T: Scalar>(c: &CurveModel<T>) -> USeries<T> {
    let k = vdiff(&vdiff(&c.gamma));
    k.inner(&k)
}

/// Classifies a unit-speed curve.
pub fn classify<T: Scalar>(c: &CurveModel<T>) -> Result<CurveType> {
    let tol = tolerance::<T>(THETA_ZERO_TOL) * coefficient_scale(c);
    let e = vdiff(&c.gamma);
    let kappa = vdiff(&e);
    let k0 = vvalue(&kappa);
    if k0.norm_inf() <= tol {
        return Err(GeomError::degenerate("curvature vector vanishes at the base point"));
    }
    let theta = kappa.inner(&kappa);
    let th0 = theta.coeff(0);
    if th0 > tol {
        return Ok(CurveType::S);
    }
    if th0 < -tol {
        return Ok(CurveType::T);
    }
    let e0 = vvalue(&e);
    let signature = match pair_orientation(&e0, &k0, tolerance(1e-8))? {
        PairOrientation::POriented => 1,
        PairOrientation::NOriented => -1,
    };
    Ok(match theta.valuation(tol) {
        None => CurveType::L { signature },
        Some(k) => CurveType::Lk { k, signature },
    })
}

/// `τ = -det(γ', γ'', γ''') / θ` of a unit-speed Frenet curve.
pub fn torsion<T: Scalar>(c: &CurveModel<T>) -> Result<USeries<T>> {
    let d1 = vdiff(&c.gamma);
    let d2 = vdiff(&d1);
    let d3 = vdiff(&d2);
    let theta = d2.inner(&d2);
    let det = det3(&d1, &d2, &d3);
    (-det).div(&theta).map_err(|_| GeomError::degenerate("torsion needs θ ≠ 0"))
}

/// Null vector `N` with `<N, e> = 0` and `<N, l> = 1`, for unit spacelike
/// `e` and a vector `l ⊥ e` that is null or nearly so.
///
/// Uses `w = S l - <S l, e> e`, whose pairing with `l` is the Euclidean
/// norm of `l` and hence nonzero.
pub fn null_complement<A: Algebra<T>, T: Scalar>(e: &MinkVector3<A>, l: &MinkVector3<A>) -> Result<MinkVector3<A>> {
    let sl = MinkVector3::new(l.x1.clone(), l.x2.clone(), -l.x3.clone());
    let w = sl.clone() - e.scaled(&sl.inner(e));
    let lw = l.inner(&w);
    let ww = w.inner(&w);
    let ll = l.inner(l);
    // N = a w + b l with <N,N> = 0 and <N,l> = 1, solved for the root that
    // stays finite as <l,l> → 0.
    // N = a w + b l with a lw + b ll = 1 and a^2 ww + 2ab lw + b^2 ll = 0.
    // Eliminating a leaves (q ll - 1) ll b^2 + 2(1 - q ll) b + q = 0 with
    // q = ww / lw^2; take the root that stays finite as ll -> 0.
    let inv = lw.recip()?;
    let one = lw.constant_like(T::one());
    let q = ww * inv.clone() * inv.clone();
    let qll = q.clone() * ll.clone();
    let qa = ll.clone() * (qll.clone() - one.clone());
    let qb = (one.clone() - qll).scale(lit(2.0));
    let disc = qb.clone() * qb.clone() - qa * q.clone().scale(lit(4.0));
    let b = q.scale(lit(-2.0)).div(&(qb + disc.sqrt()?))?;
    let a = (one - b.clone() * ll) * inv;
    Ok(w.scaled(&a) + l.scaled(&b))
}

/// Pseudo-binormal `β` and pseudo-torsion `μ = -<𝜿', β>` of a unit-speed
/// curve of type L or L_k.
pub fn pseudo_frame<T: Scalar>(c: &CurveModel<T>, kind: CurveType) -> Result<(VSeries<T>, USeries<T>)> {
    let e = vdiff(&c.gamma);
    let kappa = vdiff(&e);
    let n = kappa.x1.order();
    let e = vtruncate(&e, n);
    let beta = match kind {
        CurveType::L { .. } => null_complement(&e, &kappa)?,
        CurveType::Lk { k, signature } => {
            // β = (𝜿 - ε e × 𝜿)/θ, a removable singularity of order k.
            let eps = USeries::constant(lit::<T>(signature as f64), n);
            let num = kappa.clone() - vscale_series(&e.cross(&kappa), &eps);
            let theta = kappa.inner(&kappa);
            let tol = tolerance::<T>(1e-8) * coefficient_scale(c);
            let den = theta.shift_divide(k, tol)?;
            let num = num.try_map(|s| s.shift_divide(k, tol)).map_err(|_| {
                GeomError::degenerate(format!("pseudo-binormal numerator does not vanish to order {k}"))
            })?;
            let inv = den.recip()?;
            vscale_series(&num, &inv)
        }
        _ => return Err(GeomError::invalid("pseudo_frame needs a type L or L_k curve")),
    };
    let mu = -vdiff(&kappa).inner(&beta);
    Ok((beta, mu))
}

/// Frenet frame `(e, n, b)` of a unit-speed Frenet curve as series.
pub fn frenet_frame<T: Scalar>(c: &CurveModel<T>, kind: CurveType) -> Result<[VSeries<T>; 3]> {
    let sigma = kind
        .sigma()
        .ok_or_else(|| GeomError::invalid("frenet_frame needs a type S or T curve"))?;
    let e = vdiff(&c.gamma);
    let kappa = vdiff(&e);
    let theta = kappa.inner(&kappa);
    let k = if theta.coeff(0) > T::zero() { theta.sqrt()? } else { (-theta).sqrt()? };
    let nn = vscale_series(&kappa, &k.recip()?);
    let e = vtruncate(&e, nn.x1.order());
    let s = USeries::constant(lit::<T>(sigma as f64), nn.x1.order());
    let b = vscale_series(&e.cross(&nn), &s);
    Ok([e, nn, b])
}

/// Full invariants of a regular spacelike curve at its base point.
pub fn analyze<T: Scalar>(c: &CurveModel<T>) -> Result<CurveInvariants<T>> {
    let c = arclength_reparametrize(c)?;
    let kind = classify(&c)?;
    let theta = causal_curvature(&c);
    let origin = vvalue(&c.gamma);
    if kind.is_frenet() {
        let tau = torsion(&c)?;
        let f = frenet_frame(&c, kind)?;
        Ok(CurveInvariants {
            kind,
            theta,
            torsion: tau,
            frame: [vvalue(&f[0]), vvalue(&f[1]), vvalue(&f[2])],
            origin,
        })
    } else {
        let (beta, mu) = pseudo_frame(&c, kind)?;
        let e = vdiff(&c.gamma);
        let kappa = vdiff(&e);
        Ok(CurveInvariants {
            kind,
            theta,
            torsion: mu,
            frame: [vvalue(&e), vvalue(&kappa), vvalue(&beta)],
            origin,
        })
    }
}

fn gram_error<T: Scalar>(frame: &[MinkVector3<T>; 3], want: [[T; 3]; 3]) -> T {
    let mut err = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            err = err.max((frame[i].inner(&frame[j]) - want[i][j]).abs());
        }
    }
    err
}

/// Checks that the initial frame has the Gram matrix its type requires.
pub fn check_initial_frame<T: Scalar>(inv: &CurveInvariants<T>, tol: T) -> Result<()> {
    let z = T::zero();
    let o = T::one();
    let f = &inv.frame;
    let th0 = inv.theta.coeff(0);
    match inv.kind {
        CurveType::S | CurveType::T => {
            let d = if matches!(inv.kind, CurveType::S) { o } else { -o };
            if th0 * d <= z {
                return Err(GeomError::invalid("sign of θ(0) does not match the curve type"));
            }
            let err = gram_error(f, [[o, z, z], [z, d, z], [z, z, -d]]);
            let sigma = lit::<T>(inv.kind.sigma().unwrap_or(1) as f64);
            let berr = (f[0].cross(&f[1]).scale(sigma) - f[2]).norm_inf();
            if err > tol || berr > tol {
                return Err(GeomError::invalid(format!(
                    "initial Frenet frame has the wrong Gram matrix (deviation {})",
                    err.max(berr)
                )));
            }
        }
        CurveType::L { signature } | CurveType::Lk { signature, .. } => {
            let err = gram_error(f, [[o, z, z], [z, th0, o], [z, o, z]]);
            if err > tol {
                return Err(GeomError::invalid(format!(
                    "initial pseudo frame has the wrong Gram matrix (deviation {err})"
                )));
            }
            let eps = lit::<T>(signature as f64);
            let serr = (f[0].cross(&f[1]) - f[1].scale(eps)).norm_inf();
            if matches!(inv.kind, CurveType::L { .. }) && serr > tol {
                return Err(GeomError::invalid("initial frame does not have the stated signature"));
            }
        }
    }
    Ok(())
}

/// Connection matrix `A` of the frame equation `F' = F A`.
///
/// Frenet, with `δ = sgn θ` and `k = sqrt|θ|`:
/// `e' = k n`, `n' = -δ k e - δ τ b`, `b' = -δ τ n`.
/// Non-Frenet: `e' = 𝜿`, `𝜿' = -θ e - μ 𝜿 + (θ μ + θ'/2) β`, `β' = -e + μ β`.
pub fn frame_generator<T: Scalar>(inv: &CurveInvariants<T>, order: usize) -> Result<Mat3<USeries<T>>> {
    let n = order;
    let theta = inv.theta.truncate(n);
    let tors = inv.torsion.truncate(n);
    let zero = USeries::zeros(n);
    let one = USeries::constant(T::one(), n);
    if inv.kind.is_frenet() {
        let d = if theta.coeff(0) > T::zero() { T::one() } else { -T::one() };
        let k = theta.scale(d).sqrt()?;
        let dk = k.scale(-d);
        let dt = tors.scale(-d);
        Ok([
            [zero.clone(), dk, zero.clone()],
            [k, zero.clone(), dt.clone()],
            [zero.clone(), dt, zero],
        ])
    } else {
        let dtheta = inv.theta.diff().truncate(n);
        let c = theta.clone() * tors.clone() + dtheta.scale(lit(0.5));
        Ok([
            [zero.clone(), -theta, -one.clone()],
            [one, -tors.clone(), zero.clone()],
            [zero, c, tors],
        ])
    }
}

/// Integrates the frame equation and `γ = origin + ∫ e`.
pub fn reconstruct_from_invariants<T: Scalar>(inv: &CurveInvariants<T>, order: usize) -> Result<CurveModel<T>> {
    check_initial_frame(inv, tolerance(1e-9))?;
    let a = frame_generator(inv, order)?;
    let f0 = Matrix3::from_columns(inv.frame);
    let f = solve_ode_series(&a, &f0);
    let e = MinkVector3::new(f[0][0].clone(), f[1][0].clone(), f[2][0].clone());
    let g = vantideriv(&e) + vconst(&inv.origin, order + 1);
    Ok(CurveModel::new(g))
}

/// Frame series along a reconstruction, columns as in [`CurveInvariants::frame`].
pub fn frame_series<T: Scalar>(inv: &CurveInvariants<T>, order: usize) -> Result<[VSeries<T>; 3]> {
    let a = frame_generator(inv, order)?;
    let f = solve_ode_series(&a, &Matrix3::from_columns(inv.frame));
    Ok(std::array::from_fn(|j| {
        MinkVector3::new(f[0][j].clone(), f[1][j].clone(), f[2][j].clone())
    }))
}

/// Invariants of the reversed curve `u ↦ γ(-u)`.
pub fn reversed_invariants<T: Scalar>(inv: &CurveInvariants<T>) -> CurveInvariants<T> {
    let [e, a, b] = inv.frame;
    if inv.kind.is_frenet() {
        CurveInvariants {
            kind: inv.kind,
            theta: inv.theta.reflect(),
            torsion: inv.torsion.reflect(),
            frame: [-e, a, -b],
            origin: inv.origin,
        }
    } else {
        let sig = inv.kind.signature().unwrap_or(1);
        CurveInvariants {
            kind: inv.kind.with_signature(-sig),
            theta: inv.theta.reflect(),
            torsion: -inv.torsion.reflect(),
            frame: [-e, a, b],
            origin: inv.origin,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformMode {
    /// `θ_s = e^s θ`
    Scale,
    /// `θ_s = θ + s`
    Shift,
}

/// Half-width of the parameter interval on which a deformed `θ` must keep its sign.
pub const DEFORM_CHECK_RADIUS: f64 = 0.1;

/// Deforms the causal curvature of a Frenet curve, keeping `τ`.
pub fn deform_invariants<T: Scalar>(inv: &CurveInvariants<T>, s: T, mode: DeformMode) -> Result<CurveInvariants<T>> {
    if !inv.kind.is_frenet() {
        return Err(GeomError::invalid("deformation needs a Frenet curve"));
    }
    let theta = match mode {
        DeformMode::Scale => inv.theta.scale(s.exp()),
        DeformMode::Shift => inv.theta.shifted_by(s),
    };
    let sgn = inv.theta.coeff(0).signum();
    let r = lit::<T>(DEFORM_CHECK_RADIUS);
    for i in 0..=100 {
        let t = r * (lit::<T>(i as f64 / 50.0) - T::one());
        if theta.eval(t) * sgn <= T::zero() {
            return Err(GeomError::invalid(format!(
                "deformed causal curvature changes sign near u = {t}; the curve type would change"
            )));
        }
    }
    Ok(CurveInvariants { theta, ..inv.clone() })
}

/// Unit-speed frame at the origin for the standard plane circle
/// `(cos u - 1, sin u, 0)`.
pub fn circle_invariants<T: Scalar>(order: usize) -> CurveInvariants<T> {
    let z = T::zero();
    let o = T::one();
    let e = MinkVector3::new(z, o, z);
    let n = MinkVector3::new(-o, z, z);
    CurveInvariants {
        kind: CurveType::S,
        theta: USeries::constant(o, order),
        torsion: USeries::zeros(order),
        frame: [e, n, -e.cross(&n)],
        origin: MinkVector3::zero(),
    }
}
