//! Lorentz-Minkowski linear algebra with metric signature (+, +, -).

use std::ops::{Add, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::scalar::{Ring, Scalar};

/// Default relative tolerance for causal classification.
pub const DEFAULT_CAUSAL_TOL: f64 = 1e-9;

/// Vector of Minkowski 3-space.
///
/// The component type is generic so the same inner and cross products
/// serve plain scalars and truncated series alike.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MinkVector3<A> {
    pub x1: A,
    pub x2: A,
    pub x3: A,
}

impl<A> MinkVector3<A> {
    pub const fn new(x1: A, x2: A, x3: A) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn map<B>(&self, mut f: impl FnMut(&A) -> B) -> MinkVector3<B> {
        MinkVector3::new(f(&self.x1), f(&self.x2), f(&self.x3))
    }

    pub fn try_map<B, E>(&self, mut f: impl FnMut(&A) -> std::result::Result<B, E>) -> std::result::Result<MinkVector3<B>, E> {
        Ok(MinkVector3::new(f(&self.x1)?, f(&self.x2)?, f(&self.x3)?))
    }

    pub fn as_array(&self) -> [&A; 3] {
        [&self.x1, &self.x2, &self.x3]
    }
}

impl<A: Clone> MinkVector3<A> {
    pub fn from_array(a: [A; 3]) -> Self {
        let [x1, x2, x3] = a;
        Self { x1, x2, x3 }
    }

    pub fn to_array(&self) -> [A; 3] {
        [self.x1.clone(), self.x2.clone(), self.x3.clone()]
    }

    pub fn component(&self, i: usize) -> A {
        match i {
            0 => self.x1.clone(),
            1 => self.x2.clone(),
            2 => self.x3.clone(),
            _ => panic!("component index {i} out of range"),
        }
    }
}

impl<A: Ring> MinkVector3<A> {
    /// Lorentzian inner product `x1 y1 + x2 y2 - x3 y3`.
    pub fn inner(&self, w: &Self) -> A {
        self.x1.clone() * w.x1.clone() + self.x2.clone() * w.x2.clone()
            - self.x3.clone() * w.x3.clone()
    }

    /// Lorentzian cross product `S (v x_E w)`.
    ///
    /// Reading the product as `(S v) x_E w` would break the scalar triple
    /// identity `det(u, v, w) = <u, v x w>`.
    pub fn cross(&self, w: &Self) -> Self {
        let e = self.euclid_cross(w);
        MinkVector3::new(e.x1, e.x2, -e.x3)
    }

    pub fn euclid_cross(&self, w: &Self) -> Self {
        let (a, b) = (self, w);
        MinkVector3::new(
            a.x2.clone() * b.x3.clone() - a.x3.clone() * b.x2.clone(),
            a.x3.clone() * b.x1.clone() - a.x1.clone() * b.x3.clone(),
            a.x1.clone() * b.x2.clone() - a.x2.clone() * b.x1.clone(),
        )
    }

    pub fn scaled(&self, c: &A) -> Self {
        self.map(|x| x.clone() * c.clone())
    }
}

impl<A: Ring> Add for MinkVector3<A> {
    type Output = Self;
    fn add(self, w: Self) -> Self {
        MinkVector3::new(self.x1 + w.x1, self.x2 + w.x2, self.x3 + w.x3)
    }
}

impl<A: Ring> Sub for MinkVector3<A> {
    type Output = Self;
    fn sub(self, w: Self) -> Self {
        MinkVector3::new(self.x1 - w.x1, self.x2 - w.x2, self.x3 - w.x3)
    }
}

impl<A: Ring> Neg for MinkVector3<A> {
    type Output = Self;
    fn neg(self) -> Self {
        MinkVector3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl<T: Scalar> MinkVector3<T> {
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }
    pub fn e1() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }
    pub fn e2() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }
    pub fn e3() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.x1 * c, self.x2 * c, self.x3 * c)
    }

    /// Maximum absolute component.
    pub fn norm_inf(&self) -> T {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    /// Euclidean length, used only for tolerances.
    pub fn euclid_norm(&self) -> T {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// `sqrt(|<v, v>|)`.
    pub fn lnorm(&self) -> T {
        self.inner(self).abs().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

/// Free-function form of [`MinkVector3::inner`].
pub fn inner<A: Ring>(v: &MinkVector3<A>, w: &MinkVector3<A>) -> A {
    v.inner(w)
}

/// Free-function form of [`MinkVector3::cross`].
pub fn cross<A: Ring>(v: &MinkVector3<A>, w: &MinkVector3<A>) -> MinkVector3<A> {
    v.cross(w)
}

/// Determinant of the matrix with columns `u, v, w`.
pub fn det3<A: Ring>(u: &MinkVector3<A>, v: &MinkVector3<A>, w: &MinkVector3<A>) -> A {
    let e = v.euclid_cross(w);
    u.x1.clone() * e.x1 + u.x2.clone() * e.x2 + u.x3.clone() * e.x3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

/// Classifies `v` by the sign of `<v, v>`.
///
/// `tol` is relative to `max(1, |v|^2)`; a vector with all components
/// within `tol` of zero is `Zero`, never `Lightlike`.
pub fn causal_character<T: Scalar>(v: &MinkVector3<T>, tol: T) -> CausalCharacter {
    if v.norm_inf() <= tol {
        return CausalCharacter::Zero;
    }
    let q = v.inner(v);
    let scale = T::one().max(v.euclid_norm().powi(2));
    if q.abs() <= tol * scale {
        CausalCharacter::Lightlike
    } else if q > T::zero() {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairOrientation {
    /// `v x w = |v| w`
    POriented,
    /// `v x w = -|v| w`
    NOriented,
}

impl PairOrientation {
    /// `+1` for p-oriented, `-1` for n-oriented.
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            PairOrientation::POriented => T::one(),
            PairOrientation::NOriented => -T::one(),
        }
    }
}

/// Decides which of `v x w = +|v| w` or `v x w = -|v| w` holds for a
/// spacelike `v` and a lightlike `w` orthogonal to it.
pub fn pair_orientation<T: Scalar>(
    v: &MinkVector3<T>,
    w: &MinkVector3<T>,
    tol: T,
) -> Result<PairOrientation> {
    if causal_character(v, tol) != CausalCharacter::Spacelike {
        return Err(GeomError::invalid("pair_orientation: first vector must be spacelike"));
    }
    if causal_character(w, tol) != CausalCharacter::Lightlike {
        return Err(GeomError::invalid("pair_orientation: second vector must be lightlike"));
    }
    let scale = v.euclid_norm() * w.euclid_norm();
    if v.inner(w).abs() > tol * scale.max(T::one()) {
        return Err(GeomError::invalid("pair_orientation: vectors are not orthogonal"));
    }
    let c = v.cross(w);
    let nv = v.lnorm();
    let plus = (c - w.scale(nv)).norm_inf();
    let minus = (c + w.scale(nv)).norm_inf();
    let thresh = tol.sqrt() * (nv * w.norm_inf()).max(T::one());
    if plus <= thresh && plus <= minus {
        Ok(PairOrientation::POriented)
    } else if minus <= thresh {
        Ok(PairOrientation::NOriented)
    } else {
        Err(GeomError::invalid("pair_orientation: neither orientation holds"))
    }
}

/// Real 3x3 matrix. Columns are the vectors it is built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix3<T> {
    /// Row-major entries: `m[i][j]` is row `i`, column `j`.
    pub m: [[T; 3]; 3],
}

impl<T: Scalar> Matrix3<T> {
    pub fn from_rows(m: [[T; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn from_columns(c: [MinkVector3<T>; 3]) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (j, v) in c.iter().enumerate() {
            m[0][j] = v.x1;
            m[1][j] = v.x2;
            m[2][j] = v.x3;
        }
        Self { m }
    }

    pub fn from_f64(rows: [[f64; 3]; 3]) -> Self {
        Self {
            m: rows.map(|r| r.map(crate::scalar::lit)),
        }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one(), T::one())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero();
        Self {
            m: [[a, z, z], [z, b, z], [z, z, c]],
        }
    }

    /// The metric matrix `S = diag(1, 1, -1)`.
    pub fn s() -> Self {
        Self::diag(T::one(), T::one(), -T::one())
    }

    /// The reflection `R = diag(1, -1, 1)`.
    pub fn r() -> Self {
        Self::diag(T::one(), -T::one(), T::one())
    }

    pub fn column(&self, j: usize) -> MinkVector3<T> {
        MinkVector3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn columns(&self) -> [MinkVector3<T>; 3] {
        [self.column(0), self.column(1), self.column(2)]
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }

    pub fn mul(&self, b: &Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| self.m[i][k] * b.m[k][j]).sum();
            }
        }
        Self { m: out }
    }

    pub fn apply(&self, v: &MinkVector3<T>) -> MinkVector3<T> {
        let a = v.to_array();
        let r = |i: usize| (0..3).map(|k| self.m[i][k] * a[k]).sum();
        MinkVector3::new(r(0), r(1), r(2))
    }

    pub fn det(&self) -> T {
        let c = self.columns();
        det3(&c[0], &c[1], &c[2])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() || !d.is_finite() {
            return None;
        }
        let m = &self.m;
        let mut inv = [[T::zero(); 3]; 3];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                // cofactor of entry (j, i)
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                *x = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
            }
        }
        Some(Self { m: inv })
    }

    pub fn sub(&self, b: &Self) -> Self {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = self.m[i][j] - b.m[i][j];
            }
        }
        out
    }

    pub fn max_abs(&self) -> T {
        crate::scalar::max_abs(self.m.iter().flatten().copied())
    }

    /// Gram matrix `A^T S A` of the columns.
    pub fn gram(&self) -> Self {
        self.transpose().mul(&Self::s()).mul(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupClass {
    /// Identity component `SO+(1,2)`.
    SOplus12,
    /// `SO(1,2)` but time-orientation reversing.
    SO12,
    /// `O(1,2)` with determinant `-1`.
    O12,
    None,
}

/// Most specific Lorentz group containing `a`.
pub fn group_membership<T: Scalar>(a: &Matrix3<T>, tol: T) -> GroupClass {
    if a.gram().sub(&Matrix3::s()).max_abs() > tol {
        return GroupClass::None;
    }
    if (a.det() - T::one()).abs() > tol {
        GroupClass::O12
    } else if a.m[2][2] > T::zero() {
        GroupClass::SOplus12
    } else {
        GroupClass::SO12
    }
}

/// Maps a null basis `(w1, w2, w3)` to its normal form.
///
/// For `det(w1, w2, w3) = 1` the image is `(e1, e-/sqrt2, e+/sqrt2)`, otherwise
/// `(e1, -e+/sqrt2, -e-/sqrt2)`, where `e± = e2 ± e3`. The returned `T` lies
/// in `SO(1,2)`.
pub fn normalize_null_basis<T: Scalar>(
    w1: &MinkVector3<T>,
    w2: &MinkVector3<T>,
    w3: &MinkVector3<T>,
    tol: T,
) -> Result<Matrix3<T>> {
    let w = Matrix3::from_columns([*w1, *w2, *w3]);
    let p = null_basis_gram::<T>();
    let dev = w.gram().sub(&p).max_abs();
    if dev > tol {
        return Err(GeomError::invalid(format!(
            "normalize_null_basis: not a null basis (Gram deviation {dev})"
        )));
    }
    let target = null_normal_form(w.det() > T::zero());
    let winv = w
        .inverse()
        .ok_or_else(|| GeomError::invalid("normalize_null_basis: singular basis"))?;
    Ok(target.mul(&winv))
}

/// Gram matrix of a null basis: `<w1,w1> = <w2,w3> = 1`, the rest zero.
pub fn null_basis_gram<T: Scalar>() -> Matrix3<T> {
    Matrix3::from_f64([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
}

/// Normal form null basis for the given determinant sign.
pub fn null_normal_form<T: Scalar>(positive: bool) -> Matrix3<T> {
    let r = T::FRAC_1_SQRT_2();
    let em = MinkVector3::new(T::zero(), r, -r);
    let ep = MinkVector3::new(T::zero(), r, r);
    if positive {
        Matrix3::from_columns([MinkVector3::e1(), em, ep])
    } else {
        Matrix3::from_columns([MinkVector3::e1(), -ep, -em])
    }
}

/// Boost-rotation element of `SO+(1,2)`: rotation by `phi` in the
/// `(e1, e2)` plane followed by boosts of rapidity `a` along `e1` and
/// `b` along `e2`.
pub fn lorentz_transform<T: Scalar>(phi: T, a: T, b: T) -> Matrix3<T> {
    let (s, c) = phi.sin_cos();
    let z = T::zero();
    let o = T::one();
    let rot = Matrix3::from_rows([[c, -s, z], [s, c, z], [z, z, o]]);
    let (sa, ca) = (a.sinh(), a.cosh());
    let boost1 = Matrix3::from_rows([[ca, z, sa], [z, o, z], [sa, z, ca]]);
    let (sb, cb) = (b.sinh(), b.cosh());
    let boost2 = Matrix3::from_rows([[o, z, z], [z, cb, sb], [z, sb, cb]]);
    boost2.mul(&boost1).mul(&rot)
}
