//! Truncated-Taylor algebras and the elementary functions on them.

use crate::error::{GeomError, Result};
use crate::scalar::{from_usize, lit, tolerance, Ring, Scalar};

/// A commutative algebra of truncated Taylor expansions over `T`.
///
/// Scalars are the order-0 case. Elementary functions are evaluated by
/// composing their one-variable Taylor coefficients at the constant term
/// with the nilpotent remainder.
pub trait Algebra<T: Scalar>: Ring {
    /// Constant with the same truncation shape as `self`.
    fn constant_like(&self, c: T) -> Self;
    fn constant_term(&self) -> T;
    fn scale(&self, c: T) -> Self;
    /// Truncation order (0 for plain scalars).
    fn order(&self) -> usize;
    /// `Σ c_k (self - a0)^k` where `a0` is the constant term.
    fn taylor_compose(&self, coeffs: &[T]) -> Self;

    fn add_scalar(&self, c: T) -> Self {
        self.clone() + self.constant_like(c)
    }

    fn recip(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0 == T::zero() || !a0.is_finite() {
            return Err(GeomError::domain("division by a quantity with zero constant term", format!("{a0}")));
        }
        let n = self.order();
        // 1/(a0 + h) = Σ (-1)^k h^k / a0^(k+1)
        let mut c = Vec::with_capacity(n + 1);
        let mut p = a0.recip();
        for _ in 0..=n {
            c.push(p);
            p = -p / a0;
        }
        Ok(self.taylor_compose(&c))
    }

    fn div(&self, d: &Self) -> Result<Self> {
        Ok(self.clone() * d.recip()?)
    }

    fn powi(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut base = self.clone();
        let mut acc = self.constant_like(T::one());
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }

    fn exp(&self) -> Self {
        let a0 = self.constant_term();
        self.taylor_compose(&taylor_coeffs(Elementary::Exp, a0, self.order()).expect("exp is entire"))
    }
    fn sin(&self) -> Self {
        let a0 = self.constant_term();
        self.taylor_compose(&taylor_coeffs(Elementary::Sin, a0, self.order()).expect("sin is entire"))
    }
    fn cos(&self) -> Self {
        let a0 = self.constant_term();
        self.taylor_compose(&taylor_coeffs(Elementary::Cos, a0, self.order()).expect("cos is entire"))
    }
    fn ln(&self) -> Result<Self> {
        let a0 = self.constant_term();
        Ok(self.taylor_compose(&taylor_coeffs(Elementary::Log, a0, self.order())?))
    }
    fn sqrt(&self) -> Result<Self> {
        let a0 = self.constant_term();
        Ok(self.taylor_compose(&taylor_coeffs(Elementary::Sqrt, a0, self.order())?))
    }
    /// Real cube root, defined for negative constant terms.
    fn cbrt(&self) -> Result<Self> {
        let a0 = self.constant_term();
        Ok(self.taylor_compose(&taylor_coeffs(Elementary::Cbrt, a0, self.order())?))
    }
    /// Real power with a constant exponent.
    fn powf(&self, r: T) -> Result<Self> {
        let a0 = self.constant_term();
        Ok(self.taylor_compose(&taylor_coeffs(Elementary::Pow(r), a0, self.order())?))
    }
}

/// Elementary one-variable functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary<T> {
    Exp,
    Sin,
    Cos,
    Log,
    Sqrt,
    Cbrt,
    Pow(T),
}

/// Real value of `x^r`, including odd-denominator rational powers of
/// negative numbers.
pub fn real_pow<T: Scalar>(x: T, r: T) -> Option<T> {
    if x > T::zero() {
        return Some(x.powf(r));
    }
    if x == T::zero() {
        return if r > T::zero() {
            Some(T::zero())
        } else if r == T::zero() {
            Some(T::one())
        } else {
            None
        };
    }
    if r == r.round() {
        return Some(x.powi(r.to_i32()?));
    }
    let tol = tolerance::<T>(1e-12);
    for q in (3..=15).step_by(2) {
        let p = r * from_usize::<T>(q);
        if (p - p.round()).abs() <= tol * p.abs().max(T::one()) {
            let mag = (-x).powf(r);
            let odd = p.round().to_i64()? % 2 != 0;
            return Some(if odd { -mag } else { mag });
        }
    }
    None
}

/// Taylor coefficients `f^(k)(a0)/k!` for `k = 0..=n`.
pub fn taylor_coeffs<T: Scalar>(f: Elementary<T>, a0: T, n: usize) -> Result<Vec<T>> {
    let mut c = Vec::with_capacity(n + 1);
    let mut fact = T::one();
    match f {
        Elementary::Exp => {
            let e = a0.exp();
            for k in 0..=n {
                if k > 0 {
                    fact *= from_usize(k);
                }
                c.push(e / fact);
            }
        }
        Elementary::Sin | Elementary::Cos => {
            let (s, co) = a0.sin_cos();
            // derivatives cycle through sin, cos, -sin, -cos
            let cyc = if matches!(f, Elementary::Sin) { [s, co, -s, -co] } else { [co, -s, -co, s] };
            for k in 0..=n {
                if k > 0 {
                    fact *= from_usize(k);
                }
                c.push(cyc[k % 4] / fact);
            }
        }
        Elementary::Log => {
            if a0 <= T::zero() {
                return Err(GeomError::domain("log of non-positive value", format!("{a0}")));
            }
            c.push(a0.ln());
            let mut p = a0;
            for k in 1..=n {
                let sgn = if k % 2 == 1 { T::one() } else { -T::one() };
                c.push(sgn / (from_usize::<T>(k) * p));
                p *= a0;
            }
        }
        Elementary::Sqrt => {
            if a0 < T::zero() || (a0 == T::zero() && n > 0) {
                return Err(GeomError::domain("sqrt of a value that has no analytic real root", format!("{a0}")));
            }
            return binomial_coeffs(a0, a0.sqrt(), lit(0.5), n);
        }
        Elementary::Cbrt => {
            if a0 == T::zero() && n > 0 {
                return Err(GeomError::domain("cbrt is not analytic at 0", format!("{a0}")));
            }
            return binomial_coeffs(a0, a0.cbrt(), T::one() / lit(3.0), n);
        }
        Elementary::Pow(r) => {
            let v = real_pow(a0, r)
                .ok_or_else(|| GeomError::domain(format!("power {r} has no real value"), format!("{a0}")))?;
            if a0 == T::zero() && n > 0 {
                return Err(GeomError::domain(format!("power {r} is not analytic at 0"), format!("{a0}")));
            }
            return binomial_coeffs(a0, v, r, n);
        }
    }
    Ok(c)
}

// f(a0 + h) = f(a0) (1 + h/a0)^r
fn binomial_coeffs<T: Scalar>(a0: T, f0: T, r: T, n: usize) -> Result<Vec<T>> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(f0);
    let mut b = T::one();
    let mut p = T::one();
    for k in 1..=n {
        b = b * (r - from_usize::<T>(k - 1)) / from_usize::<T>(k);
        p = p * a0;
        c.push(f0 * b / p);
    }
    Ok(c)
}

impl<T: Scalar> Algebra<T> for T {
    fn constant_like(&self, c: T) -> T {
        c
    }
    fn constant_term(&self) -> T {
        *self
    }
    fn scale(&self, c: T) -> T {
        *self * c
    }
    fn order(&self) -> usize {
        0
    }
    fn taylor_compose(&self, coeffs: &[T]) -> T {
        coeffs[0]
    }
}
