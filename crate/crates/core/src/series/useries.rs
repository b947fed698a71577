use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::scalar::{from_usize, Scalar};
use crate::series::algebra::Algebra;

/// Univariate truncated power series `Σ_{k ≤ N} c_k t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries<T> {
    c: Vec<T>,
}

impl<T: Scalar> USeries<T> {
    pub fn zeros(order: usize) -> Self {
        Self { c: vec![T::zero(); order + 1] }
    }

    pub fn constant(c0: T, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.c[0] = c0;
        s
    }

    /// The series `c0 + t`.
    pub fn variable(c0: T, order: usize) -> Self {
        let mut s = Self::constant(c0, order);
        if order > 0 {
            s.c[1] = T::one();
        }
        s
    }

    pub fn from_coeffs(c: Vec<T>) -> Self {
        assert!(!c.is_empty(), "a series needs at least a constant term");
        Self { c }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Self { c: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, k: usize, x: T) {
        self.c[k] = x;
    }

    /// `k`-th derivative at 0.
    pub fn derivative_at_zero(&self, k: usize) -> T {
        let f: T = (1..=k).map(from_usize::<T>).fold(T::one(), |a, b| a * b);
        self.coeff(k) * f
    }

    pub fn eval(&self, t: T) -> T {
        self.c.iter().rev().fold(T::zero(), |acc, &x| acc * t + x)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(order + 1, T::zero());
        if order < self.order() {
            c.truncate(order + 1);
        }
        Self { c }
    }

    /// Derivative; the order drops by one (an order-0 series maps to 0).
    pub fn diff(&self) -> Self {
        if self.order() == 0 {
            return Self::zeros(0);
        }
        Self::from_fn(self.order() - 1, |k| self.c[k + 1] * from_usize(k + 1))
    }

    /// Antiderivative vanishing at 0; the order grows by one.
    pub fn antideriv(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                T::zero()
            } else {
                self.c[k - 1] / from_usize(k)
            }
        })
    }

    /// The series of `s(-t)`.
    pub fn reflect(&self) -> Self {
        Self::from_fn(self.order(), |k| if k % 2 == 1 { -self.c[k] } else { self.c[k] })
    }

    /// Index of the first coefficient with `|c_k| > tol`, if any.
    pub fn valuation(&self, tol: T) -> Option<usize> {
        self.c.iter().position(|x| x.abs() > tol)
    }

    pub fn max_abs_coeff(&self) -> T {
        crate::scalar::max_abs(self.c.iter().copied())
    }

    /// Divides by `t^k` after checking the first `k` coefficients vanish.
    pub fn shift_divide(&self, k: usize, tol: T) -> Result<Self> {
        if k > self.order() {
            return Err(GeomError::invalid("shift_divide beyond truncation order"));
        }
        if let Some(bad) = self.c[..k].iter().find(|x| x.abs() > tol) {
            return Err(GeomError::degenerate(format!(
                "series does not vanish to order {k} (coefficient {bad:e})"
            )));
        }
        Ok(Self { c: self.c[k..].to_vec() })
    }

    /// `self ∘ inner` where `inner` is any algebra element with zero
    /// constant term.
    pub fn compose<A: Algebra<T>>(&self, inner: &A) -> A {
        let h = inner.clone();
        let mut acc = inner.constant_like(self.c[self.order()]);
        for k in (0..self.order()).rev() {
            acc = (acc * h.clone()).add_scalar(self.c[k]);
        }
        acc
    }

    /// Compositional inverse of a series with `c0 = 0`, `c1 ≠ 0`.
    pub fn reversion(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(Self::zeros(0));
        }
        if self.c[0] != T::zero() || self.c[1] == T::zero() {
            return Err(GeomError::invalid("reversion needs c0 = 0 and c1 ≠ 0"));
        }
        // Newton iteration on self(g(t)) = t, doubling correct order each pass.
        let t = Self::variable(T::zero(), n);
        let mut g = t.scale(self.c[1].recip());
        let d = self.diff();
        let mut correct = 1;
        while correct < n {
            let r = self.compose(&g) - t.clone();
            let dg = d.compose(&g).truncate(n);
            g = g - r.div(&dg)?;
            correct *= 2;
        }
        Ok(g)
    }

    pub fn shifted_by(&self, c: T) -> Self {
        let mut s = self.clone();
        s.c[0] += c;
        s
    }
}

impl<T: Scalar> Add for USeries<T> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let n = self.order().min(b.order());
        Self::from_fn(n, |k| self.c[k] + b.c[k])
    }
}

impl<T: Scalar> Sub for USeries<T> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        let n = self.order().min(b.order());
        Self::from_fn(n, |k| self.c[k] - b.c[k])
    }
}

impl<T: Scalar> Neg for USeries<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl<T: Scalar> Mul for USeries<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let n = self.order().min(b.order());
        Self::from_fn(n, |k| (0..=k).map(|i| self.c[i] * b.c[k - i]).sum())
    }
}

impl<T: Scalar> Algebra<T> for USeries<T> {
    fn constant_like(&self, c: T) -> Self {
        Self::constant(c, self.order())
    }
    fn constant_term(&self) -> T {
        self.c[0]
    }
    fn scale(&self, c: T) -> Self {
        Self { c: self.c.iter().map(|&x| x * c).collect() }
    }
    fn order(&self) -> usize {
        self.c.len() - 1
    }
    fn taylor_compose(&self, coeffs: &[T]) -> Self {
        let mut h = self.clone();
        h.c[0] = T::zero();
        let n = self.order();
        let mut acc = Self::constant(coeffs[n.min(coeffs.len() - 1)], n);
        for k in (0..n.min(coeffs.len() - 1)).rev() {
            acc = (acc * h.clone()).shifted_by(coeffs[k]);
        }
        acc
    }
    fn recip(&self) -> Result<Self> {
        let a0 = self.c[0];
        if a0 == T::zero() || !a0.is_finite() {
            return Err(GeomError::domain("division by a series with zero constant term", format!("{a0}")));
        }
        let n = self.order();
        let mut b = vec![T::zero(); n + 1];
        b[0] = a0.recip();
        for k in 1..=n {
            let s: T = (1..=k).map(|i| self.c[i] * b[k - i]).sum();
            b[k] = -s / a0;
        }
        Ok(Self { c: b })
    }
}
