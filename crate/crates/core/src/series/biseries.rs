use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::scalar::{from_usize, Scalar};
use crate::series::algebra::Algebra;
use crate::series::useries::USeries;

/// Bivariate truncated power series `Σ_{i+j ≤ N} c_ij u^i v^j`.
///
/// Coefficients are stored densely, grouped by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<T> {
    n: usize,
    c: Vec<T>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn binomial_table<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut b = vec![vec![T::zero(); n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = T::one();
        for k in 1..=i {
            b[i][k] = b[i - 1][k - 1] + if k < i { b[i - 1][k] } else { T::zero() };
        }
    }
    b
}

impl<T: Scalar> BiSeries<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            n: order,
            c: vec![T::zero(); idx(0, order) + 1],
        }
    }

    pub fn constant(c0: T, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.c[0] = c0;
        s
    }

    /// The series `u0 + u`.
    pub fn var_u(u0: T, order: usize) -> Self {
        let mut s = Self::constant(u0, order);
        if order > 0 {
            s.set(1, 0, T::one());
        }
        s
    }

    /// The series `v0 + v`.
    pub fn var_v(v0: T, order: usize) -> Self {
        let mut s = Self::constant(v0, order);
        if order > 0 {
            s.set(0, 1, T::one());
        }
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut s = Self::zeros(order);
        for d in 0..=order {
            for j in 0..=d {
                s.c[idx(d - j, j)] = f(d - j, j);
            }
        }
        s
    }

    /// Lifts a series in `u` to a bivariate series independent of `v`.
    pub fn from_useries_u(a: &USeries<T>, order: usize) -> Self {
        Self::from_fn(order, |i, j| if j == 0 { a.coeff(i) } else { T::zero() })
    }

    /// Lifts a series in `v` to a bivariate series independent of `u`.
    pub fn from_useries_v(a: &USeries<T>, order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == 0 { a.coeff(j) } else { T::zero() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i + j <= self.n {
            self.c[idx(i, j)]
        } else {
            T::zero()
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        assert!(i + j <= self.n, "coefficient ({i},{j}) beyond order {}", self.n);
        self.c[idx(i, j)] = x;
    }

    /// Partial derivative `∂_u^i ∂_v^j` at the origin.
    pub fn partial(&self, i: usize, j: usize) -> T {
        let f = |k: usize| (1..=k).map(from_usize::<T>).fold(T::one(), |a, b| a * b);
        self.coeff(i, j) * f(i) * f(j)
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..=self.n).flat_map(move |d| (0..=d).map(move |j| (d - j, j, self.c[idx(d - j, j)])))
    }

    pub fn max_abs_coeff(&self) -> T {
        crate::scalar::max_abs(self.c.iter().copied())
    }

    pub fn eval(&self, u: T, v: T) -> T {
        // Horner in v of Horner-in-u slices.
        let mut acc = T::zero();
        for j in (0..=self.n).rev() {
            let mut s = T::zero();
            for i in (0..=self.n - j).rev() {
                s = s * u + self.c[idx(i, j)];
            }
            acc = acc * v + s;
        }
        acc
    }

    /// Truncates or zero-pads to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_fn(order, |i, j| self.coeff(i, j))
    }

    pub fn diff_u(&self) -> Self {
        let n = self.n.saturating_sub(1);
        if self.n == 0 {
            return Self::zeros(0);
        }
        Self::from_fn(n, |i, j| self.coeff(i + 1, j) * from_usize(i + 1))
    }

    pub fn diff_v(&self) -> Self {
        if self.n == 0 {
            return Self::zeros(0);
        }
        Self::from_fn(self.n - 1, |i, j| self.coeff(i, j + 1) * from_usize(j + 1))
    }

    /// `∫_0^u s du`; exact at order `N + 1`.
    pub fn antideriv_u(&self) -> Self {
        Self::from_fn(self.n + 1, |i, j| {
            if i == 0 {
                T::zero()
            } else {
                self.coeff(i - 1, j) / from_usize(i)
            }
        })
    }

    /// `∫_0^v s dv`; exact at order `N + 1`.
    pub fn antideriv_v(&self) -> Self {
        Self::from_fn(self.n + 1, |i, j| {
            if j == 0 {
                T::zero()
            } else {
                self.coeff(i, j - 1) / from_usize(j)
            }
        })
    }

    /// Restriction `s(u, 0)`.
    pub fn restrict_v0(&self) -> USeries<T> {
        USeries::from_fn(self.n, |i| self.coeff(i, 0))
    }

    /// Restriction `s(0, v)`.
    pub fn restrict_u0(&self) -> USeries<T> {
        USeries::from_fn(self.n, |j| self.coeff(0, j))
    }

    /// Coefficient of `v^k` as a series in `u` of order `N - k`.
    pub fn v_slice(&self, k: usize) -> USeries<T> {
        USeries::from_fn(self.n - k, |i| self.coeff(i, k))
    }

    /// Taylor expansion of the polynomial about `(du, dv)`.
    pub fn recenter(&self, du: T, dv: T) -> Self {
        let n = self.n;
        let b = binomial_table::<T>(n);
        let mut pu = vec![T::one(); n + 1];
        let mut pv = vec![T::one(); n + 1];
        for k in 1..=n {
            pu[k] = pu[k - 1] * du;
            pv[k] = pv[k - 1] * dv;
        }
        Self::from_fn(n, |k, l| {
            let mut acc = T::zero();
            for i in k..=n - l {
                for j in l..=n - i {
                    acc += self.c[idx(i, j)] * b[i][k] * b[j][l] * pu[i - k] * pv[j - l];
                }
            }
            acc
        })
    }

    /// `s(a, b)` for algebra elements `a`, `b` with zero constant term.
    pub fn compose<A: Algebra<T>>(&self, a: &A, b: &A) -> A {
        let n = self.n;
        let mut apow = Vec::with_capacity(n + 1);
        apow.push(a.constant_like(T::one()));
        for k in 1..=n {
            apow.push(apow[k - 1].clone() * a.clone());
        }
        let mut acc = a.constant_like(T::zero());
        for j in (0..=n).rev() {
            let mut slice = a.constant_like(T::zero());
            for i in 0..=n - j {
                let c = self.c[idx(i, j)];
                if c != T::zero() {
                    slice = slice + apow[i].scale(c);
                }
            }
            acc = acc * b.clone() + slice;
        }
        acc
    }

    /// `s(a, b)` where `a`, `b` are univariate series with zero constant term.
    pub fn compose_curve(&self, a: &USeries<T>, b: &USeries<T>) -> USeries<T> {
        self.compose(a, b)
    }

    /// Sup of `|s|` over a square sample grid of half-width `rho`.
    pub fn sup_on_box(&self, rho: T, samples: usize) -> T {
        let m = samples.max(2) - 1;
        let mut best = T::zero();
        for a in 0..=m {
            for b in 0..=m {
                let u = rho * (from_usize::<T>(2 * a) / from_usize::<T>(m) - T::one());
                let v = rho * (from_usize::<T>(2 * b) / from_usize::<T>(m) - T::one());
                best = best.max(self.eval(u, v).abs());
            }
        }
        best
    }

    fn add_const(mut self, c: T) -> Self {
        self.c[0] += c;
        self
    }

    fn checked_divisor(&self) -> Result<()> {
        let a0 = self.c[0];
        if a0 == T::zero() || !a0.is_finite() {
            return Err(GeomError::domain("division by a series with zero constant term", format!("{a0}")));
        }
        Ok(())
    }
}

impl<T: Scalar> Add for BiSeries<T> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        if self.n == b.n {
            let c = self.c.iter().zip(&b.c).map(|(&x, &y)| x + y).collect();
            return Self { n: self.n, c };
        }
        let n = self.n.min(b.n);
        Self::from_fn(n, |i, j| self.coeff(i, j) + b.coeff(i, j))
    }
}

impl<T: Scalar> Sub for BiSeries<T> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        if self.n == b.n {
            let c = self.c.iter().zip(&b.c).map(|(&x, &y)| x - y).collect();
            return Self { n: self.n, c };
        }
        let n = self.n.min(b.n);
        Self::from_fn(n, |i, j| self.coeff(i, j) - b.coeff(i, j))
    }
}

impl<T: Scalar> Neg for BiSeries<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            n: self.n,
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }
}

impl<T: Scalar> Mul for BiSeries<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let n = self.n.min(b.n);
        let mut out = Self::zeros(n);
        for d1 in 0..=n {
            for j1 in 0..=d1 {
                let x = self.c[idx(d1 - j1, j1)];
                if x == T::zero() {
                    continue;
                }
                let i1 = d1 - j1;
                for d2 in 0..=n - d1 {
                    for j2 in 0..=d2 {
                        let y = b.c[idx(d2 - j2, j2)];
                        out.c[idx(i1 + d2 - j2, j1 + j2)] += x * y;
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Algebra<T> for BiSeries<T> {
    fn constant_like(&self, c: T) -> Self {
        Self::constant(c, self.n)
    }
    fn constant_term(&self) -> T {
        self.c[0]
    }
    fn scale(&self, c: T) -> Self {
        Self {
            n: self.n,
            c: self.c.iter().map(|&x| x * c).collect(),
        }
    }
    fn order(&self) -> usize {
        self.n
    }
    fn taylor_compose(&self, coeffs: &[T]) -> Self {
        let mut h = self.clone();
        h.c[0] = T::zero();
        let top = self.n.min(coeffs.len() - 1);
        let mut acc = Self::constant(coeffs[top], self.n);
        for k in (0..top).rev() {
            acc = (acc * h.clone()).add_const(coeffs[k]);
        }
        acc
    }
    fn recip(&self) -> Result<Self> {
        self.checked_divisor()?;
        let a0 = self.c[0];
        let n = self.n;
        let mut b = Self::zeros(n);
        b.c[0] = a0.recip();
        for d in 1..=n {
            for j in 0..=d {
                let i = d - j;
                let mut s = T::zero();
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l == 0 {
                            continue;
                        }
                        s += self.c[idx(k, l)] * b.c[idx(i - k, j - l)];
                    }
                }
                b.c[idx(i, j)] = -s / a0;
            }
        }
        Ok(b)
    }
}
