use crate::minkowski::Matrix3;
use crate::scalar::{from_usize, Ring, Scalar};
use crate::series::useries::USeries;

/// 3x3 matrix over a ring, row-major.
pub type Mat3<A> = [[A; 3]; 3];

pub fn mat_mul<A: Ring>(a: &Mat3<A>, b: &Mat3<A>) -> Mat3<A> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            a[i][0].clone() * b[0][j].clone()
                + a[i][1].clone() * b[1][j].clone()
                + a[i][2].clone() * b[2][j].clone()
        })
    })
}

pub fn mat_sub<A: Ring>(a: &Mat3<A>, b: &Mat3<A>) -> Mat3<A> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() - b[i][j].clone()))
}

pub fn mat_transpose<A: Clone>(a: &Mat3<A>) -> Mat3<A> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn mat_map<A, B>(a: &Mat3<A>, mut f: impl FnMut(&A) -> B) -> Mat3<B> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&a[i][j])))
}

/// Solves `F' = F A`, `F(0) = F0` by the coefficient recurrence
/// `F_{k+1} = (1/(k+1)) Σ_{j ≤ k} F_j A_{k-j}`.
///
/// The result has the order of `A`; `F' - F A` vanishes through order `N - 1`.
pub fn solve_ode_series<T: Scalar>(a: &Mat3<USeries<T>>, f0: &Matrix3<T>) -> Mat3<USeries<T>> {
    let n = a.iter().flatten().map(|s| s.order()).min().unwrap_or(0);
    let mut coef: Vec<[[T; 3]; 3]> = Vec::with_capacity(n + 1);
    coef.push(f0.m);
    for k in 0..n {
        let mut next = [[T::zero(); 3]; 3];
        for (j, fj) in coef.iter().enumerate() {
            for r in 0..3 {
                for c in 0..3 {
                    for m in 0..3 {
                        next[r][c] += fj[r][m] * a[m][c].coeff(k - j);
                    }
                }
            }
        }
        let inv = from_usize::<T>(k + 1).recip();
        for row in next.iter_mut() {
            for x in row.iter_mut() {
                *x *= inv;
            }
        }
        coef.push(next);
    }
    std::array::from_fn(|r| std::array::from_fn(|c| USeries::from_fn(n, |k| coef[k][r][c])))
}
