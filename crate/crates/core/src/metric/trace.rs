use std::collections::HashMap;

use rayon::prelude::*;

use super::{min_eigenvalue, Domain, MetricField};
use crate::error::{GeomError, Result};
use crate::scalar::{lit, tolerance, Scalar};

/// A root of `λ` on the semidefinite set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocusVertex<T> {
    pub u: T,
    pub v: T,
    pub lambda: T,
    pub grad_norm: T,
    /// `dλ ≠ 0` and the Gram matrix is positive semidefinite.
    pub admissible: bool,
}

/// One connected polyline of the semidefinite set.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusComponent<T> {
    pub points: Vec<LocusVertex<T>>,
    pub closed: bool,
}

/// Target for `|λ|` at refined vertices.
pub const ROOT_TOL: f64 = 1e-10;

/// Locates `λ = 0` in `domain` on an `nx × ny` sample grid.
///
/// Sign changes along grid edges are bracketed by bisection and polished by
/// Newton's method along the edge; crossings inside a cell are linked as in
/// marching squares, with ambiguous cells resolved by the sign at the cell
/// centre. Samples where the metric cannot be evaluated are skipped.
pub fn trace_semidefinite_set<T: Scalar>(g: &MetricField<T>, domain: Domain<T>, grid: (usize, usize)) -> Result<Vec<LocusComponent<T>>> {
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(GeomError::invalid("the sample grid needs at least 2 points per axis"));
    }
    let at = |i: usize, j: usize| -> (T, T) {
        let s = |a: (T, T), k: usize, n: usize| a.0 + (a.1 - a.0) * lit::<T>(k as f64) / lit::<T>((n - 1) as f64);
        (s(domain.u, i, nx), s(domain.v, j, ny))
    };
    let samples: Vec<Option<T>> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (u, v) = at(k % nx, k / nx);
            g.lambda(u, v).ok().filter(|x| x.is_finite())
        })
        .collect();
    let sign = |i: usize, j: usize| samples[j * nx + i].map(|x| x >= T::zero());

    // Edge keys: (i, j, 0) joins (i,j)-(i+1,j); (i, j, 1) joins (i,j)-(i,j+1).
    let mut edges = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if i + 1 < nx {
                if let (Some(a), Some(b)) = (sign(i, j), sign(i + 1, j)) {
                    if a != b {
                        edges.push((i, j, 0u8));
                    }
                }
            }
            if j + 1 < ny {
                if let (Some(a), Some(b)) = (sign(i, j), sign(i, j + 1)) {
                    if a != b {
                        edges.push((i, j, 1u8));
                    }
                }
            }
        }
    }
    let roots: Vec<Option<LocusVertex<T>>> = edges
        .par_iter()
        .map(|&(i, j, d)| {
            let a = at(i, j);
            let b = if d == 0 { at(i + 1, j) } else { at(i, j + 1) };
            edge_root(g, a, b)
        })
        .collect();
    let index: HashMap<(usize, usize, u8), usize> = edges
        .iter()
        .zip(&roots)
        .enumerate()
        .filter(|(_, (_, r))| r.is_some())
        .map(|(k, (e, _))| (*e, k))
        .collect();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    let mut link = |a: (usize, usize, u8), b: (usize, usize, u8)| {
        if let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) {
            adj[x].push(y);
            adj[y].push(x);
        }
    };
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let corners = [sign(i, j), sign(i + 1, j), sign(i + 1, j + 1), sign(i, j + 1)];
            if corners.iter().any(Option::is_none) {
                continue;
            }
            let bottom = (i, j, 0);
            let right = (i + 1, j, 1);
            let top = (i, j + 1, 0);
            let left = (i, j, 1);
            let cut: Vec<_> = [bottom, right, top, left].into_iter().filter(|e| index.contains_key(e)).collect();
            match cut.len() {
                2 => link(cut[0], cut[1]),
                4 => {
                    let (u0, v0) = at(i, j);
                    let (u1, v1) = at(i + 1, j + 1);
                    let half = lit::<T>(0.5);
                    let centre = g.lambda((u0 + u1) * half, (v0 + v1) * half).map(|x| x >= T::zero()).ok();
                    if centre == corners[0] {
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(bottom, left);
                        link(right, top);
                    }
                }
                _ => {}
            }
        }
    }

    let mut seen = vec![false; edges.len()];
    let mut out = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut chain = vec![start];
        seen[start] = true;
        let mut cur = start;
        loop {
            match adj[cur].iter().copied().find(|&n| !seen[n]) {
                Some(n) => {
                    seen[n] = true;
                    chain.push(n);
                    cur = n;
                }
                None => break,
            }
        }
        let closed = chain.len() > 2 && adj[cur].contains(&start);
        LocusComponent {
            points: chain.into_iter().filter_map(|k| roots[k]).collect(),
            closed,
        }
    };
    let nodes: Vec<usize> = index.values().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    for &k in &nodes {
        if !seen[k] && adj[k].len() <= 1 {
            out.push(walk(k, &mut seen));
        }
    }
    for &k in &nodes {
        if !seen[k] {
            out.push(walk(k, &mut seen));
        }
    }
    Ok(out)
}

fn edge_root<T: Scalar>(g: &MetricField<T>, a: (T, T), b: (T, T)) -> Option<LocusVertex<T>> {
    let point = |s: T| (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s);
    let lam = |s: T| {
        let p = point(s);
        g.lambda(p.0, p.1).ok()
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    let pos_lo = lam(lo)? >= T::zero();
    let half = lit::<T>(0.5);
    for _ in 0..40 {
        let mid = (lo + hi) * half;
        if (lam(mid)? >= T::zero()) == pos_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dir = [b.0 - a.0, b.1 - a.1];
    let mut s = (lo + hi) * half;
    for _ in 0..20 {
        let p = point(s);
        let (l, grad) = g.lambda_gradient(p.0, p.1).ok()?;
        if l.abs() <= tolerance(ROOT_TOL * 1e-3) {
            break;
        }
        let d = grad[0] * dir[0] + grad[1] * dir[1];
        if d == T::zero() {
            break;
        }
        let next = s - l / d;
        if !(next >= lo - (hi - lo) && next <= hi + (hi - lo)) {
            break;
        }
        s = next;
    }
    let (u, v) = point(s);
    let (l, grad) = g.lambda_gradient(u, v).ok()?;
    let gn = (grad[0] * grad[0] + grad[1] * grad[1]).sqrt();
    let psd = g.gram(u, v).map(|m| min_eigenvalue(m) >= -tolerance::<T>(1e-10)).unwrap_or(false);
    Some(LocusVertex {
        u,
        v,
        lambda: l,
        grad_norm: gn,
        admissible: gn > tolerance(1e-8) && psd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn torus_has_two_components() {
        let d = Domain::new((0.0, 2.0 * PI), (-1.0, 1.0));
        let g = MetricField::parse("1", "0", "cos(u)*(2 + cos(u))", d).unwrap();
        let cs = trace_semidefinite_set(&g, d, (201, 21)).unwrap();
        assert_eq!(cs.len(), 2);
        let mut us: Vec<f64> = cs.iter().map(|c| c.points[0].u).collect();
        us.sort_by(f64::total_cmp);
        assert!((us[0] - PI / 2.0).abs() < 1e-9 && (us[1] - 1.5 * PI).abs() < 1e-9);
        for c in &cs {
            assert_eq!(c.points.len(), 21);
            assert!(!c.closed);
            for p in &c.points {
                assert!(p.lambda.abs() <= 1e-10 && p.admissible);
            }
        }
    }

    #[test]
    fn flat_is_empty() {
        let d = Domain::square(1.0);
        let g = MetricField::parse("1", "0", "1", d).unwrap();
        assert!(trace_semidefinite_set(&g, d, (31, 31)).unwrap().is_empty());
    }

    #[test]
    fn v_axis() {
        let d = Domain::new((-1.0f64, 1.0), (-0.4, 1.0));
        let g = MetricField::parse("1 + 2*v", "0", "u", d).unwrap();
        let cs = trace_semidefinite_set(&g, d, (20, 15)).unwrap();
        assert_eq!(cs.len(), 1);
        for p in &cs[0].points {
            assert!(p.u.abs() < 1e-12);
        }
    }

    #[test]
    fn circle_is_closed() {
        let d = Domain::square(1.0f64);
        let g = MetricField::parse("1", "0", "u^2 + v^2 - 0.25", d).unwrap();
        let cs = trace_semidefinite_set(&g, d, (41, 41)).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs[0].closed);
        for p in &cs[0].points {
            assert!((p.u.hypot(p.v) - 0.5).abs() < 1e-10);
        }
    }
}
