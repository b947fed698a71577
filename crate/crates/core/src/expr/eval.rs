use super::{Expr, Func, Var};
use crate::error::{GeomError, Result};
use crate::scalar::{lit, Scalar};
use crate::series::{Algebra, BiSeries, Jet, USeries};

impl Expr {
    /// Evaluates in any Taylor algebra. `bind` supplies variable values and
    /// `like` fixes the truncation shape of constants.
    pub fn eval_in<T: Scalar, A: Algebra<T>>(&self, bind: &dyn Fn(Var) -> Option<A>, like: &A) -> Result<A> {
        let rec = |e: &Expr| e.eval_in(bind, like);
        let ctx = |e: GeomError| match e {
            GeomError::Domain { what, at } if !what.contains(" in `") => GeomError::Domain {
                what: format!("{what} in `{self}`"),
                at,
            },
            other => other,
        };
        Ok(match self {
            Expr::Num(x) => like.constant_like(lit(*x)),
            Expr::Pi => like.constant_like(T::PI()),
            Expr::Var(v) => bind(*v).ok_or_else(|| GeomError::UnboundVariable(v.name().into()))?,
            Expr::Neg(a) => -rec(a)?,
            Expr::Add(a, b) => rec(a)? + rec(b)?,
            Expr::Sub(a, b) => rec(a)? - rec(b)?,
            Expr::Mul(a, b) => rec(a)? * rec(b)?,
            Expr::Div(a, b) => rec(a)?.div(&rec(b)?).map_err(ctx)?,
            Expr::Pow(a, b) => {
                let base = rec(a)?;
                if b.is_constant() {
                    let r: T = b.eval_in(&|_| None, &T::zero())?;
                    let ri = r.round();
                    if r == ri && ri.abs() <= lit(1e6) {
                        base.powi(ri.to_i32().expect("bounded exponent")).map_err(ctx)?
                    } else {
                        base.powf(r).map_err(ctx)?
                    }
                } else {
                    let e = rec(b)?;
                    (e * base.ln().map_err(ctx)?).exp()
                }
            }
            Expr::Call(f, a) => {
                let x = rec(a)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Log => x.ln().map_err(ctx)?,
                    Func::Sqrt => x.sqrt().map_err(ctx)?,
                    Func::Cbrt => x.cbrt().map_err(ctx)?,
                }
            }
        })
    }

    /// Value with explicit bindings.
    pub fn eval_with<T: Scalar>(&self, vars: &[(Var, T)]) -> Result<T> {
        let bind = |v: Var| vars.iter().find(|(w, _)| *w == v).map(|(_, x)| *x);
        self.eval_in(&bind, &T::zero())
            .map_err(|e| with_location(e, || format_bindings(vars)))
    }

    /// Value at `(u, v)`.
    pub fn eval_uv<T: Scalar>(&self, u: T, v: T) -> Result<T> {
        self.eval_with(&[(Var::U, u), (Var::V, v)])
    }

    /// Jet of order `k` in `(u, v)` at the given point.
    pub fn eval_jet<T: Scalar>(&self, at: (T, T), order: usize) -> Result<Jet<T>> {
        let u = BiSeries::var_u(at.0, order);
        let v = BiSeries::var_v(at.1, order);
        let bind = |w: Var| match w {
            Var::U => Some(u.clone()),
            Var::V => Some(v.clone()),
            _ => None,
        };
        let s = self
            .eval_in(&bind, &BiSeries::zeros(order))
            .map_err(|e| with_location(e, || format!("(u, v) = ({}, {})", at.0, at.1)))?;
        Ok(Jet::new(at, s))
    }

    /// Univariate series in `var` about `t0`.
    pub fn eval_useries<T: Scalar>(&self, var: Var, t0: T, order: usize) -> Result<USeries<T>> {
        let t = USeries::variable(t0, order);
        let bind = |w: Var| (w == var).then(|| t.clone());
        self.eval_in(&bind, &USeries::zeros(order))
            .map_err(|e| with_location(e, || format!("{} = {t0}", var.name())))
    }
}

/// Jet of `e` at `at` to order `k`.
pub fn eval_jet<T: Scalar>(e: &Expr, at: (T, T), order: usize) -> Result<Jet<T>> {
    e.eval_jet(at, order)
}

fn with_location(e: GeomError, at: impl FnOnce() -> String) -> GeomError {
    match e {
        GeomError::Domain { what, at: old } if old.is_empty() || old.parse::<f64>().is_ok() => {
            GeomError::Domain { what, at: at() }
        }
        other => other,
    }
}

fn format_bindings<T: Scalar>(vars: &[(Var, T)]) -> String {
    vars.iter()
        .map(|(v, x)| format!("{} = {x}", v.name()))
        .collect::<Vec<_>>()
        .join(", ")
}
