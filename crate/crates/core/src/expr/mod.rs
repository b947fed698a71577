//! Formula language used by every configuration field holding a function.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;
//! primary = number | "pi" | var | func "(" expr ")" | "(" expr ")" ;
//! var     = "u" | "v" | "t" | "s" ;
//! func    = "sin" | "cos" | "exp" | "log" | "sqrt" | "cbrt" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//!         | "." digits [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ```
//!
//! `^` is right associative and binds tighter than unary minus, so
//! `-u^2` is `-(u^2)`.

mod eval;
mod parse;

use std::fmt;

pub use eval::eval_jet;
pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    T,
    S,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::T => "t",
            Var::S => "s",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            "t" => Some(Var::T),
            "s" => Some(Var::S),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Cbrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Cbrt => "cbrt",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "cbrt" => Func::Cbrt,
            _ => return None,
        })
    }
}

/// Abstract syntax tree. Literals are nonnegative; negation is a node.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Literal, wrapping negative values in a negation node.
    pub fn num(x: f64) -> Self {
        if x < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-x)))
        } else {
            Expr::Num(x)
        }
    }

    pub fn var(v: Var) -> Self {
        Expr::Var(v)
    }

    pub fn call(f: Func, a: Expr) -> Self {
        Expr::Call(f, Box::new(a))
    }

    pub fn pow(a: Expr, b: Expr) -> Self {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    /// Variables occurring in the expression, sorted and deduplicated.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Var(v) => out.push(*v),
            Expr::Num(_) | Expr::Pi => {}
            Expr::Neg(a) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Substitutes one variable by another expression.
    pub fn substitute(&self, var: Var, with: &Expr) -> Expr {
        let rec = |e: &Expr| Box::new(e.substitute(var, with));
        match self {
            Expr::Var(v) if *v == var => with.clone(),
            Expr::Num(_) | Expr::Pi | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(rec(a)),
            Expr::Call(f, a) => Expr::Call(*f, rec(a)),
            Expr::Add(a, b) => Expr::Add(rec(a), rec(b)),
            Expr::Sub(a, b) => Expr::Sub(rec(a), rec(b)),
            Expr::Mul(a, b) => Expr::Mul(rec(a), rec(b)),
            Expr::Div(a, b) => Expr::Div(rec(a), rec(b)),
            Expr::Pow(a, b) => Expr::Pow(rec(a), rec(b)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Pi | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
        let _ = self;
        if parens {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, b: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(b))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, b: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(b))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, b: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(b))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, b: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(b))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            Expr::Num(x) => write!(f, "{x}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Var(v) => write!(f, "{}", v.name()),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Neg(a) => {
                write!(f, "-")?;
                self.fmt_child(f, a, a.precedence() < 3)
            }
            Expr::Pow(a, b) => {
                self.fmt_child(f, a, a.precedence() <= p)?;
                write!(f, "^")?;
                self.fmt_child(f, b, b.precedence() < 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                self.fmt_child(f, a, a.precedence() < p)?;
                write!(f, "{op}")?;
                self.fmt_child(f, b, b.precedence() <= p)
            }
        }
    }
}
