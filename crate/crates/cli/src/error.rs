//! Exit codes and machine-readable diagnostics.

use mixed_surfaces::GeomError;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RESIDUAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(std::io::Error),
    Geom(GeomError),
    /// Named residual classes above their thresholds.
    Residual(Vec<Value>),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}

fn innermost(e: &GeomError) -> (Vec<&'static str>, &GeomError) {
    let mut stages = Vec::new();
    let mut cur = e;
    while let GeomError::Stage { stage, source } = cur {
        stages.push(*stage);
        cur = source;
    }
    (stages, cur)
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Residual(_) => EXIT_RESIDUAL,
            CliError::Geom(e) => match innermost(e).1 {
                GeomError::Residual { .. } => EXIT_RESIDUAL,
                GeomError::Syntax { .. } | GeomError::UnknownIdentifier { .. } | GeomError::UnboundVariable(_) => EXIT_CONFIG,
                _ => EXIT_MATH,
            },
        }
    }

    pub fn diagnostics(&self) -> Value {
        let code = self.exit_code();
        match self {
            CliError::Config(m) => json!({"status": "error", "exit_code": code, "kind": "config", "message": m}),
            CliError::Io(e) => json!({"status": "error", "exit_code": code, "kind": "io", "message": e.to_string()}),
            CliError::Residual(fails) => json!({"status": "error", "exit_code": code, "kind": "residual", "failures": fails}),
            CliError::Geom(e) => {
                let (stages, inner) = innermost(e);
                let mut d = json!({
                    "status": "error",
                    "exit_code": code,
                    "kind": kind_name(inner),
                    "stage": stages.first().copied(),
                    "message": e.to_string(),
                });
                match inner {
                    GeomError::Residual { name, value, tol } => {
                        d["residual"] = json!({"name": name, "value": value, "tol": tol});
                    }
                    GeomError::NoConvergence { residual, .. } => d["residual"] = json!({"value": residual}),
                    GeomError::Domain { at, .. } => d["location"] = json!(at),
                    GeomError::Syntax { offset, .. } | GeomError::UnknownIdentifier { offset, .. } => {
                        d["location"] = json!({"offset": offset});
                    }
                    _ => {}
                }
                d
            }
        }
    }
}

fn kind_name(e: &GeomError) -> &'static str {
    match e {
        GeomError::Syntax { .. } => "syntax",
        GeomError::UnknownIdentifier { .. } => "unknown_identifier",
        GeomError::UnboundVariable(_) => "unbound_variable",
        GeomError::Domain { .. } => "math_domain",
        GeomError::InvalidInput(_) => "invalid_input",
        GeomError::Degenerate(_) => "degenerate",
        GeomError::NoConvergence { .. } => "no_convergence",
        GeomError::Residual { .. } => "residual",
        GeomError::Stage { .. } => "stage",
    }
}
