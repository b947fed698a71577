//! JSON input specifications and preset lookup.

use std::path::Path;

use mixed_surfaces::curves::{analyze, CurveInvariants, CurveModel, DeformMode};
use mixed_surfaces::expr::{parse, Var};
use mixed_surfaces::metric::{Domain, MetricField};
use mixed_surfaces::presets;
use mixed_surfaces::surface::SurfacePatch;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct DomainSpec {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl DomainSpec {
    pub fn domain(&self) -> Result<Domain<f64>, CliError> {
        if !(self.u[0] < self.u[1] && self.v[0] < self.v[1]) {
            return Err(CliError::Config("domain bounds must be increasing".into()));
        }
        Ok(Domain::new((self.u[0], self.u[1]), (self.v[0], self.v[1])))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceExprs {
    pub x1: String,
    pub x2: String,
    pub x3: String,
    pub domain: DomainSpec,
    /// Constant added to the second fundamental form coefficient `X` in `verify`.
    #[serde(default)]
    pub perturb_x: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricExprs {
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    pub domain: DomainSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveExprs {
    pub x1: String,
    pub x2: String,
    pub x3: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Named<T> {
    Name(String),
    Spec(T),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BranchSel {
    All(String),
    List(Vec<usize>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub metric: Named<MetricExprs>,
    pub curve: Named<CurveExprs>,
    #[serde(default)]
    pub point: Option<[f64; 2]>,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub branches: Option<BranchSel>,
    #[serde(default)]
    pub s: Option<Vec<f64>>,
    #[serde(default)]
    pub mode: Option<String>,
    #[serde(default)]
    pub branch: Option<usize>,
}

/// A surface together with the `verify` perturbation, if any.
pub struct LoadedSurface {
    pub name: String,
    pub patch: SurfacePatch<f64>,
    pub perturb_x: Option<f64>,
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Config(format!("invalid {what}: {e}")))
}

/// Resolves a positional argument: a preset name, or a JSON file path.
pub fn input_value(name: Option<&str>, config: Option<&Path>) -> Result<Value, CliError> {
    match (name, config) {
        (_, Some(p)) => read_json(p),
        (Some(n), None) if n.ends_with(".json") => read_json(Path::new(n)),
        (Some(n), None) => Ok(Value::String(n.to_string())),
        (None, None) => Err(CliError::Config("no input given: pass a preset name or --config PATH".into())),
    }
}

pub fn surface_preset(name: &str) -> Result<SurfacePatch<f64>, CliError> {
    let geom = |r: mixed_surfaces::Result<SurfacePatch<f64>>| r.map_err(CliError::Geom);
    match name {
        "ex-four-f1" | "ex-four" | "four" => Ok(presets::four_f1()),
        "ex-four-f2" => geom(presets::four(2)),
        "ex-four-f3" => geom(presets::four(3)),
        "ex-four-f4" => geom(presets::four(4)),
        "ex-two-f1" | "ex-two" | "two" => Ok(presets::two_f1()),
        "ex-two-f2" => geom(presets::two(2)),
        _ => Err(CliError::Config(format!("unknown surface preset `{name}`"))),
    }
}

pub fn load_surface(v: Value) -> Result<LoadedSurface, CliError> {
    match v {
        Value::String(name) => Ok(LoadedSurface { patch: surface_preset(&name)?, name, perturb_x: None }),
        other => {
            let s: SurfaceExprs = from_value(other, "surface")?;
            let patch = SurfacePatch::parse(&s.x1, &s.x2, &s.x3, s.domain.domain()?).map_err(CliError::Geom)?;
            Ok(LoadedSurface { name: "custom".into(), patch, perturb_x: s.perturb_x })
        }
    }
}

pub fn metric_preset(name: &str) -> Result<MetricField<f64>, CliError> {
    if let Some(r) = name.strip_prefix("torus(").and_then(|s| s.strip_suffix(')')) {
        let r: f64 = r.trim().parse().map_err(|_| CliError::Config(format!("bad torus radius in `{name}`")))?;
        return presets::torus_metric(r).map_err(|e| CliError::Config(e.to_string()));
    }
    match name {
        "torus" => presets::torus_metric(2.0).map_err(CliError::Geom),
        "ex-four" | "four" => Ok(presets::four_metric()),
        "ex-two" | "two" => Ok(presets::two_metric()),
        "type-one" => Ok(presets::type_one_metric()),
        "type-two" => Ok(presets::type_two_metric()),
        _ => Err(CliError::Config(format!("unknown metric preset `{name}`"))),
    }
}

pub fn load_metric(v: Named<MetricExprs>) -> Result<MetricField<f64>, CliError> {
    match v {
        Named::Name(n) => metric_preset(&n),
        Named::Spec(m) => MetricField::parse(&m.e, &m.f, &m.g, m.domain.domain()?).map_err(CliError::Geom),
    }
}

pub fn metric_from_value(v: Value) -> Result<MetricField<f64>, CliError> {
    load_metric(from_value(v, "metric")?)
}

pub fn load_curve(v: Named<CurveExprs>, order: usize) -> Result<CurveInvariants<f64>, CliError> {
    let n = order + 6;
    match v {
        Named::Name(n_) => match n_.as_str() {
            "circle" => Ok(presets::four_curve(n)),
            "parabola" => presets::two_curve(n).map_err(CliError::Geom),
            other => Err(CliError::Config(format!("unknown curve preset `{other}`"))),
        },
        Named::Spec(c) => {
            let x = [&c.x1, &c.x2, &c.x3].map(|s| parse(s));
            let [a, b, d] = x;
            let (a, b, d) = (a.map_err(CliError::Geom)?, b.map_err(CliError::Geom)?, d.map_err(CliError::Geom)?);
            let m = CurveModel::from_exprs([&a, &b, &d], Var::U, 0.0, n).map_err(CliError::Geom)?;
            analyze(&m).map_err(|e| CliError::Geom(e.at_stage("curve")))
        }
    }
}

pub fn problem_from_value(v: Value) -> Result<ProblemSpec, CliError> {
    match v {
        Value::String(name) => preset_problem(&name),
        other => from_value(other, "problem"),
    }
}

pub fn preset_problem(name: &str) -> Result<ProblemSpec, CliError> {
    let (metric, curve) = match name {
        "four" | "ex-four" => ("ex-four", "circle"),
        "two" | "ex-two" => ("ex-two", "parabola"),
        _ => return Err(CliError::Config(format!("unknown problem preset `{name}`"))),
    };
    Ok(ProblemSpec {
        metric: Named::Name(metric.into()),
        curve: Named::Name(curve.into()),
        point: None,
        kind: None,
        order: None,
        radius: None,
        branches: None,
        s: None,
        mode: None,
        branch: None,
    })
}

pub fn deform_mode(s: Option<&str>) -> Result<DeformMode, CliError> {
    match s.unwrap_or("shift") {
        "shift" => Ok(DeformMode::Shift),
        "scale" => Ok(DeformMode::Scale),
        other => Err(CliError::Config(format!("unknown deformation mode `{other}`"))),
    }
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("--grid expects AxB, got `{s}`"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 3 || b < 3 {
        return Err(CliError::Config("grid needs at least 3 points per axis".into()));
    }
    Ok((a, b))
}
