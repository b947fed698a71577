//! Subcommand implementations. Each returns a JSON summary for stdout.

use std::path::PathBuf;

use mixed_surfaces::curves::DeformMode;
use mixed_surfaces::metric::{analyze_semidefinite_point, trace_semidefinite_set, MetricField, SemidefiniteKind};
use mixed_surfaces::minkowski::MinkVector3;
use mixed_surfaces::realization::{deformation_family, realize, realize_all, Branch, RealizationProblem, RealizedSurface};
use mixed_surfaces::series::BiSeries;
use mixed_surfaces::surface::{
    adapted_data, gauss_codazzi_residuals, gw_residual, invariants_along_ld, l_chart_surface, l_gauss_map, LightlikeKind,
    LightlikeLocusReport, SurfacePatch, EVALUATOR_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{self, BranchSel, LoadedSurface, ProblemSpec};
use crate::error::CliError;
use crate::output::{Mesh, OutDir};

/// Flags shared by all subcommands.
#[derive(Debug, Clone)]
pub struct Settings {
    pub config: Option<PathBuf>,
    pub grid: Option<(usize, usize)>,
    pub order: Option<usize>,
    pub radius: Option<f64>,
    pub tol: Option<f64>,
    pub out: PathBuf,
    pub seed: u64,
    pub obj: bool,
}

impl Settings {
    fn out(&self) -> Result<OutDir, CliError> {
        OutDir::new(&self.out, self.obj)
    }

    fn grid_or(&self, d: (usize, usize)) -> (usize, usize) {
        self.grid.unwrap_or(d)
    }
}

const MESH_GRID: (usize, usize) = (41, 41);
const LOCUS_GRID: (usize, usize) = (201, 201);

fn surface_mesh(f: &SurfacePatch<f64>, grid: (usize, usize)) -> Result<Mesh, CliError> {
    let m = f.first_fundamental_form();
    Mesh::sample(f.domain.u, f.domain.v, grid, |u, v| Ok((f.point(u, v)?, m.lambda(u, v)?)))
}

fn series_mesh(s: &RealizedSurface<f64>, grid: (usize, usize)) -> Result<Mesh, CliError> {
    let fu = s.f.map(|c| c.diff_u());
    let fv = s.f.map(|c| c.diff_v());
    let r = s.radius;
    Mesh::sample((-r, r), (-r, r), grid, |u, v| {
        let (a, b) = (fu.map(|c| c.eval(u, v)), fv.map(|c| c.eval(u, v)));
        Ok((s.point(u, v), a.inner(&a) * b.inner(&b) - a.inner(&b).powi(2)))
    })
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

fn locus_json(r: &LightlikeLocusReport<f64>) -> Value {
    let comps: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            let pts: Vec<Value> = c
                .points
                .iter()
                .map(|p| {
                    json!({
                        "u": p.u,
                        "v": p.v,
                        "kind": match p.kind { LightlikeKind::FirstKind => "first", LightlikeKind::SecondKind => "second" },
                        "kappa_L": opt(p.kappa_l),
                        "kappa_N": opt(p.kappa_n),
                        "kappa_G": opt(p.kappa_g),
                        "kappa_L_intrinsic": opt(p.kappa_l_intrinsic),
                        "generic": p.generic,
                    })
                })
                .collect();
            json!({"closed": c.closed, "points": pts})
        })
        .collect();
    json!(comps)
}

fn locus_summary(r: &LightlikeLocusReport<f64>) -> Value {
    let pts: Vec<_> = r.points().collect();
    json!({
        "components": r.components.len(),
        "points": pts.len(),
        "first_kind": pts.iter().filter(|p| p.kind == LightlikeKind::FirstKind).count(),
        "all_generic": pts.iter().all(|p| p.generic),
        "max_abs_v": pts.iter().map(|p| p.v.abs()).fold(0.0, f64::max),
    })
}

pub fn analyze_surface(st: &Settings, input: Option<&str>) -> Result<Value, CliError> {
    let s = config::load_surface(config::input_value(input, st.config.as_deref())?)?;
    analyze_loaded_surface(st, &s, "")
}

fn analyze_loaded_surface(st: &Settings, s: &LoadedSurface, prefix: &str) -> Result<Value, CliError> {
    let out = st.out()?;
    let order = st.order.unwrap_or(8);
    let report = invariants_along_ld(&s.patch, st.grid_or(LOCUS_GRID), order)?;
    let summary = locus_summary(&report);
    out.json(&format!("{prefix}report.json"), &json!({"surface": s.name, "summary": summary, "locus": locus_json(&report)}))?;
    let files = out.mesh(&format!("{prefix}mesh"), &surface_mesh(&s.patch, MESH_GRID)?)?;
    Ok(json!({"command": "analyze-surface", "surface": s.name, "summary": summary, "mesh": files}))
}

pub fn analyze_metric(st: &Settings, input: Option<&str>) -> Result<Value, CliError> {
    let m = config::metric_from_value(config::input_value(input, st.config.as_deref())?)?;
    analyze_metric_field(st, &m, input.unwrap_or("custom"))
}

fn analyze_metric_field(st: &Settings, m: &MetricField<f64>, name: &str) -> Result<Value, CliError> {
    let out = st.out()?;
    let order = st.order.unwrap_or(8);
    let comps = trace_semidefinite_set(m, m.domain, st.grid_or(LOCUS_GRID))?;
    let mut counts = [0usize; 3];
    let comps_json: Vec<Value> = comps
        .iter()
        .map(|c| {
            let pts: Vec<Value> = c
                .points
                .iter()
                .map(|p| {
                    let mut o = json!({"u": p.u, "v": p.v, "admissible": p.admissible});
                    if p.admissible {
                        match analyze_semidefinite_point(m, (p.u, p.v), order) {
                            Ok(a) => {
                                let k = match a.kind {
                                    SemidefiniteKind::TypeI => 0,
                                    SemidefiniteKind::TypeII => 1,
                                };
                                counts[k] += 1;
                                o["kind"] = json!(if k == 0 { "I" } else { "II" });
                                o["null_direction"] = json!(a.null_direction);
                                o["kappa_tilde_L"] = opt(a.kappa_tilde_l);
                                o["mu_c"] = opt(a.mu_c);
                                o["generic"] = json!(a.generic);
                            }
                            Err(e) => {
                                counts[2] += 1;
                                o["error"] = json!(e.to_string());
                            }
                        }
                    }
                    o
                })
                .collect();
            json!({"closed": c.closed, "points": pts})
        })
        .collect();
    let summary = json!({
        "components": comps.len(),
        "type_i_points": counts[0],
        "type_ii_points": counts[1],
        "failed_points": counts[2],
    });
    out.json("metric_report.json", &json!({"metric": name, "summary": summary, "semidefinite_set": comps_json}))?;
    let (nu, nv) = MESH_GRID;
    let mut csv = String::from("u,v,lambda\n");
    for i in 0..nu {
        let u = m.domain.u.0 + (m.domain.u.1 - m.domain.u.0) * i as f64 / (nu - 1) as f64;
        for j in 0..nv {
            let v = m.domain.v.0 + (m.domain.v.1 - m.domain.v.0) * j as f64 / (nv - 1) as f64;
            csv.push_str(&format!("{u:e},{v:e},{:e}\n", m.lambda(u, v)?));
        }
    }
    out.text("lambda.csv", &csv)?;
    Ok(json!({"command": "analyze-metric", "metric": name, "summary": summary}))
}

struct Check {
    name: &'static str,
    value: f64,
    tol: f64,
}

impl Check {
    fn json(&self) -> Value {
        json!({"name": self.name, "value": self.value, "tol": self.tol, "pass": self.value <= self.tol})
    }
}

fn finish_checks(st: &Settings, what: &str, checks: &[Check]) -> Result<Value, CliError> {
    let list: Vec<Value> = checks.iter().map(Check::json).collect();
    st.out()?.json("verify.json", &json!({"input": what, "checks": list}))?;
    let fails: Vec<Value> = checks.iter().filter(|c| !(c.value <= c.tol)).map(Check::json).collect();
    if !fails.is_empty() {
        return Err(CliError::Residual(fails));
    }
    Ok(json!({"command": "verify", "input": what, "checks": list}))
}

fn minkowski_suite(st: &Settings) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(st.seed);
    let mut r = [0.0f64; 3];
    let vec = |rng: &mut ChaCha8Rng| MinkVector3::<f64>::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    for _ in 0..10_000 {
        let (u, v, w) = (vec(&mut rng), vec(&mut rng), vec(&mut rng));
        r[0] = r[0].max((mixed_surfaces::minkowski::det3(&u, &v, &w) - u.inner(&v.cross(&w))).abs());
        r[1] = r[1].max((u.cross(&v.cross(&w)) - (w.scale(u.inner(&v)) - v.scale(u.inner(&w)))).norm_inf());
        let c = v.cross(&w);
        r[2] = r[2].max((c.inner(&c) + v.inner(&v) * w.inner(&w) - v.inner(&w).powi(2)).abs());
    }
    let tol = st.tol.unwrap_or(1e-12);
    let checks = [
        Check { name: "scalar_triple_product", value: r[0], tol },
        Check { name: "vector_triple_product", value: r[1], tol },
        Check { name: "area_formula", value: r[2], tol },
    ];
    finish_checks(st, "minkowski", &checks)
}

pub fn verify(st: &Settings, input: Option<&str>) -> Result<Value, CliError> {
    if input == Some("minkowski") {
        return minkowski_suite(st);
    }
    let s = config::load_surface(config::input_value(input, st.config.as_deref())?)?;
    let f = &s.patch;
    let order = st.order.unwrap_or(10);
    let rho = st.radius.unwrap_or(0.03);
    let gc_tol = st.tol.unwrap_or(1e-7);

    let (nu, nv) = (21, 21);
    let mut immersion_failures = 0.0;
    for i in 0..nu {
        for j in 0..nv {
            let u = f.domain.u.0 + (f.domain.u.1 - f.domain.u.0) * (i as f64 + 0.5) / nu as f64;
            let v = f.domain.v.0 + (f.domain.v.1 - f.domain.v.0) * (j as f64 + 0.5) / nv as f64;
            if f.check_immersion(u, v).is_err() {
                immersion_failures += 1.0;
            }
        }
    }
    let report = invariants_along_ld(f, st.grid_or((101, 51)), 8)?;
    let pts: Vec<_> = report.points().collect();
    let (mut frame, mut cross, mut spread) = (0.0f64, 0.0f64, 0.0f64);
    for p in &pts {
        let d = l_gauss_map(f, (p.u, p.v), None)?;
        frame = frame.max(d.frame_residual());
        cross = cross.max(d.cross_residual());
        spread = spread.max(p.spread);
    }
    let mut gc = [0.0f64; 3];
    let mut gw = 0.0f64;
    let picks = pts.len().min(5);
    for k in 0..picks {
        let p = pts[k * (pts.len() - 1) / (picks - 1).max(1)];
        if p.kind != LightlikeKind::FirstKind {
            continue;
        }
        let (_, g) = l_chart_surface(f, (p.u, p.v), order + 4)?;
        let d = adapted_data(&g, (0.0, 0.0), order, None)?;
        let x = match s.perturb_x {
            Some(dx) => d.x.clone() + BiSeries::constant(dx, d.x.order()),
            None => d.x.clone(),
        };
        let r = gauss_codazzi_residuals(&d.e, &d.g, &x, &d.y, &d.z, rho, 7)?;
        for i in 0..3 {
            gc[i] = gc[i].max(r[i]);
        }
        gw = gw.max(gw_residual(&d, rho, 7)?);
    }
    let checks = [
        Check { name: "immersion_failures", value: immersion_failures, tol: 0.0 },
        Check { name: "psi_frame", value: frame, tol: 1e-9 },
        Check { name: "psi_cross_product", value: cross, tol: 1e-9 },
        Check { name: "evaluator_spread", value: spread, tol: EVALUATOR_TOL },
        Check { name: "codazzi_1", value: gc[0], tol: gc_tol },
        Check { name: "codazzi_2", value: gc[1], tol: gc_tol },
        Check { name: "gauss", value: gc[2], tol: gc_tol },
        Check { name: "frame_compatibility", value: gw, tol: 1e-8 },
    ];
    finish_checks(st, &s.name, &checks)
}

struct Prepared {
    pb: RealizationProblem<f64>,
    spec: ProblemSpec,
    rho: f64,
    tol: f64,
}

fn prepare(st: &Settings, input: Option<&str>) -> Result<Prepared, CliError> {
    let spec = config::problem_from_value(config::input_value(input, st.config.as_deref())?)?;
    let order = st.order.or(spec.order).unwrap_or(10);
    if !(2..=16).contains(&order) {
        return Err(CliError::Config("order must lie in 2..=16".into()));
    }
    let rho = st.radius.or(spec.radius).unwrap_or(0.05);
    if !(rho > 0.0) {
        return Err(CliError::Config("radius must be positive".into()));
    }
    let tol = st.tol.unwrap_or(1e-6);
    let metric = config::load_metric(spec.metric.clone())?;
    let curve = config::load_curve(spec.curve.clone(), order)?;
    let p = spec.point.unwrap_or([0.0, 0.0]);
    let pb = RealizationProblem::from_metric(&metric, (p[0], p[1]), curve, order)?;
    if let Some(k) = &spec.kind {
        let want = match k.as_str() {
            "I" => SemidefiniteKind::TypeI,
            "II" => SemidefiniteKind::TypeII,
            other => return Err(CliError::Config(format!("kind must be \"I\" or \"II\", got `{other}`"))),
        };
        if want != pb.kind {
            return Err(CliError::Geom(mixed_surfaces::GeomError::invalid(format!(
                "the point is of type {:?}, not {k}",
                pb.kind
            ))));
        }
    }
    Ok(Prepared { pb, spec, rho, tol })
}

fn branch_json(i: usize, s: &RealizedSurface<f64>) -> Value {
    let coeffs = |b: &BiSeries<f64>| -> Value { json!(b.coeffs().filter(|c| c.2 != 0.0).map(|(i, j, c)| json!([i, j, c])).collect::<Vec<_>>()) };
    let r = &s.residuals;
    json!({
        "index": i,
        "epsilon": s.branch.epsilon,
        "reversed": s.branch.reversed,
        "radius": s.radius,
        "residuals": {
            "metric": r.metric, "codazzi_1": r.gauss_codazzi[0], "codazzi_2": r.gauss_codazzi[1], "gauss": r.gauss_codazzi[2],
            "frame": r.frame, "gram": r.gram, "curve": r.curve,
        },
        "initial_frame": s.frame0.m,
        "series": {
            "f": [coeffs(&s.f.x1), coeffs(&s.f.x2), coeffs(&s.f.x3)],
            "psi": [coeffs(&s.psi.x1), coeffs(&s.psi.x2), coeffs(&s.psi.x3)],
            "X": coeffs(&s.x), "Y": coeffs(&s.y), "Z": coeffs(&s.z),
        },
    })
}

fn residual_failures(i: usize, s: &RealizedSurface<f64>, tol: f64) -> Vec<Value> {
    let mut v = Vec::new();
    for (name, x) in [("metric", s.residuals.metric), ("curve", s.residuals.curve)] {
        if !(x <= tol) {
            v.push(json!({"branch": i, "name": name, "value": x, "tol": tol}));
        }
    }
    v
}

fn write_branches(st: &Settings, out: &OutDir, list: &[(usize, RealizedSurface<f64>)], prefix: &str) -> Result<Vec<Value>, CliError> {
    let mut summary = Vec::new();
    for (i, s) in list {
        out.json(&format!("{prefix}branch_{i}.json"), &branch_json(*i, s))?;
        let files = out.mesh(&format!("{prefix}branch_{i}"), &series_mesh(s, st.grid_or(MESH_GRID))?)?;
        summary.push(json!({
            "index": i, "epsilon": s.branch.epsilon, "reversed": s.branch.reversed,
            "metric_residual": s.residuals.metric, "curve_residual": s.residuals.curve, "files": files,
        }));
    }
    Ok(summary)
}

fn realize_prepared(st: &Settings, p: &Prepared, prefix: &str) -> Result<Value, CliError> {
    let out = st.out()?;
    let all = p.pb.branches();
    let chosen: Vec<usize> = match &p.spec.branches {
        None => (1..=all.len()).collect(),
        Some(BranchSel::All(s)) if s == "all" => (1..=all.len()).collect(),
        Some(BranchSel::All(s)) => return Err(CliError::Config(format!("branches must be \"all\" or a list, got `{s}`"))),
        Some(BranchSel::List(l)) => l.clone(),
    };
    if let Some(&bad) = chosen.iter().find(|&&i| i == 0 || i > all.len()) {
        return Err(CliError::Config(format!("branch {bad} is not in 1..={}", all.len())));
    }
    let surfaces: Vec<(usize, RealizedSurface<f64>)> = if chosen.len() == all.len() {
        (1..=all.len()).zip(realize_all(&p.pb, p.rho)?).collect()
    } else {
        chosen.iter().map(|&i| Ok((i, realize(&p.pb, all[i - 1], p.rho)?))).collect::<Result<_, CliError>>()?
    };
    let summary = write_branches(st, &out, &surfaces, prefix)?;
    let report = json!({
        "command": "realize",
        "kind": format!("{:?}", p.pb.kind),
        "curve": format!("{:?}", p.pb.curve.kind),
        "z_gamma": all.len(),
        "order": p.pb.order,
        "radius": p.rho,
        "branches": summary,
    });
    out.json(&format!("{prefix}realize.json"), &report)?;
    let fails: Vec<Value> = surfaces.iter().flat_map(|(i, s)| residual_failures(*i, s, p.tol)).collect();
    if !fails.is_empty() {
        return Err(CliError::Residual(fails));
    }
    Ok(report)
}

pub fn realize_cmd(st: &Settings, input: Option<&str>) -> Result<Value, CliError> {
    realize_prepared(st, &prepare(st, input)?, "")
}

pub fn deform(st: &Settings, input: Option<&str>) -> Result<Value, CliError> {
    let p = prepare(st, input)?;
    let out = st.out()?;
    let mode = config::deform_mode(p.spec.mode.as_deref())?;
    let s_values = p.spec.s.clone().unwrap_or_else(|| vec![-0.5, 0.0, 0.5]);
    let branches = p.pb.branches();
    let bi = p.spec.branch.unwrap_or(if branches.len() == 4 { 2 } else { 1 });
    let b: Branch = *branches
        .get(bi.wrapping_sub(1))
        .ok_or_else(|| CliError::Config(format!("branch {bi} is not in 1..={}", branches.len())))?;
    let mut all_s = s_values.clone();
    if !all_s.contains(&0.0) {
        all_s.push(0.0);
    }
    let fam = deformation_family(&p.pb, b, &all_s, mode, p.rho)?;
    let base_idx = all_s.iter().position(|&s| s == 0.0).unwrap_or(0);
    let base = fam[base_idx].invariants().map_err(|e| e.at_stage("invariants"))?;
    let curve = p.pb.branch_curve(b)?;
    let theta = curve.theta.clone();
    let dtheta = theta.diff();
    let ev = p.pb.e.diff_v().restrict_v0();
    let gv = p.pb.g.diff_v().restrict_v0();

    let mut fails = Vec::new();
    let mut members = Vec::new();
    let mut header = String::from("u");
    let samples: Vec<f64> = (-10..=10).map(|i| p.rho * i as f64 / 10.0).collect();
    let mut rows: Vec<String> = samples.iter().map(|t| format!("{t:e}")).collect();
    for (k, (&s, m)) in all_s.iter().zip(&fam).enumerate() {
        let files = out.mesh(&format!("member_{k}"), &series_mesh(m, st.grid_or(MESH_GRID))?)?;
        let inv = m.invariants().map_err(|e| e.at_stage("invariants"))?;
        let (mut dn_err, mut dg_err) = (0.0f64, 0.0f64);
        if k != base_idx {
            header.push_str(&format!(",kappa_N_diff[s={s}],kappa_G_diff[s={s}]"));
            if mode == DeformMode::Shift {
                header.push_str(&format!(",kappa_N_pred[s={s}],kappa_G_pred[s={s}]"));
            }
            for (row, &t) in rows.iter_mut().zip(&samples) {
                let dn = base[1].eval(t) - inv[1].eval(t);
                let dg = base[2].eval(t) - inv[2].eval(t);
                row.push_str(&format!(",{dn:e},{dg:e}"));
                if mode == DeformMode::Shift {
                    let th = theta.eval(t);
                    let pn = s * gv.eval(t).cbrt() / ev.eval(t);
                    let pg = s * dtheta.eval(t) / (2.0 * th * (th + s));
                    row.push_str(&format!(",{pn:e},{pg:e}"));
                    dn_err = dn_err.max((dn - pn).abs());
                    dg_err = dg_err.max((dg - pg).abs());
                }
            }
        }
        fails.extend(residual_failures(k, m, p.tol));
        for (name, x) in [("kappa_N_identity", dn_err), ("kappa_G_identity", dg_err)] {
            if !(x <= p.tol) {
                fails.push(json!({"member": k, "name": name, "value": x, "tol": p.tol}));
            }
        }
        members.push(json!({
            "index": k, "s": s, "metric_residual": m.residuals.metric,
            "kappa_N_identity": dn_err, "kappa_G_identity": dg_err, "files": files,
        }));
    }
    let table: String = std::iter::once(header).chain(rows).map(|r| r + "\n").collect();
    out.text("differences.csv", &table)?;
    let report = json!({
        "command": "deform",
        "mode": format!("{mode:?}"),
        "branch": bi,
        "members": members,
        "differences": "differences.csv",
    });
    out.json("deform.json", &report)?;
    if !fails.is_empty() {
        return Err(CliError::Residual(fails));
    }
    Ok(report)
}

pub fn example(st: &Settings, which: &str) -> Result<Value, CliError> {
    let out = st.out()?;
    match which {
        "four" | "two" => {
            let names: Vec<&str> = if which == "four" {
                vec!["ex-four-f1", "ex-four-f2", "ex-four-f3", "ex-four-f4"]
            } else {
                vec!["ex-two-f1", "ex-two-f2"]
            };
            let mut meshes = Vec::new();
            for (i, n) in names.iter().enumerate() {
                let f = config::surface_preset(n)?;
                meshes.extend(out.mesh(&format!("f{}", i + 1), &surface_mesh(&f, st.grid_or(MESH_GRID))?)?);
            }
            let f1 = LoadedSurface { name: names[0].into(), patch: config::surface_preset(names[0])?, perturb_x: None };
            let analysis = analyze_loaded_surface(st, &f1, "f1_")?;
            let p = prepare(st, Some(which))?;
            let realization = realize_prepared(st, &p, "")?;
            let report = json!({
                "command": "example",
                "example": which,
                "surfaces": meshes,
                "analysis": analysis["summary"],
                "realization": realization,
            });
            out.json("example.json", &report)?;
            Ok(report)
        }
        "torus" => {
            let r = 2.0;
            let m = config::metric_preset(&format!("torus({r})"))?;
            let a = analyze_metric_field(st, &m, "torus(2)")?;
            Ok(json!({"command": "example", "example": "torus", "analysis": a}))
        }
        other => Err(CliError::Config(format!("unknown example `{other}`; expected four, two or torus"))),
    }
}
