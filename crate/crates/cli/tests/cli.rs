use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixsurf"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn example_four_writes_four_branch_meshes() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["example", "four"], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for i in 1..=4 {
        assert!(t.path().join(format!("branch_{i}.csv")).exists());
        assert!(t.path().join(format!("branch_{i}.json")).exists());
    }
    let v = stdout_json(&o);
    assert_eq!(v["realization"]["z_gamma"], 4);
}

#[test]
fn obj_flag_adds_obj_meshes() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["realize", "two", "--obj"], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let obj = std::fs::read_to_string(t.path().join("branch_1.obj")).unwrap();
    assert!(obj.starts_with("v ") && obj.contains("\nf "));
}

#[test]
fn analyze_surface_finds_first_kind_locus_on_the_u_axis() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["analyze-surface", "ex-four-f1"], t.path());
    assert_eq!(o.status.code(), Some(0));
    let s = &stdout_json(&o)["summary"];
    assert!(s["points"].as_u64().unwrap() > 50);
    assert_eq!(s["points"], s["first_kind"]);
    assert!(s["max_abs_v"].as_f64().unwrap() < 1e-9);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(t.path().join("report.json")).unwrap()).unwrap();
    let p = &report["locus"][0]["points"][0];
    assert_eq!(p["kind"], "first");
    assert!(p["kappa_L"].is_number() && p["kappa_N"].is_number() && p["kappa_G"].is_number());
}

#[test]
fn perturbed_second_fundamental_form_fails_verification() {
    let t = tempfile::tempdir().unwrap();
    let cfg = write(
        t.path(),
        "perturbed.json",
        r#"{"x1": "(1 - (u+2)*(v + v^2/2))*cos(u) - 1", "x2": "(1 - (u+2)*(v + v^2/2))*sin(u)",
            "x3": "(u+2)*(v - v^2/2)", "domain": {"u": [-1, 1], "v": [-0.2, 0.2]}, "perturb_x": 0.1}"#,
    );
    let clean = run(&["verify", "ex-four-f1"], &t.path().join("clean"));
    assert_eq!(clean.status.code(), Some(0), "{}", String::from_utf8_lossy(&clean.stderr));
    let o = run(&["verify", "--config", &cfg], &t.path().join("bad"));
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let d = stderr_json(&o);
    assert_eq!(d["kind"], "residual");
    let names: Vec<&str> = d["failures"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| ["codazzi_1", "codazzi_2", "gauss"].contains(n)), "{names:?}");
}

#[test]
fn malformed_config_exits_with_config_code() {
    let t = tempfile::tempdir().unwrap();
    let bad_json = write(t.path(), "a.json", "{ not json");
    let bad_expr = write(
        t.path(),
        "b.json",
        r#"{"x1": "u +* v", "x2": "v", "x3": "0", "domain": {"u": [0, 1], "v": [0, 1]}}"#,
    );
    let bad_field = write(t.path(), "c.json", r#"{"x1": "u", "domain": {"u": [0, 1], "v": [0, 1]}}"#);
    for cfg in [bad_json, bad_expr, bad_field] {
        let o = run(&["analyze-surface", "--config", &cfg], t.path());
        assert_eq!(o.status.code(), Some(2), "{cfg}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stderr_json(&o)["exit_code"], 2);
    }
    let o = run(&["realize", "four", "--grid", "2x9"], t.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spacelike_plane_has_empty_locus() {
    let t = tempfile::tempdir().unwrap();
    let cfg = write(t.path(), "plane.json", r#"{"x1": "u", "x2": "v", "x3": "0", "domain": {"u": [-1, 1], "v": [-1, 1]}}"#);
    let o = run(&["analyze-surface", "--config", &cfg, "--grid", "41x41"], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["summary"]["points"], 0);
}

#[test]
fn outputs_are_deterministic() {
    let t = tempfile::tempdir().unwrap();
    let (a, b) = (t.path().join("a"), t.path().join("b"));
    let oa = run(&["example", "two"], &a);
    let ob = run(&["example", "two"], &b);
    assert_eq!(oa.status.code(), Some(0));
    let strip = |s: &[u8], p: &Path| String::from_utf8_lossy(s).replace(&*p.to_string_lossy(), "");
    assert_eq!(strip(&oa.stdout, &a), strip(&ob.stdout, &b));
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() > 5);
    for n in names {
        assert_eq!(std::fs::read(a.join(&n)).unwrap(), std::fs::read(b.join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn seeded_minkowski_suite_passes_and_repeats() {
    let t = tempfile::tempdir().unwrap();
    let o1 = run(&["verify", "minkowski", "--seed", "7"], t.path());
    let o2 = run(&["verify", "minkowski", "--seed", "7"], t.path());
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
}

#[test]
fn deform_reports_curvature_differences() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["deform", "four"], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["members"].as_array().unwrap().len(), 3);
    let table = std::fs::read_to_string(t.path().join("differences.csv")).unwrap();
    assert!(table.lines().next().unwrap().contains("kappa_N_pred"));
    assert!(t.path().join("member_2.csv").exists());
}

#[test]
fn non_frenet_deformation_is_a_math_error() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["deform", "two"], t.path());
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["stage"], "deform");
}

#[test]
fn torus_metric_splits_into_two_semidefinite_circles() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["example", "torus", "--grid", "101x41"], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = &stdout_json(&o)["analysis"]["summary"];
    assert_eq!(s["components"], 2);
    assert!(t.path().join("lambda.csv").exists());
}

#[test]
fn type_two_metric_realizes_along_a_circle() {
    let t = tempfile::tempdir().unwrap();
    let ok = write(t.path(), "ok.json", r#"{"metric": "type-two", "curve": "circle", "kind": "II"}"#);
    let o = run(&["realize", "--config", &ok], t.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["kind"], "TypeII");
    assert_eq!(v["branches"].as_array().unwrap().len(), 4);
    let wrong = write(t.path(), "wrong.json", r#"{"metric": "type-two", "curve": "circle", "kind": "I"}"#);
    assert_eq!(run(&["realize", "--config", &wrong], t.path()).status.code(), Some(3));
}
