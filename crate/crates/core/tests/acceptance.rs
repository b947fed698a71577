//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use mixed_surfaces::curves::{analyze, null_complement, reconstruct_from_invariants, CurveInvariants, CurveModel, CurveType, DeformMode};
use mixed_surfaces::metric::{
    analyze_semidefinite_point, classify_semidefinite, geodesic_curvature_christoffel, kappa_tilde_l, kappa_tilde_l_adjusted,
    limiting_geodesic_curvature, pullback_metric, straight_line, trace_semidefinite_set, type_ii_genericity_conditions, Domain,
    MetricField, SemidefiniteKind,
};
use mixed_surfaces::minkowski::{det3, MinkVector3};
use mixed_surfaces::presets;
use mixed_surfaces::realization::{
    deformation_family, gram_residual, integrate_frame_and_position, realize_all, Branch, RealizationProblem, RealizedSurface,
};
use mixed_surfaces::series::{Algebra, BiSeries, USeries};
use mixed_surfaces::surface::{
    adapted_data, gauss_codazzi_residuals, gw_matrices, invariants_along_ld, l_chart_surface, LightlikeKind, SurfacePatch,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type V = MinkVector3<f64>;
type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(x: E) -> String {
    format!("{x:?}")
}

fn rand_vec(rng: &mut ChaCha8Rng) -> V {
    V::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn grid(a: (f64, f64), b: (f64, f64), n: usize) -> impl Iterator<Item = (f64, f64)> {
    let step = move |r: (f64, f64), i: usize| r.0 + (r.1 - r.0) * (i as f64 + 0.5) / n as f64;
    (0..n).flat_map(move |i| (0..n).map(move |j| (step(a, i), step(b, j))))
}

fn box_samples(rho: f64, n: i32) -> impl Iterator<Item = (f64, f64)> {
    (-n..=n).flat_map(move |i| (-n..=n).map(move |j| (rho * i as f64 / n as f64, rho * j as f64 / n as f64)))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (u, v, w) = (rand_vec(&mut rng), rand_vec(&mut rng), rand_vec(&mut rng));
        let scalar = (det3(&u, &v, &w) - u.inner(&v.cross(&w))).abs();
        let vector = (u.cross(&v.cross(&w)) - (w.scale(u.inner(&v)) - v.scale(u.inner(&w)))).norm_inf();
        let vw = v.cross(&w);
        let area = (vw.inner(&vw) + v.inner(&v) * w.inner(&w) - v.inner(&w).powi(2)).abs();
        worst = worst.max(scalar).max(vector).max(area);
    }
    let dt = t.elapsed();
    ensure(worst <= 1e-12, || format!("max residual {worst:e}"))?;
    ensure(dt < Duration::from_secs(1), || format!("took {dt:?}"))?;
    Ok(format!("max residual {worst:.1e} in {dt:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r: f64 = rng.gen_range(0.2..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let w = V::new(phi.cos(), phi.sin(), 1.0).scale(r);
        let t = V::new(-phi.sin(), phi.cos(), 0.0);
        let beta: f64 = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let v = w.scale(rng.gen_range(-2.0..2.0)) + t.scale(beta);
        let n = v.inner(&v).sqrt();
        let c = v.cross(&w);
        worst = worst.max((c - w.scale(n)).norm_inf().min((c + w.scale(n)).norm_inf()));
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let fs: Vec<SurfacePatch<f64>> = (1..=4).map(|i| presets::four(i).map_err(e)).collect::<Result<_, _>>()?;
    let ms: Vec<MetricField<f64>> = fs.iter().map(|f| f.first_fundamental_form()).collect();
    let mut ffd: f64 = 0.0;
    for (u, v) in grid((-1.0, 1.0), (-0.25, 0.25), 101) {
        let g1 = ms[0].gram(u, v).map_err(e)?;
        for m in &ms[1..] {
            let g = m.gram(u, v).map_err(e)?;
            ffd = ffd.max(g.iter().zip(g1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        }
    }
    ensure(ffd <= 1e-10, || format!("first fundamental forms differ by {ffd:e}"))?;
    let report = invariants_along_ld(&fs[0], (101, 51), 8).map_err(e)?;
    let pts: Vec<_> = report.points().collect();
    ensure(!pts.is_empty(), || "empty locus".into())?;
    let vmax = pts.iter().map(|p| p.v.abs()).fold(0.0, f64::max);
    ensure(vmax <= 1e-8, || format!("locus leaves the u-axis by {vmax:e}"))?;
    ensure(pts.iter().all(|p| p.kind == LightlikeKind::FirstKind && p.generic), || "non-generic or second kind point".into())?;
    let umin = pts.iter().map(|p| p.u).fold(f64::INFINITY, f64::min);
    let umax = pts.iter().map(|p| p.u).fold(f64::NEG_INFINITY, f64::max);
    ensure(umin < -0.95 && umax > 0.95, || format!("locus covers only [{umin}, {umax}]"))?;
    let mut circ: f64 = 0.0;
    for f in &fs {
        for p in &pts {
            let x = f.point(p.u, p.v).map_err(e)?;
            circ = circ.max(((x.x1 + 1.0).powi(2) + x.x2.powi(2) - 1.0).abs());
        }
    }
    ensure(circ <= 1e-10, || format!("locus image off the circle by {circ:e}"))?;
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(10), || format!("took {dt:?}"))?;
    Ok(format!("{} locus points, |v| ≤ {vmax:.1e}, FFF spread {ffd:.1e}, circle {circ:.1e}, {dt:.2?}", pts.len()))
}

fn criterion_4() -> Outcome {
    let f1 = presets::two::<f64>(1).map_err(e)?;
    let f2 = presets::two::<f64>(2).map_err(e)?;
    let (m1, m2) = (f1.first_fundamental_form(), f2.first_fundamental_form());
    let mut ffd: f64 = 0.0;
    for (u, v) in grid((-1.0, 1.0), (-0.125, 0.125), 101) {
        let (a, b) = (m1.gram(u, v).map_err(e)?, m2.gram(u, v).map_err(e)?);
        ffd = ffd.max(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    ensure(ffd <= 1e-10, || format!("first fundamental forms differ by {ffd:e}"))?;
    let mut theta_max: f64 = 0.0;
    let mut kind = None;
    for u0 in [-0.5, 0.0, 0.5] {
        let (_, g) = l_chart_surface(&f1, (u0, 0.0), 14).map_err(e)?;
        let jets = g.position_jets(0.0, 0.0, 14).map_err(e)?;
        let c = CurveModel::new(jets.map(|s| s.restrict_v0()));
        let inv = analyze(&c).map_err(e)?;
        ensure(matches!(inv.kind, CurveType::L { .. }), || format!("curve at u = {u0} is {:?}", inv.kind))?;
        theta_max = theta_max.max(inv.theta.max_abs_coeff());
        kind = Some(inv.kind);
    }
    ensure(theta_max <= 1e-12, || format!("|θ| up to {theta_max:e}"))?;
    let curve = presets::two_curve::<f64>(16).map_err(e)?;
    let pb = RealizationProblem::from_metric(&m1, (0.0, 0.0), curve, 10).map_err(e)?;
    let n = realize_all(&pb, 0.05).map_err(e)?.len();
    ensure(pb.branches().len() == 2 && n == 2, || format!("|Z_γ| = {n}"))?;
    Ok(format!("FFF spread {ffd:.1e}, {kind:?}, |θ| ≤ {theta_max:.1e}, |Z_γ| = {n}"))
}

fn criterion_5() -> Outcome {
    let m = presets::torus_metric(2.0f64).map_err(e)?;
    let mut lam_err: f64 = 0.0;
    for (u, v) in grid((0.0, std::f64::consts::TAU), (-1.0, 1.0), 101) {
        let want = (2.0 + u.cos()) * u.cos();
        lam_err = lam_err.max((m.lambda(u, v).map_err(e)? - want).abs());
    }
    ensure(lam_err <= 1e-12, || format!("λ error {lam_err:e}"))?;
    let comps = trace_semidefinite_set(&m, m.domain, (201, 21)).map_err(e)?;
    ensure(comps.len() == 2, || format!("{} components", comps.len()))?;
    let cos_max = comps.iter().flat_map(|c| c.points.iter()).map(|p| p.u.cos().abs()).fold(0.0, f64::max);
    ensure(cos_max <= 1e-9, || format!("|cos u| up to {cos_max:e} on the set"))?;
    let mut mu_max: f64 = 0.0;
    for u0 in [std::f64::consts::FRAC_PI_2, 3.0 * std::f64::consts::FRAC_PI_2] {
        let p = (u0, 0.3);
        ensure(classify_semidefinite(&m, p).map_err(e)? == SemidefiniteKind::TypeII, || format!("not type II at {p:?}"))?;
        let a = analyze_semidefinite_point(&m, p, 8).map_err(e)?;
        let mu = a.mu_c.ok_or("no μ_c")?;
        ensure(!a.generic, || "reported generic".into())?;
        mu_max = mu_max.max(mu.abs());
    }
    ensure(mu_max <= 1e-9, || format!("|μ_c| = {mu_max:e}"))?;
    Ok(format!("λ error {lam_err:.1e}, |cos u| ≤ {cos_max:.1e}, TypeII, |μ_c| ≤ {mu_max:.1e}"))
}

fn criterion_6() -> Outcome {
    let m = presets::type_one_metric::<f64>();
    let n = 4;
    let jets = m.jets(0.0, 0.0, n).map_err(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let sgn = |r: &mut ChaCha8Rng| if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let a = rng.gen_range(0.5..2.0) * sgn(&mut rng);
        let d = rng.gen_range(0.5..2.0) * sgn(&mut rng);
        let c = rng.gen_range(-1.0..1.0);
        let mut q = [0.0; 6];
        q.iter_mut().for_each(|x| *x = rng.gen_range(-1.0..1.0));
        let x = BiSeries::var_u(0.0, n);
        let y = BiSeries::var_v(0.0, n);
        let uu = x.scale(a) + (x.clone() * x.clone()).scale(q[0]) + (x.clone() * y.clone()).scale(q[1]) + (y.clone() * y.clone()).scale(q[2]);
        let vv = x.scale(c) + y.scale(d) + (x.clone() * x.clone()).scale(q[3]) + (x.clone() * y.clone()).scale(q[4]) + (y.clone() * y).scale(q[5]);
        let pj = pullback_metric(&jets, &uu, &vv);
        let direct = kappa_tilde_l_adjusted(&pj).map_err(e)?;
        let field = MetricField::from_series(pj.e, pj.f, pj.g, (0.0, 0.0), Domain::square(0.1));
        let general = kappa_tilde_l(&field, (0.0, 0.0)).map_err(e)?;
        worst = worst.max((direct + 1.0).abs()).max((general + 1.0).abs());
    }
    ensure(worst <= 1e-9, || format!("max |κ̃_L + 1| = {worst:e}"))?;
    Ok(format!("max |κ̃_L + 1| = {worst:.1e} over 20 changes"))
}

fn criterion_7() -> Outcome {
    let m = presets::type_two_metric::<f64>();
    let p = (0.0, 0.0);
    ensure(classify_semidefinite(&m, p).map_err(e)? == SemidefiniteKind::TypeII, || "not type II".into())?;
    let line = straight_line(p, [1.0, 0.0], 8);
    let mut worst: f64 = 0.0;
    for k in 0..=16 {
        let s = 10f64.powf(-6.0 + 4.0 * k as f64 / 16.0);
        for t in [s, -s] {
            let kg = geodesic_curvature_christoffel(&m, &line, t).map_err(e)?;
            worst = worst.max((t.abs().sqrt() * kg + 1.0).abs());
        }
    }
    ensure(worst <= 1e-6, || format!("max |√|u| κ_g + 1| = {worst:e}"))?;
    let mu = limiting_geodesic_curvature(&m, p, None, 8).map_err(e)?;
    ensure((mu + 1.0).abs() <= 1e-8, || format!("μ_c = {mu}"))?;
    let conds = type_ii_genericity_conditions(&m, p, 8).map_err(e)?;
    ensure(conds.iter().all(|&c| c == conds[0]) && conds[0], || format!("conditions {conds:?}"))?;
    let flat = MetricField::parse("1", "0", "u", Domain::square(0.25)).map_err(e)?;
    let fc = type_ii_genericity_conditions(&flat, p, 8).map_err(e)?;
    ensure(fc.iter().all(|&c| !c), || format!("non-generic conditions {fc:?}"))?;
    Ok(format!("max |√|u| κ_g + 1| = {worst:.1e}, μ_c = {mu:.10}, conditions {conds:?} / {fc:?}"))
}

fn four_chart_data(order: usize) -> Result<(SurfacePatch<f64>, mixed_surfaces::surface::AdaptedData<f64>), String> {
    let f1 = presets::four_f1::<f64>();
    let (_, g) = l_chart_surface(&f1, (0.0, 0.0), order + 4).map_err(e)?;
    let d = adapted_data(&g, (0.0, 0.0), order, None).map_err(e)?;
    Ok((g, d))
}

fn criterion_8() -> Outcome {
    let (_, d) = four_chart_data(12)?;
    let r = gauss_codazzi_residuals(&d.e, &d.g, &d.x, &d.y, &d.z, 0.05, 11).map_err(e)?;
    let rmax = r.iter().cloned().fold(0.0, f64::max);
    ensure(rmax <= 1e-7, || format!("residuals {r:?}"))?;
    let xp = d.x.clone() + BiSeries::constant(0.1, d.x.order());
    let rp = gauss_codazzi_residuals(&d.e, &d.g, &xp, &d.y, &d.z, 0.05, 11).map_err(e)?;
    let pmax = rp.iter().cloned().fold(0.0, f64::max);
    ensure(pmax > 1e-3, || format!("perturbed residuals {rp:?}"))?;
    Ok(format!("residuals {:.1e} {:.1e} {:.1e}; perturbed max {pmax:.2e}", r[0], r[1], r[2]))
}

fn criterion_9() -> Outcome {
    let (g, d) = four_chart_data(10)?;
    let (u, v) = gw_matrices(&d.gw_inputs()).map_err(e)?;
    let origin = g.point(0.0, 0.0).map_err(e)?;
    let sol = integrate_frame_and_position(&u, &v, &d.frame_at_origin(), &origin);
    let mut worst: f64 = 0.0;
    for (a, b) in box_samples(0.05, 10) {
        worst = worst.max((sol.f.map(|s| s.eval(a, b)) - g.point(a, b).map_err(e)?).norm_inf());
    }
    ensure(worst <= 1e-6, || format!("sup ‖f - f₁‖ = {worst:e}"))?;
    let gram = gram_residual(&sol, &d.e, &d.g, 0.05, 11);
    ensure(gram <= 1e-9, || format!("Gram error {gram:e}"))?;
    Ok(format!("sup ‖f - f₁‖ = {worst:.1e}, Gram error {gram:.1e}"))
}

fn four_problem(order: usize) -> Result<RealizationProblem<f64>, String> {
    RealizationProblem::from_metric(&presets::four_metric(), (0.0, 0.0), presets::four_curve(order + 4), order).map_err(e)
}

fn kappa_oracles(u: f64) -> [f64; 3] {
    [((u + 2.0) / 4.0).cbrt(), (2.0 * (u + 2.0)).cbrt().recip(), -1.0 / (3.0 * (u + 2.0))]
}

fn axis_samples(pb: &RealizationProblem<f64>, rho: f64) -> Vec<(f64, f64)> {
    let chart = pb.chart.as_ref().expect("chart");
    (-10..=10)
        .map(|i| {
            let t = rho * i as f64 / 10.0;
            (t, chart.to_original(t, 0.0).0)
        })
        .collect()
}

fn kappa_error(s: &RealizedSurface<f64>, samples: &[(f64, f64)]) -> Result<f64, String> {
    let k = s.invariants().map_err(e)?;
    let mut worst: f64 = 0.0;
    for &(t, u) in samples {
        let want = kappa_oracles(u);
        for i in 0..3 {
            worst = worst.max((k[i].eval(t) - want[i]).abs());
        }
    }
    Ok(worst)
}

fn criterion_10() -> Outcome {
    let rho = 0.05;
    let pb = four_problem(10)?;
    let all = realize_all(&pb, rho).map_err(e)?;
    ensure(all.len() == 4, || format!("{} branches", all.len()))?;
    let coarse = realize_all(&four_problem(6)?, rho).map_err(e)?;
    let mut worst: f64 = 0.0;
    let mut ratio = f64::INFINITY;
    for (a, b) in all.iter().zip(&coarse) {
        worst = worst.max(a.residuals.metric);
        ratio = ratio.min(b.residuals.metric / a.residuals.metric);
    }
    ensure(worst <= 1e-6, || format!("metric residual {worst:e}"))?;
    ensure(ratio >= 10.0, || format!("decay ratio {ratio}"))?;
    let samples = axis_samples(&pb, rho);
    let errs: Vec<f64> = all.iter().map(|s| kappa_error(s, &samples)).collect::<Result<_, _>>()?;
    let best = errs.iter().cloned().fold(f64::INFINITY, f64::min);
    ensure(best <= 1e-6, || format!("κ errors {errs:?}"))?;
    let two = RealizationProblem::from_metric(&presets::two_metric(), (0.0, 0.0), presets::two_curve(16).map_err(e)?, 10).map_err(e)?;
    let n2 = realize_all(&two, rho).map_err(e)?.len();
    ensure(n2 == 2, || format!("{n2} branches for the non-Frenet curve"))?;
    Ok(format!("4 branches, metric residual {worst:.1e}, decay ×{ratio:.0}, best κ error {best:.1e}, 2 branches for type L"))
}

fn criterion_11() -> Outcome {
    let n = 18;
    let e1 = V::new(1.0, 0.0, 0.0);
    let kk = V::new(0.0, -1.0, 1.0);
    let beta = null_complement(&e1, &kk).map_err(e)?;
    let poly = |c: &[f64]| {
        let mut s = USeries::zeros(n);
        c.iter().enumerate().for_each(|(i, &x)| s.set(i, x));
        s
    };
    let circle = presets::four_curve::<f64>(n);
    let cases = vec![
        CurveInvariants { kind: CurveType::S, theta: poly(&[1.0, 0.5]), torsion: poly(&[0.3, -0.2]), ..circle.clone() },
        CurveInvariants {
            kind: CurveType::T,
            theta: poly(&[-1.0, -0.3]),
            torsion: poly(&[0.1, 0.0, 1.0]),
            frame: [e1, V::new(0.0, 0.0, 1.0), V::new(0.0, -1.0, 0.0)],
            origin: V::zero(),
        },
        CurveInvariants { kind: CurveType::L { signature: 1 }, theta: poly(&[]), torsion: poly(&[0.4, 0.1]), frame: [e1, kk, beta], origin: V::zero() },
        CurveInvariants {
            kind: CurveType::Lk { k: 1, signature: 1 },
            theta: poly(&[0.0, 1.0, 0.5]),
            torsion: poly(&[0.2]),
            frame: [e1, kk, beta],
            origin: V::zero(),
        },
        CurveInvariants {
            kind: CurveType::Lk { k: 2, signature: 1 },
            theta: poly(&[0.0, 0.0, 1.0]),
            torsion: poly(&[-0.3, 0.2]),
            frame: [e1, kk, beta],
            origin: V::zero(),
        },
    ];
    let mut worst: f64 = 0.0;
    for inv in &cases {
        let back = analyze(&reconstruct_from_invariants(inv, n).map_err(e)?).map_err(e)?;
        ensure(back.kind == inv.kind, || format!("{:?} came back as {:?}", inv.kind, back.kind))?;
        for k in 0..=10 {
            worst = worst
                .max((back.theta.coeff(k) - inv.theta.coeff(k)).abs())
                .max((back.torsion.coeff(k) - inv.torsion.coeff(k)).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("max coefficient error {worst:e}"))?;
    Ok(format!("S, T, L, L1, L2 recovered, max coefficient error {worst:.1e}"))
}

fn criterion_12() -> Outcome {
    let rho = 0.05;
    let s = 0.5;
    let pb = four_problem(10)?;
    let b = Branch { epsilon: -1, reversed: false };
    let fam = deformation_family(&pb, b, &[0.0, s], DeformMode::Shift, rho).map_err(e)?;
    let metric = fam.iter().map(|m| m.residuals.metric).fold(0.0, f64::max);
    ensure(metric <= 1e-6, || format!("metric residual {metric:e}"))?;
    let sep = box_samples(rho, 5).map(|(a, c)| (fam[0].point(a, c) - fam[1].point(a, c)).norm_inf()).fold(0.0, f64::max);
    ensure(sep > 1e-3, || format!("members only {sep:e} apart"))?;
    let ev = pb.e.diff_v().restrict_v0();
    let gv = pb.g.diff_v().restrict_v0();
    let (k0, k1) = (fam[0].invariants().map_err(e)?, fam[1].invariants().map_err(e)?);
    let mut dn: f64 = 0.0;
    for i in -10..=10 {
        let t = rho * i as f64 / 10.0;
        let want = s * gv.eval(t).cbrt() / ev.eval(t);
        dn = dn.max((k0[1].eval(t) - k1[1].eval(t) - want).abs());
    }
    ensure(dn <= 1e-6, || format!("κ_N identity off by {dn:e}"))?;
    let mut pb2 = pb.clone();
    let mut theta = USeries::constant(1.0, pb.curve.theta.order());
    theta.set(1, 0.5);
    pb2.curve.theta = theta.clone();
    let fam2 = deformation_family(&pb2, b, &[0.0, s], DeformMode::Shift, rho).map_err(e)?;
    let (g0, g1) = (fam2[0].invariants().map_err(e)?, fam2[1].invariants().map_err(e)?);
    let mut dg: f64 = 0.0;
    for i in -10..=10 {
        let t = rho * i as f64 / 10.0;
        let (th, dth) = (theta.eval(t), theta.diff().eval(t));
        let want = s * dth / (2.0 * th * (th + s));
        dg = dg.max((g0[2].eval(t) - g1[2].eval(t) - want).abs());
    }
    ensure(dg <= 1e-6, || format!("κ_G identity off by {dg:e}"))?;
    let m2 = fam2.iter().map(|m| m.residuals.metric).fold(0.0, f64::max);
    ensure(m2 <= 1e-6, || format!("metric residual {m2:e} on the θ' ≠ 0 family"))?;
    Ok(format!("metric residual {metric:.1e}, separation {sep:.2e}, κ_N identity {dn:.1e}, κ_G identity {dg:.1e}"))
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("minkowski identities", criterion_1),
        ("lightlike cross product dichotomy", criterion_2),
        ("four-branch example", criterion_3),
        ("two-branch example", criterion_4),
        ("torus metric", criterion_5),
        ("intrinsic lightlike singular curvature", criterion_6),
        ("limiting geodesic curvature", criterion_7),
        ("Gauss-Codazzi residuals", criterion_8),
        ("fundamental theorem round trip", criterion_9),
        ("realization", criterion_10),
        ("curve round trips", criterion_11),
        ("extrinsicity witnesses", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{:.2?}]", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(120);
    println!("suite {} in {total:.2?}", if in_time { "PASS" } else { "FAIL" });
    if failed > 0 || !in_time {
        std::process::exit(1);
    }
}
