//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails. Tolerances are fixed here and never tuned per fixture.

use std::process::ExitCode;
use std::time::Instant;

use halflight::ambient::Vec4;
use halflight::classify::{self, sample_points, umbilical_triple};
use halflight::cli::run::{point_data, PointData};
use halflight::cli::{run, RunOptions, SurfaceConfig};
use halflight::fixtures;
use halflight::forms::identity_residuals;
use halflight::frame::frame_residuals;
use halflight::sections::{planarity, DirectionKind, LocalGeometry};
use halflight::surface::Backend;
use halflight::trace::{compare, trace_curve, DEFAULT_STEP};

const JET_TOL: f64 = 1e-8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn data(cfg: &SurfaceConfig, trace: bool) -> Vec<([f64; 2], PointData)> {
    cfg.sample()
        .into_iter()
        .map(|p| (p, point_data(cfg, p, Backend::Jet, JET_TOL, trace, None).unwrap_or_else(|e| panic!("{} at {p:?}: {e}", cfg.name))))
        .collect()
}

fn theorem_fixtures() -> Vec<SurfaceConfig> {
    let mut v = fixtures::worked_examples();
    v.extend(fixtures::counterexamples());
    v
}

fn form_max(f: &[[f64; 2]; 2]) -> f64 {
    f.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn u2(p: [f64; 2]) -> Vec4 {
    let t = p[0] - p[1];
    let c = 1.0 + t * t;
    Vec4::new(0.0, 2f64.sqrt() * c, c, -(2f64.sqrt()) * t)
}

fn criterion1() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut relations = 0;
    for cfg in fixtures::worked_examples() {
        for p in cfg.sample() {
            let f = cfg.surface.frame(p).unwrap();
            let r = frame_residuals(&f, &cfg.surface.metric);
            relations = r.len();
            worst = r.iter().fold(worst, |m, x| m.max(x.1));
            count += 1;
        }
    }
    for seed in 0..20 {
        let s = fixtures::random_ruled(seed);
        for p in fixtures::random_points(&s, 5, 1000 + seed) {
            let f = s.frame(p).unwrap();
            worst = frame_residuals(&f, &s.metric).iter().fold(worst, |m, x| m.max(x.1));
            count += 1;
        }
    }
    outcome(worst < 1e-10, format!("{relations} relations at {count} points (100 random), worst {worst:.2e} (< 1e-10)"))
}

fn criterion2() -> Outcome {
    let cfg = fixtures::example_ex1();
    let g = &cfg.surface.metric;
    let mut forms = 0.0f64;
    let mut d2uu = 0.0f64;
    let mut diagonal = 0;
    let mut gamma2 = 0.0f64;
    let mut planar_residual = 0.0f64;
    let mut all_planar = true;
    let mut sample = cfg.sample();
    sample.extend([[0.2, 0.2], [-0.3, -0.3]]);
    for p in sample {
        let local = LocalGeometry::at(&cfg.surface, p, Backend::Jet).unwrap();
        let pkg = &local.pkg;
        forms = forms
            .max(form_max(&pkg.d1))
            .max(form_max(&pkg.a_n))
            .max(pkg.rho1[0].abs().max(pkg.rho1[1].abs()))
            .max(pkg.d2[0][0].abs().max(pkg.d2[1][0].abs()).max(pkg.d2[0][1].abs()));
        if (p[0] - p[1]).abs() < 1e-15 {
            let t = umbilical_triple(&local.frame, pkg, g, &u2(p), 1e-10).unwrap();
            d2uu = d2uu.max((t.d2 - 2.0).abs());
            diagonal += 1;
        }
        let jet = local.degenerate_jet().unwrap();
        gamma2 = gamma2.max(jet.d2.norm_e());
        let (planar, r) = planarity(&jet, JET_TOL);
        all_planar &= planar;
        planar_residual = planar_residual.max(r);
    }
    let pass = forms < 1e-9 && diagonal > 0 && d2uu < 1e-8 && gamma2 < 1e-9 && all_planar && planar_residual < 1e-10;
    outcome(
        pass,
        format!("D1, A_N, rho1, D2(.,xi) max {forms:.2e}; |D2(U2,U2) - 2| {d2uu:.2e} on {diagonal} diagonal points; |gamma''| {gamma2:.2e}; degenerate planar residual {planar_residual:.2e}"),
    )
}

fn criterion3() -> Outcome {
    let cfg = fixtures::example_ex1();
    let p = [0.1, 0.1];
    let triple = |b: Backend| {
        let q = &sample_points(&cfg.surface, &[p], b).unwrap()[0];
        umbilical_triple(&q.frame, &q.pkg, &cfg.surface.metric, &u2(p), 1e-6).unwrap()
    };
    let (jet, fd) = (triple(Backend::Jet), triple(Backend::Fd));
    let reference = -1.0;
    let consistent = (fd.h2 - fd.d2 / fd.norm).abs() < 1e-12;
    let pass = (fd.h2 + 2.0).abs() < 1e-5 && (jet.h2 - fd.h2).abs() < 1e-5 && consistent && (fd.h2 / reference - 2.0).abs() < 1e-5;
    outcome(
        pass,
        format!(
            "t=0: D2(U2,U2) = {:.6}, g(U2,U2) = {:.6}, H2 = {:.6} (FD), {:.9} (jet); reference H2 = -1/(1+t^4) = {reference} is off by a factor {:.6}",
            fd.d2,
            fd.norm,
            fd.h2,
            jet.h2,
            fd.h2 / reference
        ),
    )
}

fn criterion4() -> Outcome {
    let cfg = fixtures::example_r41();
    let mut eps_d2 = 0.0f64;
    let mut rho = 0.0f64;
    let mut d1 = 0.0f64;
    let mut planar_residual = 0.0f64;
    let mut all_planar = true;
    let mut gamma2 = 0.0f64;
    for p in cfg.sample() {
        let local = LocalGeometry::at(&cfg.surface, p, Backend::Jet).unwrap();
        let pkg = &local.pkg;
        eps_d2 = eps_d2.max((pkg.eps * pkg.d2[1][1] + 1.0).abs());
        rho = rho.max(pkg.rho1[1].abs()).max(pkg.rho2[1].abs());
        d1 = d1.max(form_max(&pkg.d1));
        let jet = local.nondegenerate_jet().unwrap();
        let (planar, r) = planarity(&jet, JET_TOL);
        all_planar &= planar;
        planar_residual = planar_residual.max(r);
        let f = &local.frame;
        let curve = trace_curve(&cfg.surface, p, &f.v, f.v_dir, &f.n, &f.u, DEFAULT_STEP).unwrap();
        gamma2 = gamma2.max(compare(&jet, &curve).d2);
    }
    let pass = eps_d2 < 1e-9 && rho < 1e-9 && d1 < 1e-9 && all_planar && planar_residual < 1e-10 && gamma2 < 1e-5;
    outcome(
        pass,
        format!("|eps D2(v,v) + 1| {eps_d2:.2e}; rho1(v), rho2(v) {rho:.2e}; D1 {d1:.2e}; non-degenerate planar residual {planar_residual:.2e}; gamma'' vs trace {gamma2:.2e}"),
    )
}

fn criterion5() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for cfg in fixtures::all() {
        for kind in DirectionKind::BOTH {
            let w = data(&cfg, true)
                .iter()
                .map(|(_, d)| d.section(kind).trace.as_ref().unwrap().agreement.max())
                .fold(0.0, f64::max);
            worst = worst.max(w);
            if !(w < 1e-5) {
                failures.push(format!("{} {} {w:.2e}", cfg.name, kind.name()));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("worst relative discrepancy {worst:.2e} (< 1e-5)")
    } else {
        format!("over 1e-5: {}", failures.join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn criterion6() -> Outcome {
    let mut n_err = 0.0f64;
    let mut d2_err = 0.0f64;
    let mut flips = 0;
    for cfg in fixtures::all() {
        for p in cfg.sample() {
            let base = LocalGeometry::at(&cfg.surface, p, Backend::Jet).unwrap();
            for alpha in [0.5, 2.0, -3.0] {
                let other = LocalGeometry::gauged(&cfg.surface, p, Backend::Jet, alpha).unwrap();
                n_err = n_err.max((other.frame.n - base.frame.n * (1.0 / alpha)).norm_e());
                d2_err = d2_err.max((other.pkg.d2[0][0] - alpha * alpha * base.pkg.d2[0][0]).abs());
                for kind in DirectionKind::BOTH {
                    let a = planarity(&base.section_jet(kind).unwrap(), JET_TOL).0;
                    let b = planarity(&other.section_jet(kind).unwrap(), JET_TOL).0;
                    flips += usize::from(a != b);
                }
            }
        }
    }
    outcome(
        n_err < 1e-10 && d2_err < 1e-9 && flips == 0,
        format!("|N* - N/alpha| {n_err:.2e}; |D2(xi*,xi*) - alpha^2 D2(xi,xi)| {d2_err:.2e}; {flips} verdict changes"),
    )
}

fn criterion7() -> Outcome {
    let mut worst = ("", 0.0f64);
    for cfg in fixtures::all() {
        for p in cfg.sample() {
            let local = LocalGeometry::at(&cfg.surface, p, Backend::Jet).unwrap();
            for (name, r) in identity_residuals(&local.pkg, &local.frame, &cfg.surface.metric) {
                if !(r <= worst.1) {
                    worst = (name, r);
                }
            }
        }
    }
    outcome(worst.1 < 1e-8, format!("worst {:.2e} ({}) (< 1e-8)", worst.1, worst.0))
}

fn criterion8() -> Outcome {
    let mut counts = [[0usize; 2]; 2];
    let mut where_ = Vec::new();
    for cfg in theorem_fixtures() {
        for (_, d) in data(&cfg, false) {
            for (i, kind) in DirectionKind::BOTH.into_iter().enumerate() {
                let s = d.section(kind);
                let theorem = (s.theorem_residual < JET_TOL) != s.planar;
                let arc = s.jet.geodesic_arc && (s.geodesic_h_residual < JET_TOL) != s.planar;
                counts[i][0] += usize::from(theorem);
                counts[i][1] += usize::from(arc);
                if theorem || arc {
                    let tag = format!("{} {}", cfg.name, kind.name());
                    if !where_.contains(&tag) {
                        where_.push(tag);
                    }
                }
            }
        }
    }
    let pass = counts.iter().flatten().all(|&c| c == 0);
    let mut detail = format!(
        "disagreements: degenerate {} theorem / {} geodesic-arc, non-degenerate {} theorem / {} geodesic-arc",
        counts[0][0], counts[0][1], counts[1][0], counts[1][1]
    );
    if !where_.is_empty() {
        detail += &format!(" (in {})", where_.join(", "));
    }
    outcome(pass, detail)
}

fn criterion9() -> Outcome {
    let ex1 = fixtures::example_ex1();
    let c = classify::classify(&ex1.surface, &ex1.sample(), Backend::Jet, JET_TOL).unwrap();
    let verdicts = c.totally_umbilical.holds && !c.totally_geodesic.holds && c.irrotational.holds;
    let mut violations = Vec::new();
    for cfg in theorem_fixtures().into_iter().chain([fixtures::null_plane()]) {
        let c = classify::classify(&cfg.surface, &cfg.sample(), Backend::Jet, JET_TOL).unwrap();
        for v in c.implication_violations(JET_TOL) {
            violations.push(format!("{}: {v}", cfg.name));
        }
        if c.totally_geodesic.holds {
            for (p, d) in data(&cfg, false) {
                if d.nondegenerate.planar && d.nondegenerate.jet.d_kappa_sq.abs() >= JET_TOL {
                    violations.push(format!("{} at {p:?}: geodesic and planar but not a vertex", cfg.name));
                }
            }
        }
    }
    let detail = format!(
        "ex1: umbilical {}, geodesic {}, irrotational {}; {} implication violations{}",
        c.totally_umbilical.holds,
        c.totally_geodesic.holds,
        c.irrotational.holds,
        violations.len(),
        if violations.is_empty() { String::new() } else { format!(" ({})", violations.join("; ")) }
    );
    outcome(verdicts && violations.is_empty(), detail)
}

fn criterion10() -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut used = Vec::new();
    for cfg in fixtures::all() {
        let d = data(&cfg, false);
        if d.iter().all(|(_, d)| d.degenerate.planar) {
            let w = d.iter().map(|(_, d)| d.a_u_xi_residual).fold(0.0, f64::max);
            if w >= worst.0 {
                worst = (w, cfg.name.clone());
            }
            used.push(cfg.name.clone());
        }
    }
    outcome(
        !used.is_empty() && worst.0 < 1e-8,
        format!("|A_u xi - eps rho2(xi) xi| worst {:.2e} on {}; checked {}", worst.0, worst.1, used.join(", ")),
    )
}

fn full_run() -> Vec<String> {
    fixtures::all()
        .iter()
        .map(|cfg| run(cfg, &RunOptions::default()).unwrap().to_json())
        .collect()
}

fn criterion11(start: Instant) -> Outcome {
    let t = Instant::now();
    let a = full_run();
    let one_run = t.elapsed().as_secs_f64();
    let b = full_run();
    let same = a == b;
    let total = start.elapsed().as_secs_f64();
    outcome(
        same && total < 60.0,
        format!("reports identical: {same}; one full run {one_run:.1}s; acceptance suite {total:.1}s (< 60s)"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 10] = [
        ("frame invariants", Box::new(criterion1)),
        ("ex1 reproduction", Box::new(criterion2)),
        ("ex1 H2 adjudication", Box::new(criterion3)),
        ("R41 example reproduction", Box::new(criterion4)),
        ("backend agreement", Box::new(criterion5)),
        ("gauge covariance", Box::new(criterion6)),
        ("structural identities", Box::new(criterion7)),
        ("planarity theorem equivalence", Box::new(criterion8)),
        ("classification", Box::new(criterion9)),
        ("A_u xi radical-valued", Box::new(criterion10)),
    ];
    let mut failed = 0;
    let mut report = |n: usize, name: &str, o: Outcome| {
        println!("criterion {n:>2} {}  {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    };
    for (i, (name, f)) in criteria.iter().enumerate() {
        report(i + 1, name, f());
    }
    report(11, "determinism and wall time", criterion11(start));
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
