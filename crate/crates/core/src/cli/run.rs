//! Orchestrates all requested checks over the sample grid.

use serde::Serialize;

use super::config::{BackendChoice, Check, SurfaceConfig};
use super::report::{CheckResult, PointEntry, Report};
use crate::ambient::relative_wedge_residual;
use crate::classify::{classify, ClassReport};
use crate::error::Error;
use crate::forms::{identity_residuals, Form};
use crate::frame::{frame_residuals, MovingFrame};
use crate::sections::{planarity, DirectionKind, LocalGeometry, SectionJet};
use crate::surface::Backend;
use crate::trace::{compare, trace_curve, Agreement, TracedCurve, DEFAULT_STEP};

pub const GAUGES: [f64; 3] = [0.5, 2.0, -3.0];
/// Relative jet-vs-trace tolerance on the jet backend.
pub const AGREEMENT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Replace the sample grid with a single point.
    pub point: Option<[f64; 2]>,
    pub backend: Option<BackendChoice>,
    /// Override the tolerance of every backend in use.
    pub tol: Option<f64>,
    /// Include traced-curve samples in this direction.
    pub trace: Option<DirectionKind>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PackageSummary {
    pub d1: Form<f64>,
    pub d2: Form<f64>,
    pub e1: Form<f64>,
    pub eps1: [f64; 2],
    pub rho1: [f64; 2],
    pub rho2: [f64; 2],
    pub u1: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    pub agreement: Agreement,
    pub planarity_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<TracedCurve>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionSummary {
    pub jet: SectionJet,
    pub planar: bool,
    /// Degenerate: `D2(ξ,ξ)u ∧ ∇̄_ξ(D2(ξ,ξ)u)`; non-degenerate: `T ∧ ∇̄_v T`.
    pub theorem_residual: f64,
    /// `h ∧ ∇̄h` along the section direction.
    pub geodesic_h_residual: f64,
    /// Non-degenerate only: both residuals with `v` wedged in, which lets
    /// `∇̄_v T` and `(∇̄_v h)(v,v)` keep their tangential `A v` parts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mod_v: Option<[f64; 2]>,
    pub l_value: f64,
    /// `d⟨γ″,γ″⟩/ds` from differentiating `γ″` directly.
    pub d_kappa_sq_direct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaugeSummary {
    pub alpha: f64,
    /// `‖αN* − N‖_E`.
    pub n_error: f64,
    /// `|D2(ξ*,ξ*) − α² D2(ξ,ξ)|`.
    pub d2_error: f64,
    pub verdicts_unchanged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointData {
    pub frame: MovingFrame,
    pub frame_residual: f64,
    pub identity_residual: f64,
    pub worst_identity: &'static str,
    pub package: PackageSummary,
    pub degenerate: SectionSummary,
    pub nondegenerate: SectionSummary,
    pub plane_coefficients: Option<[f64; 3]>,
    pub a_u_xi_residual: f64,
    pub gauge: Vec<GaugeSummary>,
}

impl PointData {
    pub fn section(&self, kind: DirectionKind) -> &SectionSummary {
        match kind {
            DirectionKind::Degenerate => &self.degenerate,
            DirectionKind::Nondegenerate => &self.nondegenerate,
        }
    }
}

fn worst_of(list: &[(&'static str, f64)]) -> (&'static str, f64) {
    list.iter().skip(1).fold(list[0], |acc, &(n, r)| if r > acc.1 || r.is_nan() { (n, r) } else { acc })
}

fn section_summary(
    s: &crate::surface::Surface,
    p: [f64; 2],
    local: &LocalGeometry,
    kind: DirectionKind,
    tol: f64,
    trace: bool,
    keep_curve: bool,
) -> Result<SectionSummary, Error> {
    let jet = local.section_jet(kind)?;
    let theorem_residual = match kind {
        DirectionKind::Degenerate => local.theorem31_residual()?,
        DirectionKind::Nondegenerate => local.theorem_nd_residual()?,
    };
    let gh = local.geodesic_h_residuals()?;
    let trace = if trace {
        let f = &local.frame;
        let (w, dir) = match kind {
            DirectionKind::Degenerate => (f.xi, f.xi_dir),
            DirectionKind::Nondegenerate => (f.v, f.v_dir),
        };
        let curve = trace_curve(s, p, &w, dir, &f.n, &f.u, DEFAULT_STEP)?;
        Some(TraceSummary {
            agreement: compare(&jet, &curve),
            planarity_residual: relative_wedge_residual(&curve.d1, &curve.d2, &curve.d3),
            curve: keep_curve.then_some(curve),
        })
    } else {
        None
    };
    Ok(SectionSummary {
        planar: planarity(&jet, tol).0,
        theorem_residual,
        geodesic_h_residual: gh[if kind == DirectionKind::Degenerate { 0 } else { 1 }],
        mod_v: match kind {
            DirectionKind::Degenerate => None,
            DirectionKind::Nondegenerate => Some([local.theorem_nd_residual_mod_v()?, local.geodesic_h_residual_mod_v()?]),
        },
        l_value: local.l_value(kind)?,
        d_kappa_sq_direct: local.d_kappa_sq_direct(kind)?,
        jet,
        trace,
    })
}

/// Everything computed at one point on one backend.
pub fn point_data(cfg: &SurfaceConfig, p: [f64; 2], backend: Backend, tol: f64, trace: bool, keep: Option<DirectionKind>) -> Result<PointData, Error> {
    let s = &cfg.surface;
    let local = LocalGeometry::at(s, p, backend)?;
    let (f, pkg) = (&local.frame, &local.pkg);
    let (_, frame_residual) = worst_of(&frame_residuals(f, &s.metric));
    let (worst_identity, identity_residual) = worst_of(&identity_residuals(pkg, f, &s.metric));
    let degenerate = section_summary(s, p, &local, DirectionKind::Degenerate, tol, trace, keep == Some(DirectionKind::Degenerate))?;
    let nondegenerate = section_summary(s, p, &local, DirectionKind::Nondegenerate, tol, trace, keep == Some(DirectionKind::Nondegenerate))?;
    let plane_coefficients = match local.plane_coefficients() {
        Ok((a, b)) => Some([a, b, local.plane_residual()?]),
        Err(Error::CoefficientUndefined(_)) => None,
        Err(e) => return Err(e),
    };

    let mut gauge = Vec::new();
    for alpha in GAUGES {
        let other = LocalGeometry::gauged(s, p, backend, alpha)?;
        let mut unchanged = true;
        for kind in DirectionKind::BOTH {
            let before = planarity(&local.section_jet(kind)?, tol).0;
            let after = planarity(&other.section_jet(kind)?, tol).0;
            unchanged &= before == after;
        }
        gauge.push(GaugeSummary {
            alpha,
            n_error: (other.frame.n * alpha - f.n).norm_e(),
            d2_error: (other.pkg.d2[0][0] - alpha * alpha * pkg.d2[0][0]).abs(),
            verdicts_unchanged: unchanged,
        });
    }

    Ok(PointData {
        frame: *f,
        frame_residual,
        identity_residual,
        worst_identity,
        package: PackageSummary {
            d1: pkg.d1,
            d2: pkg.d2,
            e1: pkg.e1,
            eps1: pkg.eps1,
            rho1: pkg.rho1,
            rho2: pkg.rho2,
            u1: pkg.u1,
        },
        a_u_xi_residual: local.a_u_xi_residual(),
        degenerate,
        nondegenerate,
        plane_coefficients,
        gauge,
    })
}

fn max_over(points: &[&PointData], f: impl Fn(&PointData) -> f64) -> f64 {
    points.iter().map(|d| f(d)).fold(0.0, f64::max)
}

fn evaluate(check: Check, backend: Backend, tol: f64, data: &[&PointData], class: Option<&ClassReport>, cfg: &SurfaceConfig) -> CheckResult {
    let result = |passed: bool, worst: f64, detail: String| CheckResult {
        name: check.to_string(),
        backend,
        passed,
        worst,
        detail,
    };
    match check {
        Check::Frame => {
            let w = max_over(data, |d| d.frame_residual);
            result(w < tol, w, "largest frame inner-product residual".into())
        }
        Check::Identities => {
            let w = max_over(data, |d| d.identity_residual);
            let name = data.iter().max_by(|a, b| a.identity_residual.total_cmp(&b.identity_residual)).map_or("", |d| d.worst_identity);
            result(w < tol, w, format!("largest structural residual ({name})"))
        }
        Check::Planar(k) => {
            let w = max_over(data, |d| d.section(k).jet.planarity_residual);
            let bad = data.iter().filter(|d| !d.section(k).planar).count();
            result(bad == 0, w, format!("{bad} of {} points not planar", data.len()))
        }
        Check::Equivalence(k) => {
            let mut theorem = 0;
            let mut geodesic = 0;
            let mut mod_v = 0;
            for d in data {
                let s = d.section(k);
                if (s.theorem_residual < tol) != s.planar {
                    theorem += 1;
                }
                if s.jet.geodesic_arc && (s.geodesic_h_residual < tol) != s.planar {
                    geodesic += 1;
                }
                if let Some([t, g]) = s.mod_v {
                    if (t < tol) != s.planar || (s.jet.geodesic_arc && (g < tol) != s.planar) {
                        mod_v += 1;
                    }
                }
            }
            let note = if k == DirectionKind::Nondegenerate { format!("; {mod_v} with v wedged in") } else { String::new() };
            let w = max_over(data, |d| if d.section(k).planar { d.section(k).theorem_residual } else { 0.0 });
            result(
                theorem + geodesic == 0,
                w,
                format!("{theorem} theorem and {geodesic} geodesic-arc disagreements with the planarity verdict{note}"),
            )
        }
        Check::Agreement(k) => {
            let limit = match backend {
                Backend::Jet => AGREEMENT_TOL,
                Backend::Fd => tol.max(AGREEMENT_TOL),
            };
            let w = max_over(data, |d| d.section(k).trace.as_ref().map_or(f64::NAN, |t| t.agreement.max()));
            result(w < limit, w, format!("largest relative jet-vs-trace discrepancy (limit {limit:e})"))
        }
        Check::Gauge => {
            let scale = |d: &PointData| d.frame.n.norm_e().max(d.package.d2[0][0].abs()).max(1.0);
            let w = max_over(data, |d| d.gauge.iter().map(|g| g.n_error.max(g.d2_error) / scale(d)).fold(0.0, f64::max));
            let flipped = data.iter().filter(|d| d.gauge.iter().any(|g| !g.verdicts_unchanged)).count();
            result(w < tol && flipped == 0, w, format!("{flipped} points with a planarity verdict changed by rescaling xi"))
        }
        Check::Classify => {
            let Some(c) = class else {
                return result(false, f64::NAN, "classification failed".into());
            };
            let mut problems: Vec<String> = c.implication_violations(tol).into_iter().map(String::from).collect();
            if c.totally_geodesic.holds {
                if data.iter().any(|d| d.nondegenerate.planar && d.nondegenerate.jet.d_kappa_sq.abs() >= tol) {
                    problems.push("totally geodesic with planar sections => vertex".into());
                }
            }
            let e = &cfg.expect;
            let pairs = [
                ("totally_geodesic", e.totally_geodesic, c.totally_geodesic.holds),
                ("totally_umbilical", e.totally_umbilical, c.totally_umbilical.holds),
                ("minimal", e.minimal, c.minimal.holds),
                ("irrotational", e.irrotational, c.irrotational.holds),
                ("screen_conformal", e.screen_conformal, c.screen_conformal.holds()),
            ];
            for (name, want, got) in pairs {
                if let Some(want) = want {
                    if want != got {
                        problems.push(format!("{name} expected {want}, got {got}"));
                    }
                }
            }
            let detail = if problems.is_empty() { "expectations and implications hold".to_string() } else { problems.join("; ") };
            result(problems.is_empty(), problems.len() as f64, detail)
        }
    }
}

pub fn run(cfg: &SurfaceConfig, opts: &RunOptions) -> Result<Report, Error> {
    let choice = opts.backend.unwrap_or(cfg.backend);
    let sample = match opts.point {
        Some(p) => vec![p],
        None => cfg.sample(),
    };
    let tracing = opts.trace.is_some() || cfg.checks.iter().any(|c| matches!(c, Check::Agreement(_)));
    let mut tolerances = Vec::new();
    let mut points = Vec::new();
    let mut checks = Vec::new();
    let mut classifications = Vec::new();
    let mut first_error = None;

    for &backend in choice.backends() {
        let tol = opts.tol.unwrap_or(cfg.tol.for_backend(backend));
        tolerances.push((backend, tol));
        let mut ok = Vec::new();
        for &p in &sample {
            match point_data(cfg, p, backend, tol, tracing, opts.trace) {
                Ok(d) => {
                    points.push(PointEntry::ok(p, backend, d));
                    ok.push(points.len() - 1);
                }
                Err(e) => {
                    points.push(PointEntry::failed(p, backend, &e));
                    first_error.get_or_insert(e);
                }
            }
        }
        if ok.is_empty() {
            return Err(first_error.unwrap_or(Error::Config("empty sample".into())));
        }
        let data: Vec<&PointData> = ok.iter().filter_map(|&i| points[i].data.as_ref()).collect();
        let good: Vec<[f64; 2]> = ok.iter().map(|&i| points[i].point).collect();
        let class = if cfg.checks.contains(&Check::Classify) {
            let c = classify(&cfg.surface, &good, backend, tol).ok();
            if let Some(c) = &c {
                classifications.push((backend, c.clone()));
            }
            c
        } else {
            None
        };
        for &check in &cfg.checks {
            checks.push(evaluate(check, backend, tol, &data, class.as_ref(), cfg));
        }
    }

    let failed_points = points.iter().filter(|p| p.data.is_none()).count();
    Ok(Report::new(cfg, tolerances, checks, points, classifications, failed_points))
}
