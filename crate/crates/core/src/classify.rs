//! Region-level classification: totally geodesic / umbilical, minimal,
//! irrotational, screen conformal, plus the null sectional curvature and the
//! Gauss identity in its stated form.
//!
//! All predicates are evaluated on the frame basis `{ξ, v}` at every sample
//! point and the verdict is the worst case over the sample.

use serde::Serialize;

use crate::ambient::{AmbientMetric, Vec4};
use crate::error::Error;
use crate::forms::{decompose_point, induced_fields, InducedPackage};
use crate::frame::MovingFrame;
use crate::surface::{Backend, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub residual: f64,
}

impl Verdict {
    fn from_residual(residual: f64, tol: f64) -> Self {
        Verdict {
            holds: residual < tol,
            residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConformalKind {
    Conformal,
    /// Both `A_N` and `A*_ξ` vanish, so any `φ` works.
    IndeterminateTrue,
    NotConformal,
}

impl ConformalKind {
    pub fn holds(self) -> bool {
        self != ConformalKind::NotConformal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalPoint {
    pub kind: ConformalKind,
    pub phi: Option<f64>,
    pub residual: f64,
}

/// Package and frame at one sample point.
#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub point: [f64; 2],
    pub frame: MovingFrame,
    pub pkg: InducedPackage,
}

pub fn sample_points(s: &Surface, sample: &[[f64; 2]], backend: Backend) -> Result<Vec<SamplePoint>, Error> {
    sample
        .iter()
        .map(|&p| {
            let (field, jets) = induced_fields(s, p, backend, 1.0)?;
            Ok(SamplePoint {
                point: p,
                frame: field.value(),
                pkg: jets.value(),
            })
        })
        .collect()
}

fn worst(points: &[SamplePoint], f: impl Fn(&SamplePoint) -> f64) -> f64 {
    points.iter().map(f).fold(0.0, f64::max)
}

fn form_max(form: &[[f64; 2]; 2]) -> f64 {
    form.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// `max(‖D1‖ + ‖D2‖)` with entry-wise max norms on the frame basis.
pub fn geodesic_residual(pkg: &InducedPackage) -> f64 {
    form_max(&pkg.d1) + form_max(&pkg.d2)
}

/// Fit `h = Ź ḡ` with `Ź = λN + μu`. On the basis `{ξ, v}` only the `(v,v)`
/// slot carries `ḡ`, so `λ = ε_v D1(v,v)`, `μ = ε_v D2(v,v)` and the residual
/// is what remains in the `(ξ,ξ)` and `(ξ,v)` slots, relative to `max(1, |h|)`.
pub fn umbilical_fit(pkg: &InducedPackage) -> (f64, f64, f64) {
    let lambda = pkg.eps_v * pkg.d1[1][1];
    let mu = pkg.eps_v * pkg.d2[1][1];
    let mut r = 0.0f64;
    for form in [&pkg.d1, &pkg.d2] {
        r = r.max(form[0][0].abs()).max(form[0][1].abs()).max(form[1][0].abs());
    }
    let scale = form_max(&pkg.d1).max(form_max(&pkg.d2)).max(1.0);
    (lambda, mu, r / scale)
}

/// `D2(w,w)`, `ḡ(w,w)` and `H₂ = D2(w,w)/ḡ(w,w)` for an unnormalized
/// tangent vector `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UmbilicalTriple {
    pub d2: f64,
    pub norm: f64,
    pub h2: f64,
}

pub fn umbilical_triple(frame: &MovingFrame, pkg: &InducedPackage, g: &AmbientMetric, w: &Vec4, tol: f64) -> Result<UmbilicalTriple, Error> {
    let a = decompose_point(frame, w, g);
    let scale = w.norm_e().max(1.0);
    if a[2].abs().max(a[3].abs()) > tol * scale {
        return Err(Error::HypothesisNotMet(format!("w is not tangent (u: {:.3e}, N: {:.3e})", a[2], a[3])));
    }
    let c = [a[0], a[1]];
    let d2 = (0..2).map(|i| (0..2).map(|j| pkg.d2[i][j] * c[i] * c[j]).sum::<f64>()).sum::<f64>();
    let norm = g.inner(w, w);
    if norm.abs() <= tol * scale * scale {
        return Err(Error::HypothesisNotMet("w is null, H₂ is undefined".into()));
    }
    Ok(UmbilicalTriple { d2, norm, h2: d2 / norm })
}

/// Screen trace of `h` and both `ε1` values.
pub fn minimal_residual(pkg: &InducedPackage) -> f64 {
    let trace = (pkg.eps_v * pkg.d1[1][1]).abs().max((pkg.eps_v * pkg.d2[1][1]).abs());
    trace.max(pkg.eps1[0].abs()).max(pkg.eps1[1].abs())
}

/// `max |D2(X,ξ)|, |ε1(X)|` over `X ∈ {ξ, v}`.
pub fn irrotational_residual(pkg: &InducedPackage) -> f64 {
    (0..2).fold(0.0f64, |m, x| m.max(pkg.d2[x][0].abs()).max(pkg.eps1[x].abs()))
}

/// Transversal part of `∇̄_X ξ` directly: its `u` and `N` coefficients.
pub fn irrotational_direct(frame: &MovingFrame, pkg: &InducedPackage, g: &AmbientMetric) -> f64 {
    (0..2).fold(0.0f64, |m, x| {
        let a = decompose_point(frame, &pkg.dbar[x][0], g);
        m.max(a[2].abs()).max(a[3].abs())
    })
}

/// `A_N = φ A*_ξ` with `φ = ⟨A_N v, v⟩ / ⟨A*_ξ v, v⟩`.
pub fn conformal_point(pkg: &InducedPackage, tol: f64) -> ConformalPoint {
    let (an, astar) = (&pkg.a_n, &pkg.a_xi_star);
    if form_max(an) < tol && form_max(astar) < tol {
        return ConformalPoint {
            kind: ConformalKind::IndeterminateTrue,
            phi: None,
            residual: form_max(an).max(form_max(astar)),
        };
    }
    // ⟨A v, v⟩ = ε_v · (v-coefficient of A v); ε_v cancels in the ratio
    let denominator = astar[1][1];
    if denominator.abs() <= tol {
        return ConformalPoint {
            kind: ConformalKind::NotConformal,
            phi: None,
            residual: form_max(an),
        };
    }
    let phi = an[1][1] / denominator;
    let mut r = 0.0f64;
    for x in 0..2 {
        for y in 0..2 {
            r = r.max((an[x][y] - phi * astar[x][y]).abs());
        }
    }
    let kind = if r < tol && phi.abs() >= tol {
        ConformalKind::Conformal
    } else {
        ConformalKind::NotConformal
    };
    ConformalPoint {
        kind,
        phi: Some(phi),
        residual: r,
    }
}

/// `K_ξ(H) = ε[D2(v,ξ)D2(ξ,v) − D2(ξ,ξ)D2(v,v)]`.
pub fn null_sectional_curvature_of(pkg: &InducedPackage) -> f64 {
    let d = &pkg.d2;
    pkg.eps * (d[1][0] * d[0][1] - d[0][0] * d[1][1])
}

/// `φ[D1(X,Z)D1(Y,PW) − D1(Y,Z)D1(X,PW)] + ε[D2(X,Z)D2(Y,PW) − D2(Y,Z)D2(X,PW)]`
/// maximized over basis slots; `PW = v` since `Pξ = 0`. With `first = e1`
/// the `D1(·,PW)` factors become `E1(·,PW)` and `φ` is dropped.
fn gauss_bracket(pkg: &InducedPackage, phi: f64, first: Option<&[[f64; 2]; 2]>) -> f64 {
    let (d1, d2) = (&pkg.d1, &pkg.d2);
    let (coef, pw_form) = match first {
        Some(e1) => (1.0, e1),
        None => (phi, d1),
    };
    let mut r = 0.0f64;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                let a = coef * (d1[x][z] * pw_form[y][1] - d1[y][z] * pw_form[x][1]);
                let b = pkg.eps * (d2[x][z] * d2[y][1] - d2[y][z] * d2[x][1]);
                r = r.max((a + b).abs());
            }
        }
    }
    r
}

/// The Gauss identity in its stated form; requires screen conformality at the point.
pub fn gauss_identity_of(pkg: &InducedPackage, tol: f64) -> Result<f64, Error> {
    let c = conformal_point(pkg, tol);
    if !c.kind.holds() {
        return Err(Error::HypothesisNotMet("surface is not screen conformal at this point".into()));
    }
    Ok(gauss_bracket(pkg, c.phi.unwrap_or(0.0), None))
}

/// Same bracket with `E1` in place of `φ D1` in the second factor.
pub fn gauss_identity_e1_of(pkg: &InducedPackage) -> f64 {
    gauss_bracket(pkg, 0.0, Some(&pkg.e1))
}

pub fn totally_geodesic(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<Verdict, Error> {
    let pts = sample_points(s, sample, backend)?;
    Ok(Verdict::from_residual(worst(&pts, |q| geodesic_residual(&q.pkg)), tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UmbilicalVerdict {
    pub holds: bool,
    pub residual: f64,
    /// Per sample point, the `N` and `u` components of `Ź`.
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
}

fn umbilical_of(pts: &[SamplePoint], tol: f64) -> UmbilicalVerdict {
    let fits: Vec<_> = pts.iter().map(|q| umbilical_fit(&q.pkg)).collect();
    let residual = fits.iter().fold(0.0f64, |m, f| m.max(f.2));
    UmbilicalVerdict {
        holds: residual < tol,
        residual,
        lambda: fits.iter().map(|f| f.0).collect(),
        mu: fits.iter().map(|f| f.1).collect(),
    }
}

pub fn totally_umbilical(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<UmbilicalVerdict, Error> {
    Ok(umbilical_of(&sample_points(s, sample, backend)?, tol))
}

pub fn minimal(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<Verdict, Error> {
    let pts = sample_points(s, sample, backend)?;
    Ok(Verdict::from_residual(worst(&pts, |q| minimal_residual(&q.pkg)), tol))
}

pub fn irrotational(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<Verdict, Error> {
    let pts = sample_points(s, sample, backend)?;
    Ok(Verdict::from_residual(worst(&pts, |q| irrotational_residual(&q.pkg)), tol))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalVerdict {
    pub kind: ConformalKind,
    pub residual: f64,
    pub points: Vec<ConformalPoint>,
}

impl ConformalVerdict {
    pub fn holds(&self) -> bool {
        self.kind.holds()
    }
}

fn conformal_of(pts: &[SamplePoint], tol: f64) -> ConformalVerdict {
    let points: Vec<_> = pts.iter().map(|q| conformal_point(&q.pkg, tol)).collect();
    let kind = if points.iter().any(|c| c.kind == ConformalKind::NotConformal) {
        ConformalKind::NotConformal
    } else if points.iter().all(|c| c.kind == ConformalKind::IndeterminateTrue) {
        ConformalKind::IndeterminateTrue
    } else {
        ConformalKind::Conformal
    };
    ConformalVerdict {
        kind,
        residual: points.iter().fold(0.0f64, |m, c| m.max(c.residual)),
        points,
    }
}

pub fn screen_conformal(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<ConformalVerdict, Error> {
    Ok(conformal_of(&sample_points(s, sample, backend)?, tol))
}

pub fn null_sectional_curvature(s: &Surface, p: [f64; 2]) -> Result<f64, Error> {
    let (_, jets) = induced_fields(s, p, Backend::Jet, 1.0)?;
    Ok(null_sectional_curvature_of(&jets.value()))
}

pub fn gauss_identity_residual(s: &Surface, p: [f64; 2], tol: f64) -> Result<f64, Error> {
    let (_, jets) = induced_fields(s, p, Backend::Jet, 1.0)?;
    gauss_identity_of(&jets.value(), tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub points: Vec<[f64; 2]>,
    pub totally_geodesic: Verdict,
    pub totally_umbilical: UmbilicalVerdict,
    pub minimal: Verdict,
    pub irrotational: Verdict,
    /// Same predicate from the transversal part of `∇̄_X ξ`.
    pub irrotational_direct: Verdict,
    pub screen_conformal: ConformalVerdict,
    pub null_sectional_curvature: Vec<f64>,
    /// Stated Gauss identity per point; `None` where the hypothesis fails.
    pub gauss_identity: Vec<Option<f64>>,
    pub gauss_identity_e1: Vec<f64>,
}

impl ClassReport {
    /// Broken implications: geodesic ⇒ umbilical, and
    /// minimal ∧ screen conformal ⇒ `K_ξ(H) = 0`.
    pub fn implication_violations(&self, tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.totally_geodesic.holds && !self.totally_umbilical.holds {
            out.push("totally geodesic => totally umbilical");
        }
        let u = &self.totally_umbilical;
        if self.totally_geodesic.holds && u.lambda.iter().chain(&u.mu).any(|z| z.abs() >= tol) {
            out.push("totally geodesic => umbilical fit is zero");
        }
        if self.minimal.holds && self.screen_conformal.holds() && self.null_sectional_curvature.iter().any(|k| k.abs() >= tol) {
            out.push("minimal and screen conformal => K = 0");
        }
        if self.irrotational.holds != self.irrotational_direct.holds {
            out.push("irrotational via forms <=> tangency of nabla xi");
        }
        out
    }
}

pub fn classify(s: &Surface, sample: &[[f64; 2]], backend: Backend, tol: f64) -> Result<ClassReport, Error> {
    let pts = sample_points(s, sample, backend)?;
    let g = &s.metric;
    Ok(ClassReport {
        points: sample.to_vec(),
        totally_geodesic: Verdict::from_residual(worst(&pts, |q| geodesic_residual(&q.pkg)), tol),
        totally_umbilical: umbilical_of(&pts, tol),
        minimal: Verdict::from_residual(worst(&pts, |q| minimal_residual(&q.pkg)), tol),
        irrotational: Verdict::from_residual(worst(&pts, |q| irrotational_residual(&q.pkg)), tol),
        irrotational_direct: Verdict::from_residual(worst(&pts, |q| irrotational_direct(&q.frame, &q.pkg, g)), tol),
        screen_conformal: conformal_of(&pts, tol),
        null_sectional_curvature: pts.iter().map(|q| null_sectional_curvature_of(&q.pkg)).collect(),
        gauss_identity: pts.iter().map(|q| gauss_identity_of(&q.pkg, tol).ok()).collect(),
        gauss_identity_e1: pts.iter().map(|q| gauss_identity_e1_of(&q.pkg)).collect(),
    })
}
