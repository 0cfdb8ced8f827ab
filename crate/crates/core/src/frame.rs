//! The quasi-orthonormal frame `{ξ, v, u, N}` of a half-lightlike surface.
//!
//! Construction is generic over [`Scalar`]: run on jets it yields frame
//! *fields* whose derivatives feed the fundamental forms.

use serde::Serialize;

use crate::ambient::{relative_wedge2_residual, triple_wedge, AmbientMetric, Vec4};
use crate::error::Error;
use crate::exprjet::{ImmersionJet, Jet, Scalar};

/// Relative threshold under which `g(V, ξ)` counts as zero in the
/// transversal construction.
pub const TRANSVERSAL_TOL: f64 = 1e-8;

/// Absolute tolerance for pinned frame vectors.
pub const PIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    HalfLightlike,
    NonDegenerate,
    CoIsotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InducedMetric {
    /// `g_ij = ḡ(X_i, X_j)` on the coordinate tangents.
    pub matrix: [[f64; 2]; 2],
    pub eigenvalues: [f64; 2],
    pub kind: StructureKind,
}

fn symmetric_eigenvalues(m: [[f64; 2]; 2]) -> [f64; 2] {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let half_diff = 0.5 * (m[0][0] - m[1][1]);
    let r = half_diff.hypot(m[0][1]);
    [mean - r, mean + r]
}

pub fn induced_metric(jet: &ImmersionJet, g: &AmbientMetric) -> InducedMetric {
    let [x1, x2] = jet.tangents();
    let matrix = [[g.inner(&x1, &x1), g.inner(&x1, &x2)], [g.inner(&x2, &x1), g.inner(&x2, &x2)]];
    let eigenvalues = symmetric_eigenvalues(matrix);
    let scale = matrix.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
    let tau = 1e-9 * scale;
    let rank = eigenvalues.iter().filter(|l| l.abs() > tau).count();
    let kind = match rank {
        0 => StructureKind::CoIsotropic,
        1 => StructureKind::HalfLightlike,
        _ => StructureKind::NonDegenerate,
    };
    InducedMetric {
        matrix,
        eigenvalues,
        kind,
    }
}

/// Kernel coefficients `c` with `ξ = c^1 X_1 + c^2 X_2`, scaled so the
/// largest-magnitude entry is `+1`.
fn kernel_coefficients<S: Scalar>(gm: &[[S; 2]; 2]) -> [S; 2] {
    let a = [-gm[0][1].clone(), gm[0][0].clone()];
    let b = [gm[1][1].clone(), -gm[0][1].clone()];
    let norm = |c: &[S; 2]| c[0].value().hypot(c[1].value());
    let c = if norm(&a) >= norm(&b) { a } else { b };
    let k = if c[0].value().abs() >= c[1].value().abs() { 0 } else { 1 };
    let lead = c[k].clone();
    [c[0].clone() / lead.clone(), c[1].clone() / lead]
}

fn combine<S: Scalar>(c: &[S; 2], x: &[Vec4<S>; 2]) -> Vec4<S> {
    x[0].scale(&c[0]) + x[1].scale(&c[1])
}

fn check_structure<S: Scalar>(tangents: &[Vec4<S>; 2], g: &AmbientMetric) -> Result<[[S; 2]; 2], Error> {
    let gm = [
        [g.inner(&tangents[0], &tangents[0]), g.inner(&tangents[0], &tangents[1])],
        [g.inner(&tangents[1], &tangents[0]), g.inner(&tangents[1], &tangents[1])],
    ];
    let values = [[gm[0][0].value(), gm[0][1].value()], [gm[1][0].value(), gm[1][1].value()]];
    let scale = values.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
    let rank = symmetric_eigenvalues(values).iter().filter(|l| l.abs() > 1e-9 * scale).count();
    match rank {
        0 => Err(Error::CoIsotropic),
        1 => Ok(gm),
        _ => Err(Error::NotLightlike),
    }
}

/// Null tangent vector spanning the radical of the induced metric.
pub fn radical_direction(jet: &ImmersionJet, g: &AmbientMetric) -> Result<Vec4, Error> {
    let x = jet.tangents();
    let gm = check_structure(&x, g)?;
    Ok(combine(&kernel_coefficients(&gm), &x))
}

/// The unique null `N` with `ḡ(N, ξ) = 1` built from a transversal `V`.
pub fn transversal_n<S: Scalar>(v: &Vec4<S>, xi: &Vec4<S>, g: &AmbientMetric) -> Result<Vec4<S>, Error> {
    let gvx = g.inner(v, xi);
    let (vv, xx) = (v.value(), xi.value());
    if gvx.value().abs() <= TRANSVERSAL_TOL * vv.norm_e() * xx.norm_e() {
        return Err(Error::TransversalNotFound);
    }
    let gvv = g.inner(v, v);
    let shift = gvv / (gvx.clone() * 2.0);
    Ok((v.clone() - xi.scale(&shift)).scale(&gvx.recip()))
}

/// Frame vectors given by the caller, already evaluated as fields.
#[derive(Debug, Clone, Default)]
pub struct PinFields<S> {
    pub xi: Option<Vec4<S>>,
    pub v: Option<Vec4<S>>,
    pub u: Option<Vec4<S>>,
    pub n: Option<Vec4<S>>,
}

impl<S> PinFields<S> {
    pub fn none() -> Self {
        PinFields {
            xi: None,
            v: None,
            u: None,
            n: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_none() && self.v.is_none() && self.u.is_none() && self.n.is_none()
    }
}

/// Frame vectors as fields over a neighbourhood of the base point, plus the
/// parameter-space directions realizing `ξ` and `v`.
#[derive(Debug, Clone)]
pub struct FrameField<S = Jet> {
    pub xi: Vec4<S>,
    pub v: Vec4<S>,
    pub u: Vec4<S>,
    pub n: Vec4<S>,
    pub eps: f64,
    pub eps_v: f64,
    pub gauge: f64,
    /// `ξ = xi_dir[0] X_1 + xi_dir[1] X_2`.
    pub xi_dir: [S; 2],
    pub v_dir: [S; 2],
}

/// Point values of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MovingFrame {
    pub xi: Vec4,
    pub v: Vec4,
    pub u: Vec4,
    pub n: Vec4,
    /// `ḡ(u, u)`.
    pub eps: f64,
    /// `ḡ(v, v)`.
    pub eps_v: f64,
    /// Accumulated rescaling `ξ → αξ`.
    pub gauge: f64,
    pub xi_dir: [f64; 2],
    pub v_dir: [f64; 2],
}

impl<S: Scalar> FrameField<S> {
    pub fn value(&self) -> MovingFrame {
        MovingFrame {
            xi: self.xi.value(),
            v: self.v.value(),
            u: self.u.value(),
            n: self.n.value(),
            eps: self.eps,
            eps_v: self.eps_v,
            gauge: self.gauge,
            xi_dir: [self.xi_dir[0].value(), self.xi_dir[1].value()],
            v_dir: [self.v_dir[0].value(), self.v_dir[1].value()],
        }
    }

    /// `ξ → αξ`, `N → N/α`.
    pub fn gauge_transform(&self, alpha: f64) -> Result<Self, Error> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::ZeroGauge);
        }
        let mut f = self.clone();
        f.xi = f.xi * alpha;
        f.n = f.n * (1.0 / alpha);
        f.xi_dir = [f.xi_dir[0].clone() * alpha, f.xi_dir[1].clone() * alpha];
        f.gauge *= alpha;
        Ok(f)
    }
}

pub fn gauge_transform(frame: &MovingFrame, alpha: f64) -> Result<MovingFrame, Error> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::ZeroGauge);
    }
    Ok(MovingFrame {
        xi: frame.xi * alpha,
        n: frame.n * (1.0 / alpha),
        xi_dir: [frame.xi_dir[0] * alpha, frame.xi_dir[1] * alpha],
        gauge: frame.gauge * alpha,
        ..*frame
    })
}

fn sign_of(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Coefficients of the Euclidean least-squares fit `w ≈ c^i X_i`.
fn tangent_coefficients<S: Scalar>(w: &Vec4<S>, x: &[Vec4<S>; 2]) -> [S; 2] {
    let (a, b, c) = (x[0].dot_e(&x[0]), x[0].dot_e(&x[1]), x[1].dot_e(&x[1]));
    let (r0, r1) = (x[0].dot_e(w), x[1].dot_e(w));
    let det = a.clone() * c.clone() - b.clone() * b.clone();
    [
        (c * r0.clone() - b.clone() * r1.clone()) / det.clone(),
        (a * r1 - b * r0) / det,
    ]
}

fn tangency_residual<S: Scalar>(w: &Vec4<S>, x: &[Vec4<S>; 2]) -> f64 {
    let c = tangent_coefficients(w, x);
    let fit = combine(&c, x).value();
    let w = w.value();
    (w - fit).norm_e() / w.norm_e().max(f64::MIN_POSITIVE)
}

fn unit<S: Scalar>(w: &Vec4<S>, g: &AmbientMetric) -> (Vec4<S>, f64) {
    let n = g.norm_sq(w);
    let s = sign_of(n.value());
    let len = (n * s).sqrt();
    (w.scale(&len.recip()), s)
}

/// Build the frame field from order-2 tangent fields.
pub fn frame_field<S: Scalar>(tangents: &[Vec4<S>; 2], g: &AmbientMetric, pins: &PinFields<S>) -> Result<FrameField<S>, Error> {
    let x = tangents;
    let gm = check_structure(x, g)?;
    let pin_error = |field: &'static str, relation: &str, residual: f64| Error::PinViolation {
        field,
        relation: relation.to_string(),
        residual,
    };

    let (xi, xi_dir) = match &pins.xi {
        Some(xi) => {
            let r = tangency_residual(xi, x);
            if r > PIN_TOL {
                return Err(pin_error("xi", "xi tangent to M", r));
            }
            (xi.clone(), tangent_coefficients(xi, x))
        }
        None => {
            let c = kernel_coefficients(&gm);
            (combine(&c, x), c)
        }
    };
    let xv = xi.value();

    let (v, v_dir, eps_v) = match &pins.v {
        Some(v) => {
            let r = tangency_residual(v, x);
            if r > PIN_TOL {
                return Err(pin_error("v", "v tangent to M", r));
            }
            let nv = g.norm_sq(v).value();
            if nv.abs() <= PIN_TOL * v.value().norm_e().powi(2) {
                return Err(pin_error("v", "g(v,v) != 0", nv));
            }
            let (v, eps_v) = unit(v, g);
            let dir = tangent_coefficients(&v, x);
            (v, dir, eps_v)
        }
        None => {
            let par = |k: usize| relative_wedge2_residual(&x[k].value(), &xv);
            let k = if par(0) >= par(1) { 0 } else { 1 };
            let (mut v, eps_v) = unit(&x[k], g);
            let vv = v.value();
            let lead = vv.0.iter().copied().find(|c| c.abs() > 1e-12 * vv.max_abs()).unwrap_or(1.0);
            let sign = sign_of(lead);
            v = v * sign;
            let scale = (g.norm_sq(&x[k]) * eps_v).sqrt().recip() * sign;
            let mut dir = [S::zero(), S::zero()];
            dir[k] = scale;
            (v, dir, eps_v)
        }
    };

    let (u, eps) = match &pins.u {
        Some(u) => {
            for (i, xi_) in x.iter().enumerate() {
                let r = g.inner(u, xi_).value();
                if r.abs() > PIN_TOL * u.value().norm_e() * xi_.value().norm_e() {
                    let rel = if i == 0 { "g(u,X_1) = 0" } else { "g(u,X_2) = 0" };
                    return Err(pin_error("u", rel, r));
                }
            }
            let nu = g.norm_sq(u).value();
            if nu.abs() <= PIN_TOL * u.value().norm_e().powi(2) {
                return Err(pin_error("u", "g(u,u) != 0", nu));
            }
            unit(u, g)
        }
        None => {
            let w = triple_wedge(&g.lower(&x[0]), &g.lower(&x[1]), &xi);
            let (u, eps) = unit(&w, g);
            let uv = u.value();
            let k = (0..4).fold(0, |best, i| if uv[i].abs() > uv[best].abs() { i } else { best });
            (u * sign_of(uv[k]), eps)
        }
    };

    let n = match &pins.n {
        Some(n) => n.clone(),
        None => {
            let (gv, gu) = (g.lower(&v), g.lower(&u));
            let mut best: Option<(f64, Vec4<S>)> = None;
            for k in 0..4 {
                let cand = triple_wedge(&gv, &gu, &Vec4::from_f64(Vec4::basis(k).0));
                let cv = cand.value();
                let score = g.inner(&cv, &xv).abs() / cv.norm_e().max(f64::MIN_POSITIVE);
                if best.as_ref().map_or(true, |(s, _)| score > *s) {
                    best = Some((score, cand));
                }
            }
            let (_, big_v) = best.expect("four candidates");
            transversal_n(&big_v, &xi, g)?
        }
    };

    let field = FrameField {
        xi,
        v,
        u,
        n,
        eps,
        eps_v,
        gauge: 1.0,
        xi_dir,
        v_dir,
    };
    if !pins.is_empty() {
        validate_pins(&field.value(), g, pins)?;
    }
    Ok(field)
}

fn validate_pins<S>(frame: &MovingFrame, g: &AmbientMetric, pins: &PinFields<S>) -> Result<(), Error> {
    for (relation, residual) in frame_residuals(frame, g) {
        if residual > PIN_TOL {
            let blame = ["n", "u", "v", "xi"]
                .into_iter()
                .find(|f| {
                    let pinned = match *f {
                        "n" => pins.n.is_some(),
                        "u" => pins.u.is_some(),
                        "v" => pins.v.is_some(),
                        _ => pins.xi.is_some(),
                    };
                    pinned && relation.contains(if *f == "n" { "N" } else { f })
                })
                .unwrap_or(if pins.xi.is_some() { "xi" } else { "n" });
            return Err(Error::PinViolation {
                field: blame,
                relation: relation.to_string(),
                residual,
            });
        }
    }
    Ok(())
}

/// The frame's inner-product relations as `(relation, |residual|)`.
pub fn frame_residuals(f: &MovingFrame, g: &AmbientMetric) -> Vec<(&'static str, f64)> {
    let ip = |a: &Vec4, b: &Vec4| g.inner(a, b);
    vec![
        ("g(xi,xi) = 0", ip(&f.xi, &f.xi).abs()),
        ("g(N,N) = 0", ip(&f.n, &f.n).abs()),
        ("g(N,xi) = 1", (ip(&f.n, &f.xi) - 1.0).abs()),
        ("g(N,u) = 0", ip(&f.n, &f.u).abs()),
        ("g(u,u) = eps", (ip(&f.u, &f.u) - f.eps).abs()),
        ("g(u,xi) = 0", ip(&f.u, &f.xi).abs()),
        ("g(u,v) = 0", ip(&f.u, &f.v).abs()),
        ("g(v,v) = eps_v", (ip(&f.v, &f.v) - f.eps_v).abs()),
        ("g(v,xi) = 0", ip(&f.v, &f.xi).abs()),
        ("g(v,N) = 0", ip(&f.v, &f.n).abs()),
    ]
}

/// Point frame from an immersion jet.
pub fn build_frame(jet: &ImmersionJet, g: &AmbientMetric, pins: &PinFields<Jet>) -> Result<MovingFrame, Error> {
    Ok(frame_field(&jet.tangent_fields(), g, pins)?.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprjet::{immersion_jet, Immersion};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const S2: f64 = std::f64::consts::SQRT_2;

    fn ex1() -> Immersion {
        Immersion::graph(
            [1, 2],
            [(3, "(x1 + x2)/sqrt(2)"), (4, "0.5*log(1 + (x1 - x2)^2)")],
            [[-1.0, 1.0], [-1.0, 1.0]],
        )
        .unwrap()
    }

    fn r41() -> Immersion {
        Immersion::graph([1, 4], [(3, "x1"), (2, "sqrt(1 - x4^2)")], [[-1.0, 1.0], [-0.6, 0.6]]).unwrap()
    }

    fn parallel(a: &Vec4, b: &Vec4) -> bool {
        relative_wedge2_residual(a, b) < 1e-12
    }

    #[test]
    fn ex1_induced_metric_has_rank_one() {
        let j = immersion_jet(&ex1(), [0.0, 0.0]).unwrap();
        let m = induced_metric(&j, &AmbientMetric::r42());
        assert_eq!(m.kind, StructureKind::HalfLightlike);
        assert_abs_diff_eq!(m.matrix[0][0] * m.matrix[1][1] - m.matrix[0][1].powi(2), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn spacelike_plane_is_non_degenerate() {
        let m = Immersion::parametric(["u1", "u2", "0", "0"], [[0.0, 1.0], [0.0, 1.0]]).unwrap();
        let j = immersion_jet(&m, [0.5, 0.5]).unwrap();
        let im = induced_metric(&j, &AmbientMetric::r42());
        assert_eq!(im.kind, StructureKind::NonDegenerate);
        assert_eq!(im.matrix, [[-1.0, 0.0], [0.0, -1.0]]);
        assert!(matches!(radical_direction(&j, &AmbientMetric::r42()), Err(Error::NotLightlike)));
    }

    #[test]
    fn totally_null_plane_is_co_isotropic() {
        let m = Immersion::parametric(["u1", "u2", "u1", "u2"], [[0.0, 1.0], [0.0, 1.0]]).unwrap();
        let j = immersion_jet(&m, [0.5, 0.5]).unwrap();
        assert_eq!(induced_metric(&j, &AmbientMetric::r42()).kind, StructureKind::CoIsotropic);
        assert!(matches!(radical_direction(&j, &AmbientMetric::r42()), Err(Error::CoIsotropic)));
    }

    #[test]
    fn radical_directions_of_the_examples() {
        let j = immersion_jet(&ex1(), [0.3, -0.1]).unwrap();
        let xi = radical_direction(&j, &AmbientMetric::r42()).unwrap();
        assert!(parallel(&xi, &Vec4::new(1.0, 1.0, S2, 0.0)));
        let j = immersion_jet(&r41(), [0.2, 0.5]).unwrap();
        let m = induced_metric(&j, &AmbientMetric::r41());
        assert_eq!(m.kind, StructureKind::HalfLightlike);
        let xi = radical_direction(&j, &AmbientMetric::r41()).unwrap();
        assert!(parallel(&xi, &Vec4::new(1.0, 0.0, 1.0, 0.0)));
    }

    #[test]
    fn transversal_for_ex1() {
        let g = AmbientMetric::r42();
        let xi = Vec4::new(1.0, 1.0, S2, 0.0);
        // any V with g(V, xi) != 0 that is g-orthogonal to the screen and u
        let v = Vec4::new(-1.0, 1.0, S2, 0.0);
        let n = transversal_n(&v, &xi, &g).unwrap();
        let want = [-0.5, 0.5, 1.0 / S2, 0.0];
        for k in 0..4 {
            assert_abs_diff_eq!(n[k], want[k], epsilon = 1e-15);
        }
        assert!(matches!(transversal_n(&xi, &xi, &g), Err(Error::TransversalNotFound)));
    }

    #[test]
    fn transversal_for_r41() {
        let g = AmbientMetric::r41();
        let xi = Vec4::new(1.0, 0.0, 1.0, 0.0);
        let n = transversal_n(&Vec4::new(-1.0, 0.0, 1.0, 0.0), &xi, &g).unwrap();
        assert_eq!(n.0, [-0.5, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn auto_frame_on_ex1_at_origin() {
        let g = AmbientMetric::r42();
        let j = immersion_jet(&ex1(), [0.0, 0.0]).unwrap();
        let f = build_frame(&j, &g, &PinFields::none()).unwrap();
        assert_eq!(f.eps, 1.0);
        assert_eq!(f.eps_v, -1.0);
        for (rel, r) in frame_residuals(&f, &g) {
            assert!(r < 1e-12, "{rel}: {r}");
        }
    }

    #[test]
    fn gauge_rescales_xi_and_n() {
        let g = AmbientMetric::r42();
        let j = immersion_jet(&ex1(), [0.2, 0.1]).unwrap();
        let f = build_frame(&j, &g, &PinFields::none()).unwrap();
        assert_eq!(gauge_transform(&f, 1.0).unwrap(), f);
        let h = gauge_transform(&f, 2.0).unwrap();
        for k in 0..4 {
            assert_abs_diff_eq!(h.n[k], 0.5 * f.n[k], epsilon = 1e-15);
        }
        let h = gauge_transform(&f, -3.0).unwrap();
        assert_abs_diff_eq!(g.inner(&h.n, &h.xi), 1.0, epsilon = 1e-14);
        assert!(matches!(gauge_transform(&f, 0.0), Err(Error::ZeroGauge)));
    }

    #[test]
    fn bad_pin_names_the_relation() {
        let g = AmbientMetric::r42();
        let j = immersion_jet(&ex1(), [0.0, 0.0]).unwrap();
        // a tangent vector that is not null
        let pins = PinFields {
            xi: Some(Vec4::from_f64([1.0, 0.0, 1.0 / S2, 0.0])),
            ..PinFields::none()
        };
        match build_frame(&j, &g, &pins) {
            Err(Error::PinViolation { field, .. }) => assert_eq!(field, "xi"),
            other => panic!("unexpected {other:?}"),
        }
        let pins = PinFields {
            u: Some(Vec4::from_f64([0.0, 0.0, 1.0, 0.0])),
            ..PinFields::none()
        };
        match build_frame(&j, &g, &pins) {
            Err(Error::PinViolation { field, relation, .. }) => {
                assert_eq!(field, "u");
                assert!(relation.starts_with("g(u,X_"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn frame_field_derivatives_match_pointwise_differences() {
        let g = AmbientMetric::r42();
        let m = ex1();
        let p = [0.3, -0.2];
        let field = frame_field(&immersion_jet(&m, p).unwrap().tangent_fields(), &g, &PinFields::none()).unwrap();
        let h = 1e-4;
        for i in 0..2 {
            let mut q = p;
            q[i] += h;
            let plus = build_frame(&immersion_jet(&m, q).unwrap(), &g, &PinFields::none()).unwrap();
            q[i] -= 2.0 * h;
            let minus = build_frame(&immersion_jet(&m, q).unwrap(), &g, &PinFields::none()).unwrap();
            let pairs = [(&field.xi, plus.xi, minus.xi), (&field.v, plus.v, minus.v), (&field.u, plus.u, minus.u), (&field.n, plus.n, minus.n)];
            for (f, a, b) in pairs {
                for k in 0..4 {
                    let fd = (a[k] - b[k]) / (2.0 * h);
                    let jet = f[k].partial(i).unwrap().value();
                    assert!((fd - jet).abs() < 1e-5, "component {k} along u{}: {fd} vs {jet}", i + 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn transversal_relations_hold(
            v in proptest::array::uniform4(-2.0f64..2.0),
            a in -2.0f64..2.0, b in -2.0f64..2.0,
        ) {
            let g = AmbientMetric::r42();
            // null vectors in R^4_2: (cos a, sin a, cos b, sin b) scaled
            let xi = Vec4::new(a.cos(), a.sin(), b.cos(), b.sin());
            let v = Vec4(v);
            prop_assume!(g.inner(&v, &xi).abs() > 0.1);
            let n = transversal_n(&v, &xi, &g).unwrap();
            prop_assert!((g.inner(&n, &xi) - 1.0).abs() < 1e-12);
            prop_assert!(g.inner(&n, &n).abs() < 1e-14 * n.norm_e().powi(2).max(1.0), "{:e}", g.inner(&n, &n));
        }
    }
}
