//! Normal-section jets in the radical (`ξ`) and screen (`v`) directions,
//! the planarity test, and the residuals of the characterizing theorems.

use serde::Serialize;

use crate::ambient::{inner, relative_wedge2_residual, relative_wedge_residual, AmbientMetric, Vec4};
use crate::error::Error;
use crate::exprjet::Jet;
use crate::forms::{induced_fields, InducedPackage};
use crate::frame::{FrameField, MovingFrame};
use crate::surface::{Backend, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionKind {
    Degenerate,
    Nondegenerate,
}

impl DirectionKind {
    pub const BOTH: [DirectionKind; 2] = [DirectionKind::Degenerate, DirectionKind::Nondegenerate];

    pub fn name(self) -> &'static str {
        match self {
            DirectionKind::Degenerate => "degenerate",
            DirectionKind::Nondegenerate => "nondegenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionJet {
    pub direction_kind: DirectionKind,
    pub d1: Vec4,
    pub d2: Vec4,
    pub d3: Vec4,
    /// `⟨γ″, γ″⟩`, i.e. `εκ²`.
    pub kappa_sq: f64,
    /// `d(εκ²)/ds = 2⟨γ‴, γ″⟩`.
    pub d_kappa_sq: f64,
    pub planarity_residual: f64,
    /// `∇_ξ ξ = 0` (resp. `∇*_v v = 0`) within tolerance.
    pub geodesic_arc: bool,
}

/// `(planar, residual)`.
pub fn planarity(jet: &SectionJet, tol: f64) -> (bool, f64) {
    let r = relative_wedge_residual(&jet.d1, &jet.d2, &jet.d3);
    (r < tol, r)
}

fn chop(w: Vec4, limit: f64) -> Vec4 {
    if w.norm_e() < limit {
        Vec4::zero()
    } else {
        w
    }
}

/// Everything needed for section computations at one point: the frame and
/// induced package as order-1 jets plus their point values.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub metric: AmbientMetric,
    pub backend: Backend,
    pub field: FrameField<Jet>,
    pub jets: InducedPackage<Jet>,
    pub frame: MovingFrame,
    pub pkg: InducedPackage,
}

impl LocalGeometry {
    pub fn at(s: &Surface, p: [f64; 2], backend: Backend) -> Result<Self, Error> {
        Self::gauged(s, p, backend, 1.0)
    }

    /// Same, after rescaling `ξ → αξ`.
    pub fn gauged(s: &Surface, p: [f64; 2], backend: Backend, alpha: f64) -> Result<Self, Error> {
        let (field, jets) = induced_fields(s, p, backend, alpha)?;
        Ok(LocalGeometry {
            metric: s.metric,
            backend,
            frame: field.value(),
            pkg: jets.value(),
            field,
            jets,
        })
    }

    fn dirs(&self) -> [&[Jet; 2]; 2] {
        [&self.field.xi_dir, &self.field.v_dir]
    }

    /// Derivative of a scalar field along `e_x`.
    pub fn along(&self, q: &Jet, x: usize) -> Result<f64, Error> {
        q.directional(self.dirs()[x])
            .map(|j| j.value())
            .ok_or(Error::JetOrderExhausted("package derivative"))
    }

    fn basis(&self) -> [Vec4; 2] {
        [self.frame.xi, self.frame.v]
    }

    fn op(&self, m: &[[f64; 2]; 2], x: usize) -> Vec4 {
        let b = self.basis();
        b[0] * m[x][0] + b[1] * m[x][1]
    }

    /// `∇_{e_x} e_y`.
    pub fn nabla(&self, x: usize, y: usize) -> Vec4 {
        let [a, b] = self.pkg.gamma[x][y];
        self.frame.xi * a + self.frame.v * b
    }

    /// `h(e_y, e_z) = D1 N + D2 u`.
    pub fn h(&self, y: usize, z: usize) -> Vec4 {
        self.frame.n * self.pkg.d1[y][z] + self.frame.u * self.pkg.d2[y][z]
    }

    fn chop_limit(&self, x: usize, power: i32) -> f64 {
        self.backend.chop() * self.basis()[x].norm_e().powi(power)
    }

    fn finish(&self, kind: DirectionKind, d1: Vec4, d2: Vec4, d3: Vec4, geodesic: Vec4) -> SectionJet {
        let x = if kind == DirectionKind::Degenerate { 0 } else { 1 };
        let d2 = chop(d2, self.chop_limit(x, 2));
        let d3 = chop(d3, self.chop_limit(x, 3));
        let g = &self.metric;
        SectionJet {
            direction_kind: kind,
            d1,
            d2,
            d3,
            kappa_sq: inner(g, &d2, &d2),
            d_kappa_sq: 2.0 * inner(g, &d3, &d2),
            planarity_residual: relative_wedge_residual(&d1, &d2, &d3),
            geodesic_arc: geodesic.norm_e() < self.backend.default_tol() * d1.norm_e(),
        }
    }

    /// `γ′ = ξ`, `γ″ = ∇_ξ ξ + D2(ξ,ξ) u`, and `γ‴` term by term:
    /// `∇_ξ∇_ξ ξ + D2(∇_ξ ξ, ξ) u + ξ(D2(ξ,ξ)) u + D2(ξ,ξ)(−A_u ξ + ε1(ξ) N)`.
    pub fn degenerate_jet(&self) -> Result<SectionJet, Error> {
        let (f, p, j) = (&self.frame, &self.pkg, &self.jets);
        let [gx, gv] = p.gamma[0][0];
        let nabla_xi_xi = self.nabla(0, 0);
        let d2_xx = p.d2[0][0];
        let d2 = nabla_xi_xi + f.u * d2_xx;

        let nabla_nabla = f.xi * self.along(&j.gamma[0][0][0], 0)?
            + f.v * self.along(&j.gamma[0][0][1], 0)?
            + nabla_xi_xi * gx
            + self.nabla(0, 1) * gv;
        let d2_of_nabla = f.u * (gx * p.d2[0][0] + gv * p.d2[1][0]);
        let derivative = f.u * self.along(&j.d2[0][0], 0)?;
        let shape = (self.op(&p.a_u, 0) * -1.0 + f.n * p.eps1[0]) * d2_xx;
        let d3 = nabla_nabla + d2_of_nabla + derivative + shape;
        Ok(self.finish(DirectionKind::Degenerate, f.xi, d2, d3, nabla_xi_xi))
    }

    /// `γ′ = v`, `γ″ = ∇*_v v + E1(v,v) ξ + D1(v,v) N + D2(v,v) u`, and the
    /// fifteen-term `γ‴`.
    pub fn nondegenerate_jet(&self) -> Result<SectionJet, Error> {
        let (f, p, j) = (&self.frame, &self.pkg, &self.jets);
        let star = p.nabla_star_v[1];
        let (e, d1v, d2v) = (p.e1[1][1], p.d1[1][1], p.d2[1][1]);
        let star_v = f.v * star;
        let d2 = star_v + f.xi * e + f.n * d1v + f.u * d2v;

        let terms = [
            // ∇*_v ∇*_v v
            f.v * (self.along(&j.nabla_star_v[1], 1)? + star * star),
            f.xi * (e * star),
            f.n * (d1v * star),
            f.u * (d2v * star),
            f.xi * self.along(&j.e1[1][1], 1)?,
            f.n * self.along(&j.d1[1][1], 1)?,
            f.u * self.along(&j.d2[1][1], 1)?,
            self.op(&p.a_xi_star, 1) * -e,
            f.xi * (e * p.u1[1]),
            f.u * (e * p.d2[1][0]),
            self.op(&p.a_n, 1) * -d1v,
            f.n * (d1v * p.rho1[1]),
            f.u * (d1v * p.rho2[1]),
            self.op(&p.a_u, 1) * -d2v,
            f.n * (d2v * p.eps1[1]),
        ];
        let d3 = terms.iter().fold(Vec4::zero(), |acc, t| acc + *t);
        Ok(self.finish(DirectionKind::Nondegenerate, f.v, d2, d3, star_v))
    }

    pub fn section_jet(&self, kind: DirectionKind) -> Result<SectionJet, Error> {
        match kind {
            DirectionKind::Degenerate => self.degenerate_jet(),
            DirectionKind::Nondegenerate => self.nondegenerate_jet(),
        }
    }

    /// `d(⟨γ″,γ″⟩)/ds` by differentiating the `γ″` field itself; an
    /// independent check of `2⟨γ‴, γ″⟩`.
    pub fn d_kappa_sq_direct(&self, kind: DirectionKind) -> Result<f64, Error> {
        let (f, j) = (&self.field, &self.jets);
        let field = match kind {
            DirectionKind::Degenerate => f.xi.scale(&j.gamma[0][0][0]) + f.v.scale(&j.gamma[0][0][1]) + f.u.scale(&j.d2[0][0]),
            DirectionKind::Nondegenerate => {
                f.v.scale(&j.nabla_star_v[1]) + f.xi.scale(&j.e1[1][1]) + f.n.scale(&j.d1[1][1]) + f.u.scale(&j.d2[1][1])
            }
        };
        let x = if kind == DirectionKind::Degenerate { 0 } else { 1 };
        self.along(&self.metric.norm_sq(&field), x)
    }

    /// `D2(ξ,ξ)u ∧ ∇̄_ξ(D2(ξ,ξ)u)` with
    /// `∇̄_ξ(D2(ξ,ξ)u) = ξ(D2(ξ,ξ))u − D2(ξ,ξ)A_u ξ + D2(ξ,ξ)ε1(ξ)N`.
    pub fn theorem31_residual(&self) -> Result<f64, Error> {
        let (f, p) = (&self.frame, &self.pkg);
        let d = p.d2[0][0];
        let a = chop(f.u * d, self.chop_limit(0, 2));
        let b = f.u * self.along(&self.jets.d2[0][0], 0)? - self.op(&p.a_u, 0) * d + f.n * (d * p.eps1[0]);
        Ok(relative_wedge2_residual(&a, &chop(b, self.chop_limit(0, 3))))
    }

    /// `T(v,v)` and its ambient derivative along `v`, expanded in the frame.
    pub fn t_and_derivative(&self) -> Result<(Vec4, Vec4), Error> {
        let (f, p, j) = (&self.frame, &self.pkg, &self.jets);
        let (e, d1v, d2v) = (p.e1[1][1], p.d1[1][1], p.d2[1][1]);
        let t = f.xi * e + f.n * d1v + f.u * d2v;
        let terms = [
            f.xi * self.along(&j.e1[1][1], 1)?,
            self.op(&p.a_xi_star, 1) * -e,
            f.xi * (e * p.u1[1]),
            f.u * (e * p.d2[1][0]),
            f.n * self.along(&j.d1[1][1], 1)?,
            self.op(&p.a_n, 1) * -d1v,
            f.n * (d1v * p.rho1[1]),
            f.u * (d1v * p.rho2[1]),
            f.u * self.along(&j.d2[1][1], 1)?,
            self.op(&p.a_u, 1) * -d2v,
            f.n * (d2v * p.eps1[1]),
        ];
        Ok((t, terms.iter().fold(Vec4::zero(), |acc, w| acc + *w)))
    }

    /// `T(v,v) ∧ ∇̄_v T(v,v)`.
    pub fn theorem_nd_residual(&self) -> Result<f64, Error> {
        let (t, dt) = self.t_and_derivative()?;
        Ok(relative_wedge2_residual(&chop(t, self.chop_limit(1, 2)), &chop(dt, self.chop_limit(1, 3))))
    }

    /// `v ∧ T(v,v) ∧ ∇̄_v T(v,v)`: the same condition with the tangential
    /// `A v` terms of `∇̄_v T` allowed.
    pub fn theorem_nd_residual_mod_v(&self) -> Result<f64, Error> {
        let (t, dt) = self.t_and_derivative()?;
        Ok(relative_wedge_residual(&self.frame.v, &chop(t, self.chop_limit(1, 2)), &chop(dt, self.chop_limit(1, 3))))
    }

    /// `(∇̄_{e_x} h)(e_y, e_z) = ∇̄_{e_x}(h(e_y,e_z)) − h(∇_{e_x} e_y, e_z) − h(e_y, ∇_{e_x} e_z)`.
    pub fn nabla_h(&self, x: usize, y: usize, z: usize) -> Result<Vec4, Error> {
        let (f, p, j) = (&self.frame, &self.pkg, &self.jets);
        let direct = f.n * self.along(&j.d1[y][z], x)?
            + p.dbar_n[x] * p.d1[y][z]
            + f.u * self.along(&j.d2[y][z], x)?
            + p.dbar_u[x] * p.d2[y][z];
        let [a, b] = p.gamma[x][y];
        let first = self.h(0, z) * a + self.h(1, z) * b;
        let [a, b] = p.gamma[x][z];
        let second = self.h(y, 0) * a + self.h(y, 1) * b;
        Ok(direct - first - second)
    }

    /// Largest `‖(∇̄_{e_x} h)(e_y, e_z)‖_E` over the basis slots.
    pub fn nabla_h_norm(&self, x: usize) -> Result<f64, Error> {
        let mut m = 0.0f64;
        for y in 0..2 {
            for z in 0..2 {
                m = m.max(self.nabla_h(x, y, z)?.norm_e());
            }
        }
        Ok(m)
    }

    /// `[D2(ξ,ξ)u ∧ (∇̄_ξ h)(ξ,ξ), h(v,v) ∧ (∇̄_v h)(v,v)]`.
    pub fn geodesic_h_residuals(&self) -> Result<[f64; 2], Error> {
        let deg_a = chop(self.frame.u * self.pkg.d2[0][0], self.chop_limit(0, 2));
        let deg_b = chop(self.nabla_h(0, 0, 0)?, self.chop_limit(0, 3));
        let nd_a = chop(self.h(1, 1), self.chop_limit(1, 2));
        let nd_b = chop(self.nabla_h(1, 1, 1)?, self.chop_limit(1, 3));
        Ok([relative_wedge2_residual(&deg_a, &deg_b), relative_wedge2_residual(&nd_a, &nd_b)])
    }

    /// `v ∧ h(v,v) ∧ (∇̄_v h)(v,v)`.
    pub fn geodesic_h_residual_mod_v(&self) -> Result<f64, Error> {
        let a = chop(self.h(1, 1), self.chop_limit(1, 2));
        let b = chop(self.nabla_h(1, 1, 1)?, self.chop_limit(1, 3));
        Ok(relative_wedge_residual(&self.frame.v, &a, &b))
    }

    /// `L_p(ξ) = ε D2(ξ,ξ)²`, resp. `L_p(v) = ⟨T(v,v), T(v,v)⟩`.
    pub fn l_value(&self, kind: DirectionKind) -> Result<f64, Error> {
        Ok(match kind {
            DirectionKind::Degenerate => self.pkg.eps * self.pkg.d2[0][0].powi(2),
            DirectionKind::Nondegenerate => {
                let (t, _) = self.t_and_derivative()?;
                inner(&self.metric, &t, &t)
            }
        })
    }

    /// `(⟨γ″,γ″⟩, d⟨γ″,γ″⟩/ds)`.
    pub fn vertex(&self, kind: DirectionKind) -> Result<(f64, f64), Error> {
        let s = self.section_jet(kind)?;
        Ok((s.kappa_sq, s.d_kappa_sq))
    }

    /// `(a, b)` with `γ‴ = aγ″ + bγ′`:
    /// `a = u1(ξ) + ξ(ln D2(ξ,ξ))`,
    /// `b = ξ(u1(ξ)) − D2(ξ,ξ)ρ2(ξ)ε − u1(ξ)ξ(ln D2(ξ,ξ))`.
    pub fn plane_coefficients(&self) -> Result<(f64, f64), Error> {
        let p = &self.pkg;
        let d = p.d2[0][0];
        if d <= self.backend.default_tol() * self.frame.xi.norm_e().powi(2) {
            return Err(Error::CoefficientUndefined(d));
        }
        let dlog = self.along(&self.jets.d2[0][0], 0)? / d;
        let u1 = p.u1[0];
        let a = u1 + dlog;
        let b = self.along(&self.jets.u1[0], 0)? - d * p.rho2[0] * p.eps - u1 * dlog;
        Ok((a, b))
    }

    /// `‖γ‴ − aγ″ − bγ′‖_E / max(‖γ‴‖, |ξ|³)` for the plane coefficients.
    pub fn plane_residual(&self) -> Result<f64, Error> {
        let (a, b) = self.plane_coefficients()?;
        let s = self.degenerate_jet()?;
        let r = s.d3 - s.d2 * a - s.d1 * b;
        Ok(r.norm_e() / s.d3.norm_e().max(s.d1.norm_e().powi(3)))
    }

    /// `‖A_u ξ − ερ2(ξ)ξ‖_E`.
    pub fn a_u_xi_residual(&self) -> f64 {
        let p = &self.pkg;
        (self.op(&p.a_u, 0) - self.frame.xi * (p.eps * p.rho2[0])).norm_e()
    }
}

pub fn degenerate_jet(s: &Surface, p: [f64; 2]) -> Result<SectionJet, Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.degenerate_jet()
}

pub fn nondegenerate_jet(s: &Surface, p: [f64; 2]) -> Result<SectionJet, Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.nondegenerate_jet()
}

pub fn theorem31_residual(s: &Surface, p: [f64; 2]) -> Result<f64, Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.theorem31_residual()
}

pub fn theorem_nd_residual(s: &Surface, p: [f64; 2]) -> Result<f64, Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.theorem_nd_residual()
}

pub fn geodesic_h_residual(s: &Surface, p: [f64; 2]) -> Result<[f64; 2], Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.geodesic_h_residuals()
}

pub fn l_value(s: &Surface, p: [f64; 2], kind: DirectionKind) -> Result<f64, Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.l_value(kind)
}

pub fn vertex(s: &Surface, p: [f64; 2], kind: DirectionKind) -> Result<(f64, f64), Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.vertex(kind)
}

pub fn plane_coefficients(s: &Surface, p: [f64; 2]) -> Result<(f64, f64), Error> {
    LocalGeometry::at(s, p, Backend::Jet)?.plane_coefficients()
}
