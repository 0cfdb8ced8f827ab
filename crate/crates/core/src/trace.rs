//! Independent oracle for normal sections: solve `X(u) ∈ p + span{w, N, u}`
//! numerically, sample the curve at equal steps of the `w`-coordinate and
//! difference the samples.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use serde::Serialize;

use crate::ambient::{triple_wedge, Vec4};
use crate::error::Error;
use crate::fd::curve_derivatives;
use crate::sections::SectionJet;
use crate::surface::Surface;

/// Samples on each side of the base point.
pub const HALF_SAMPLES: i32 = 4;
pub const DEFAULT_STEP: f64 = 1e-2;
const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX: usize = 40;
const JACOBIAN_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct TracedCurve {
    pub h: f64,
    pub params: Vec<[f64; 2]>,
    pub samples: Vec<Vec4>,
    pub d1: Vec4,
    pub d2: Vec4,
    pub d3: Vec4,
    /// Largest `|m·(X − p)|` left after Newton, relative to `|X(p)|`.
    pub plane_residual: f64,
}

fn to_na(v: &Vec4) -> Vector4<f64> {
    Vector4::new(v[0], v[1], v[2], v[3])
}

struct Constraint<'a> {
    s: &'a Surface,
    origin: Vector4<f64>,
    normal: Vector4<f64>,
    coordinate: Vector4<f64>,
}

impl Constraint<'_> {
    /// `(m·(X − p), ℓ(X − p) − target)`.
    fn residual(&self, q: [f64; 2], target: f64) -> Result<Vector2<f64>, Error> {
        let x = to_na(&self.s.immersion.point(q)?) - self.origin;
        Ok(Vector2::new(self.normal.dot(&x), self.coordinate.dot(&x) - target))
    }

    fn jacobian(&self, q: [f64; 2]) -> Result<Matrix2<f64>, Error> {
        let mut j = Matrix2::zeros();
        for c in 0..2 {
            let mut plus = q;
            let mut minus = q;
            plus[c] += JACOBIAN_STEP;
            minus[c] -= JACOBIAN_STEP;
            let d = (self.residual(plus, 0.0)? - self.residual(minus, 0.0)?) / (2.0 * JACOBIAN_STEP);
            j.set_column(c, &d);
        }
        Ok(j)
    }

    fn solve(&self, guess: [f64; 2], target: f64, step: i32, h: f64) -> Result<([f64; 2], f64), Error> {
        let scale = self.origin.norm().max(1.0);
        let mut q = guess;
        let mut r = self.residual(q, target)?;
        for _ in 0..NEWTON_MAX {
            if r.norm() <= NEWTON_TOL * scale {
                return Ok((q, r[0].abs() / scale));
            }
            let j = self.jacobian(q)?;
            let delta = j.lu().solve(&-r).ok_or(Error::ContinuationStall { step, residual: r.norm() })?;
            if delta.norm() > 0.5 {
                return Err(Error::StepTooLarge(h));
            }
            q = [q[0] + delta[0], q[1] + delta[1]];
            r = self.residual(q, target)?;
        }
        if r.norm() <= 1e3 * NEWTON_TOL * scale {
            return Ok((q, r[0].abs() / scale));
        }
        Err(Error::ContinuationStall { step, residual: r.norm() })
    }
}

/// Trace the normal section through `p` in tangent direction `w` (given in
/// ambient coordinates, with parameter-space direction `dir`), spanned with
/// the transversal pair `n`, `u`.
pub fn trace_curve(s: &Surface, p: [f64; 2], w: &Vec4, dir: [f64; 2], n: &Vec4, u: &Vec4, h: f64) -> Result<TracedCurve, Error> {
    if !(h.is_finite() && h > 0.0 && h <= 0.1) {
        return Err(Error::StepTooLarge(h));
    }
    let m = triple_wedge(w, n, u);
    let basis = Matrix4::from_columns(&[to_na(w), to_na(n), to_na(u), to_na(&m)]);
    let inverse = basis.try_inverse().ok_or(Error::TransversalNotFound)?;
    let c = Constraint {
        s,
        origin: to_na(&s.immersion.point(p)?),
        normal: to_na(&m),
        coordinate: inverse.row(0).transpose(),
    };

    let count = (2 * HALF_SAMPLES + 1) as usize;
    let mut params = vec![p; count];
    let mut worst = 0.0f64;
    for side in [1, -1] {
        let mut prev = p;
        let mut prev2: Option<[f64; 2]> = None;
        for k in 1..=HALF_SAMPLES {
            let guess = match prev2 {
                Some(pp) => [2.0 * prev[0] - pp[0], 2.0 * prev[1] - pp[1]],
                None => [p[0] + f64::from(side) * h * dir[0], p[1] + f64::from(side) * h * dir[1]],
            };
            let (q, r) = c.solve(guess, f64::from(side * k) * h, side * k, h)?;
            worst = worst.max(r);
            params[(HALF_SAMPLES + side * k) as usize] = q;
            prev2 = Some(prev);
            prev = q;
        }
    }
    let samples = params.iter().map(|&q| s.immersion.point(q)).collect::<Result<Vec<_>, _>>()?;
    let window: [Vec4; 9] = samples[..].try_into().expect("nine samples");
    let [d1, d2, d3] = curve_derivatives(&window, h);
    Ok(TracedCurve {
        h,
        params,
        samples,
        d1,
        d2,
        d3,
        plane_residual: worst,
    })
}

/// Relative discrepancies between a section jet and a traced curve. Second
/// and third derivatives are compared modulo lower-order directions, since
/// the two parametrizations agree only to first order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Agreement {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Agreement {
    pub fn max(&self) -> f64 {
        self.d1.max(self.d2).max(self.d3)
    }
}

/// Component of `w` orthogonal (Euclidean) to the span of `basis`.
fn reject(w: &Vec4, basis: &[Vec4]) -> Vec4 {
    let mut ortho: Vec<Vec4> = Vec::new();
    for b in basis {
        let mut e = *b;
        for o in &ortho {
            e = e - *o * e.dot_e(o);
        }
        let n = e.norm_e();
        if n > 1e-9 * b.norm_e().max(1e-300) {
            ortho.push(e * (1.0 / n));
        }
    }
    let mut r = *w;
    for o in &ortho {
        r = r - *o * r.dot_e(o);
    }
    r
}

pub fn compare(jet: &SectionJet, curve: &TracedCurve) -> Agreement {
    let len = jet.d1.norm_e();
    let d1 = (jet.d1 - curve.d1).norm_e() / len;
    let d2 = (reject(&jet.d2, &[jet.d1]) - reject(&curve.d2, &[jet.d1])).norm_e() / jet.d2.norm_e().max(len * len);
    let span = [jet.d1, jet.d2];
    let d3 = (reject(&jet.d3, &span) - reject(&curve.d3, &span)).norm_e() / jet.d3.norm_e().max(len.powi(3));
    Agreement { d1, d2, d3 }
}
