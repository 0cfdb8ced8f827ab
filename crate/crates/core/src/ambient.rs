//! Flat semi-Euclidean 4-space.
//!
//! The metric is diagonal with entries ±1, listed negative-first:
//! `R^4_2 = diag(-1,-1,1,1)` and `R^4_1 = diag(-1,1,1,1)`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exprjet::Scalar;

/// Guards the wedge residual against 0/0; never affects verdicts.
pub const DELTA_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientMetric {
    signs: [i8; 4],
}

impl AmbientMetric {
    pub fn new(signs: [i8; 4]) -> Result<Self, Error> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidMetric(format!("entries must be ±1, got {signs:?}")));
        }
        let m = AmbientMetric { signs };
        if !(1..=2).contains(&m.index()) {
            return Err(Error::InvalidMetric(format!(
                "index must be 1 or 2, got {} for {signs:?}",
                m.index()
            )));
        }
        Ok(m)
    }

    /// `R^4_q` with the first `q` entries negative.
    pub fn semi_euclidean(q: usize) -> Result<Self, Error> {
        let mut signs = [1i8; 4];
        for s in signs.iter_mut().take(q.min(4)) {
            *s = -1;
        }
        Self::new(signs)
    }

    pub fn r42() -> Self {
        AmbientMetric { signs: [-1, -1, 1, 1] }
    }

    pub fn r41() -> Self {
        AmbientMetric { signs: [-1, 1, 1, 1] }
    }

    pub fn signs(&self) -> [i8; 4] {
        self.signs
    }

    pub fn index(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.signs[i])
    }

    /// `Σ signs[i] x_i y_i`.
    pub fn inner<S: Scalar>(&self, x: &Vec4<S>, y: &Vec4<S>) -> S {
        let mut acc = x.0[0].clone() * y.0[0].clone() * self.sign(0);
        for i in 1..4 {
            acc = acc + x.0[i].clone() * y.0[i].clone() * self.sign(i);
        }
        acc
    }

    pub fn norm_sq<S: Scalar>(&self, x: &Vec4<S>) -> S {
        self.inner(x, x)
    }

    /// Index-lowering map `x ↦ G x`; `inner(x, y) = <G x, y>_E`.
    pub fn lower<S: Scalar>(&self, x: &Vec4<S>) -> Vec4<S> {
        Vec4::from_fn(|i| x.0[i].clone() * self.sign(i))
    }
}

impl fmt::Display for AmbientMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^4_{} diag{:?}", self.index(), self.signs)
    }
}

/// Four components in ambient coordinates.
#[derive(Clone, Copy, PartialEq)]
pub struct Vec4<S = f64>(pub [S; 4]);

impl<S: fmt::Debug> fmt::Debug for Vec4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Serialize for Vec4 {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.0.serialize(s)
    }
}

impl<S> Index<usize> for Vec4<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> Vec4<S> {
    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Vec4(std::array::from_fn(f))
    }

    pub fn zero() -> Self {
        Vec4::from_fn(|_| S::zero())
    }

    pub fn from_f64(v: [f64; 4]) -> Self {
        Vec4::from_fn(|i| S::constant(v[i]))
    }

    pub fn scale(&self, s: &S) -> Self {
        Vec4::from_fn(|i| self.0[i].clone() * s.clone())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Vec4<T> {
        Vec4(std::array::from_fn(|i| f(&self.0[i])))
    }

    pub fn value(&self) -> Vec4<f64> {
        self.map(|s| s.value())
    }

    /// Euclidean auxiliary inner product.
    pub fn dot_e(&self, other: &Self) -> S {
        let mut acc = self.0[0].clone() * other.0[0].clone();
        for i in 1..4 {
            acc = acc + self.0[i].clone() * other.0[i].clone();
        }
        acc
    }
}

impl Vec4<f64> {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Vec4([a, b, c, d])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vec4(v)
    }

    pub fn norm_e(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl<S: Scalar> Add for Vec4<S> {
    type Output = Vec4<S>;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Vec4([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<S: Scalar> Sub for Vec4<S> {
    type Output = Vec4<S>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for Vec4<S> {
    type Output = Vec4<S>;
    fn neg(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        Vec4([-a0, -a1, -a2, -a3])
    }
}

impl<S: Scalar> Mul<f64> for Vec4<S> {
    type Output = Vec4<S>;
    fn mul(self, rhs: f64) -> Self {
        let [a0, a1, a2, a3] = self.0;
        Vec4([a0 * rhs, a1 * rhs, a2 * rhs, a3 * rhs])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
    Zero,
}

/// Inner product on plain vectors.
pub fn inner(g: &AmbientMetric, x: &Vec4, y: &Vec4) -> f64 {
    g.inner(x, y)
}

pub fn causal_character(g: &AmbientMetric, x: &Vec4, tol: f64) -> CausalCharacter {
    let n = x.norm_e();
    if n < tol {
        return CausalCharacter::Zero;
    }
    let q = g.inner(x, x);
    if q.abs() < tol * n * n {
        CausalCharacter::Null
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

/// Hodge-dual components of `a ∧ b ∧ c`: slot `k` holds `(-1)^k` times the
/// 3×3 minor of the matrix `[a; b; c]` with column `k` removed. The result
/// is Euclidean-orthogonal to `a`, `b` and `c`, and vanishes exactly when
/// the three are linearly dependent.
pub fn triple_wedge<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>, c: &Vec4<S>) -> Vec4<S> {
    Vec4::from_fn(|k| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != k).collect();
        let m = |r: &Vec4<S>, j: usize| r.0[cols[j]].clone();
        let det = m(a, 0) * (m(b, 1) * m(c, 2) - m(b, 2) * m(c, 1))
            - m(a, 1) * (m(b, 0) * m(c, 2) - m(b, 2) * m(c, 0))
            + m(a, 2) * (m(b, 0) * m(c, 1) - m(b, 1) * m(c, 0));
        if k % 2 == 0 {
            -det
        } else {
            det
        }
    })
}

/// Plücker components `a_i b_j - a_j b_i` (`i < j`) of `a ∧ b`.
pub fn wedge2(a: &Vec4, b: &Vec4) -> [f64; 6] {
    let mut out = [0.0; 6];
    let mut k = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            out[k] = a[i] * b[j] - a[j] * b[i];
            k += 1;
        }
    }
    out
}

/// `‖a ∧ b ∧ c‖_E / (‖a‖ ‖b‖ ‖c‖ + δ)`: zero for dependent triples, one for
/// Euclidean-orthonormal ones, and unchanged by rescaling any argument.
pub fn relative_wedge_residual(a: &Vec4, b: &Vec4, c: &Vec4) -> f64 {
    triple_wedge(a, b, c).norm_e() / (a.norm_e() * b.norm_e() * c.norm_e() + DELTA_FLOOR)
}

/// Two-vector analogue of [`relative_wedge_residual`].
pub fn relative_wedge2_residual(a: &Vec4, b: &Vec4) -> f64 {
    let w = wedge2(a, b);
    w.iter().map(|x| x * x).sum::<f64>().sqrt() / (a.norm_e() * b.norm_e() + DELTA_FLOOR)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn ex1_radical_generator_is_null() {
        let g = AmbientMetric::r42();
        let xi = Vec4::new(1.0, 1.0, SQRT2, 0.0);
        assert_abs_diff_eq!(inner(&g, &xi, &xi), 0.0, epsilon = 1e-15);
        assert_eq!(causal_character(&g, &xi, 1e-10), CausalCharacter::Null);
    }

    #[test]
    fn unit_and_timelike_vectors() {
        let g = AmbientMetric::r42();
        let e4 = Vec4::basis(3);
        assert_eq!(inner(&g, &e4, &e4), 1.0);
        // U2 at x1 - x2 = 1: sqrt2 (1+t^2) d2 + (1+t^2) d3 - sqrt2 t d4
        let t = 1.0;
        let u2 = Vec4::new(0.0, SQRT2 * (1.0 + t * t), 1.0 + t * t, -SQRT2 * t);
        assert_abs_diff_eq!(inner(&g, &u2, &u2), -2.0, epsilon = 1e-14);
        let u2_0 = Vec4::new(0.0, SQRT2, 1.0, 0.0);
        assert_eq!(causal_character(&g, &u2_0, 1e-10), CausalCharacter::Timelike);
        assert_eq!(causal_character(&g, &Vec4::zero(), 1e-10), CausalCharacter::Zero);
        assert_eq!(causal_character(&g, &e4, 1e-10), CausalCharacter::Spacelike);
    }

    #[test]
    fn metric_validation() {
        assert!(AmbientMetric::new([1, 1, 1, 1]).is_err());
        assert!(AmbientMetric::new([-1, -1, -1, 1]).is_err());
        assert!(AmbientMetric::new([-1, 2, 1, 1]).is_err());
        assert_eq!(AmbientMetric::semi_euclidean(2).unwrap(), AmbientMetric::r42());
        assert_eq!(AmbientMetric::semi_euclidean(1).unwrap().index(), 1);
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let w = triple_wedge(&Vec4::basis(0), &Vec4::basis(1), &Vec4::basis(2));
        assert_eq!(w.0[..3], [0.0, 0.0, 0.0]);
        assert_eq!(w.0[3].abs(), 1.0);
        let a = Vec4::new(1.0, 2.0, 3.0, 4.0);
        let b = Vec4::new(-1.0, 0.5, 2.0, 0.0);
        assert_eq!(triple_wedge(&a, &a, &b), Vec4::zero());
        assert_abs_diff_eq!(
            relative_wedge_residual(&Vec4::basis(0), &Vec4::basis(1), &Vec4::basis(2)),
            1.0
        );
        assert_eq!(relative_wedge_residual(&a, &Vec4::zero(), &b), 0.0);
    }

    #[test]
    fn wedge_is_orthogonal_to_factors() {
        let a = Vec4::new(1.0, 2.0, 3.0, 4.0);
        let b = Vec4::new(-1.0, 0.5, 2.0, 0.0);
        let c = Vec4::new(0.3, -0.7, 0.0, 1.1);
        let w = triple_wedge(&a, &b, &c);
        for v in [a, b, c] {
            assert_abs_diff_eq!(w.dot_e(&v), 0.0, epsilon = 1e-13);
        }
    }

    fn vec4() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Vec4)
    }

    proptest! {
        #[test]
        fn inner_is_symmetric_bilinear(x in vec4(), y in vec4(), z in vec4(), s in -5.0f64..5.0) {
            let g = AmbientMetric::r42();
            prop_assert!((g.inner(&x, &y) - g.inner(&y, &x)).abs() < 1e-12);
            let lhs = g.inner(&(x * s + y), &z);
            let rhs = s * g.inner(&x, &z) + g.inner(&y, &z);
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
        }

        #[test]
        fn wedge_is_alternating(a in vec4(), b in vec4(), c in vec4()) {
            let w = triple_wedge(&a, &b, &c);
            for swapped in [triple_wedge(&b, &a, &c), triple_wedge(&a, &c, &b), triple_wedge(&c, &b, &a)] {
                for k in 0..4 {
                    prop_assert!((w[k] + swapped[k]).abs() < 1e-9 * (1.0 + w[k].abs()));
                }
            }
        }

        #[test]
        fn residual_ignores_rescaling(a in vec4(), b in vec4(), c in vec4(),
                                      s1 in 0.1f64..10.0, s2 in -10.0f64..-0.1, s3 in 0.1f64..10.0) {
            let r0 = relative_wedge_residual(&a, &b, &c);
            let r1 = relative_wedge_residual(&(a * s1), &(b * s2), &(c * s3));
            prop_assert!((r0 - r1).abs() < 1e-9);
        }
    }
}
