//! Truncated bivariate Taylor jets.
//!
//! A [`Jet`] is a polynomial in the two surface parameters `(u1, u2)`,
//! centred at a base point and truncated at total degree three. Arithmetic
//! on jets is exact truncated-Taylor propagation, so running a computation
//! on jets instead of plain floats yields the value of the result together
//! with all its partial derivatives up to the jet's order.
//!
//! Every jet records the order up to which its coefficients are valid.
//! Differentiating a jet drops one order; combining two jets keeps the
//! smaller order.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Highest total degree carried by a jet.
pub const MAX_ORDER: u8 = 3;
const NCOEF: usize = 10;

/// Exponents `(a, b)` of the monomial `u1^a u2^b` at each coefficient slot.
const MONOMIALS: [(u8, u8); NCOEF] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

const fn slot(a: u8, b: u8) -> usize {
    let d = (a + b) as usize;
    d * (d + 1) / 2 + b as usize
}

/// Scalar type the geometric constructions are written against.
///
/// Implemented by `f64` (plain point evaluation) and [`Jet`] (evaluation
/// with derivatives). Branching decisions inside constructions must only
/// look at [`Scalar::value`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn powf(&self, p: f64) -> Self;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn recip(&self) -> Self {
        Self::constant(1.0) / self.clone()
    }
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn powf(&self, p: f64) -> Self {
        f64::powf(*self, p)
    }
}

/// Truncated Taylor polynomial in `(u1, u2)` of total degree at most
/// [`MAX_ORDER`].
///
/// Coefficients are Taylor coefficients, i.e. `∂^a_1 ∂^b_2 f / (a! b!)`.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    coef: [f64; NCOEF],
    order: u8,
}

impl Jet {
    /// Constant jet, valid to full order.
    pub fn constant(c: f64) -> Self {
        let mut coef = [0.0; NCOEF];
        coef[0] = c;
        Jet {
            coef,
            order: MAX_ORDER,
        }
    }

    /// The independent variable `u_{index+1}` expanded around `base`.
    pub fn variable(index: usize, base: f64) -> Self {
        assert!(index < 2, "jets have two parameters");
        let mut j = Jet::constant(base);
        j.coef[1 + index] = 1.0;
        j
    }

    /// Build a jet from partial derivatives
    /// `[f, f_1, f_2, f_11, f_12, f_22, f_111, f_112, f_122, f_222]`.
    pub fn from_partials(partials: [f64; NCOEF], order: u8) -> Self {
        let mut coef = [0.0; NCOEF];
        for (k, &(a, b)) in MONOMIALS.iter().enumerate() {
            if a + b <= order {
                coef[k] = partials[k] / (factorial(a) * factorial(b));
            }
        }
        Jet { coef, order }
    }

    /// Partial derivatives in the same layout as [`Jet::from_partials`];
    /// slots above the valid order are zero.
    pub fn partials(&self) -> [f64; NCOEF] {
        let mut out = [0.0; NCOEF];
        for (k, &(a, b)) in MONOMIALS.iter().enumerate() {
            if a + b <= self.order {
                out[k] = self.coef[k] * factorial(a) * factorial(b);
            }
        }
        out
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.coef[0]
    }

    /// Raw Taylor coefficient of `u1^a u2^b`.
    pub fn coefficient(&self, a: u8, b: u8) -> f64 {
        if a + b > self.order {
            return 0.0;
        }
        self.coef[slot(a, b)]
    }

    /// Truncate to a lower order.
    pub fn truncate(mut self, order: u8) -> Self {
        if order < self.order {
            for (k, &(a, b)) in MONOMIALS.iter().enumerate() {
                if a + b > order {
                    self.coef[k] = 0.0;
                }
            }
            self.order = order;
        }
        self
    }

    /// Partial derivative with respect to parameter `index`; `None` when the
    /// jet has no order left.
    pub fn partial(&self, index: usize) -> Option<Jet> {
        if self.order == 0 {
            return None;
        }
        let mut coef = [0.0; NCOEF];
        for (k, &(a, b)) in MONOMIALS.iter().enumerate() {
            if a + b + 1 > self.order {
                continue;
            }
            let (src, factor) = if index == 0 {
                (slot(a + 1, b), f64::from(a + 1))
            } else {
                (slot(a, b + 1), f64::from(b + 1))
            };
            coef[k] = factor * self.coef[src];
        }
        Some(Jet {
            coef,
            order: self.order - 1,
        })
    }

    /// Derivative along the parameter-space direction `dir`.
    pub fn directional(&self, dir: &[Jet; 2]) -> Option<Jet> {
        Some(dir[0] * self.partial(0)? + dir[1] * self.partial(1)?)
    }

    /// Compose a univariate function given its derivatives
    /// `[f(a), f'(a), f''(a), f'''(a)]` at `a = self.value()`.
    fn compose(&self, d: [f64; 4]) -> Jet {
        let mut delta = *self;
        delta.coef[0] = 0.0;
        let mut out = Jet::constant(d[0]).truncate(self.order);
        let mut power = Jet::constant(1.0).truncate(self.order);
        let inv_fact = [1.0, 1.0, 0.5, 1.0 / 6.0];
        for k in 1..=self.order as usize {
            power = power * delta;
            out = out + power * (d[k] * inv_fact[k]);
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.coef.iter().all(|c| c.is_finite())
    }
}

fn factorial(n: u8) -> f64 {
    (1..=u32::from(n)).product::<u32>() as f64
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet[o{}]{:?}", self.order, &self.coef)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut coef = [0.0; NCOEF];
        for k in 0..NCOEF {
            coef[k] = self.coef[k] + rhs.coef[k];
        }
        Jet { coef, order }.truncate(order)
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for c in self.coef.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut coef = [0.0; NCOEF];
        for (i, &(a1, b1)) in MONOMIALS.iter().enumerate() {
            if a1 + b1 > order || self.coef[i] == 0.0 {
                continue;
            }
            for (j, &(a2, b2)) in MONOMIALS.iter().enumerate() {
                if a1 + b1 + a2 + b2 > order {
                    continue;
                }
                coef[slot(a1 + a2, b1 + b2)] += self.coef[i] * rhs.coef[j];
            }
        }
        Jet { coef, order }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        for c in self.coef.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let a = rhs.value();
        let r = rhs.compose([
            1.0 / a,
            -1.0 / (a * a),
            2.0 / (a * a * a),
            -6.0 / (a * a * a * a),
        ]);
        self * r
    }
}

impl Scalar for Jet {
    fn constant(c: f64) -> Self {
        Jet::constant(c)
    }
    fn value(&self) -> f64 {
        self.coef[0]
    }
    fn sqrt(&self) -> Self {
        let s = self.value().sqrt();
        self.compose([
            s,
            0.5 / s,
            -0.25 / (s * s * s),
            0.375 / (s * s * s * s * s),
        ])
    }
    fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e, e, e, e])
    }
    fn ln(&self) -> Self {
        let a = self.value();
        self.compose([a.ln(), 1.0 / a, -1.0 / (a * a), 2.0 / (a * a * a)])
    }
    fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }
    fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }
    fn powi(&self, n: i32) -> Self {
        match n {
            0 => Jet::constant(1.0).truncate(self.order),
            1 => *self,
            n if n < 0 => Jet::constant(1.0) / self.powi(-n),
            n => {
                let mut acc = *self;
                for _ in 1..n {
                    acc = acc * *self;
                }
                acc
            }
        }
    }
    fn powf(&self, p: f64) -> Self {
        let a = self.value();
        self.compose([
            a.powf(p),
            p * a.powf(p - 1.0),
            p * (p - 1.0) * a.powf(p - 2.0),
            p * (p - 1.0) * (p - 2.0) * a.powf(p - 3.0),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn point(u: f64, v: f64) -> (Jet, Jet) {
        (Jet::variable(0, u), Jet::variable(1, v))
    }

    #[test]
    fn polynomial_partials_are_exact() {
        // f = 3 + 2u - v + u^2 v + 4 v^3 at (0.5, -1)
        let (u, v) = point(0.5, -1.0);
        let f = Jet::constant(3.0) + u * 2.0 - v + u * u * v + v * v * v * 4.0;
        let p = f.partials();
        let (u0, v0) = (0.5f64, -1.0f64);
        let expected = [
            3.0 + 2.0 * u0 - v0 + u0 * u0 * v0 + 4.0 * v0.powi(3),
            2.0 + 2.0 * u0 * v0,
            -1.0 + u0 * u0 + 12.0 * v0 * v0,
            2.0 * v0,
            2.0 * u0,
            24.0 * v0,
            0.0,
            2.0,
            0.0,
            24.0,
        ];
        for k in 0..10 {
            assert_abs_diff_eq!(p[k], expected[k], epsilon = 1e-13);
        }
    }

    #[test]
    fn partial_drops_order() {
        let (u, _) = point(1.0, 0.0);
        let f = u * u * u;
        let d = f.partial(0).unwrap();
        assert_eq!(d.order(), 2);
        assert_abs_diff_eq!(d.value(), 3.0);
        assert_abs_diff_eq!(d.partials()[1], 6.0);
        let d3 = d.partial(0).unwrap().partial(0).unwrap();
        assert_eq!(d3.order(), 0);
        assert_abs_diff_eq!(d3.value(), 6.0);
        assert!(d3.partial(0).is_none());
    }

    #[test]
    fn transcendental_composition() {
        let (u, v) = point(0.3, 0.2);
        let f = (u * v).sin();
        let p = f.partials();
        let (a, b) = (0.3f64, 0.2f64);
        let c = (a * b).cos();
        let s = (a * b).sin();
        assert_abs_diff_eq!(p[0], s, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], b * c, epsilon = 1e-15);
        assert_abs_diff_eq!(p[3], -b * b * s, epsilon = 1e-15);
        assert_abs_diff_eq!(p[4], c - a * b * s, epsilon = 1e-15);
        assert_abs_diff_eq!(p[6], -b * b * b * c, epsilon = 1e-15);
        assert_abs_diff_eq!(p[7], -2.0 * b * s - a * b * b * c, epsilon = 1e-14);
    }

    #[test]
    fn division_and_sqrt_invert_each_other() {
        let (u, v) = point(0.7, 1.3);
        let f = Jet::constant(1.0) + u * u + v;
        let g = (f.sqrt() * f.sqrt()) / f;
        assert_abs_diff_eq!(g.value(), 1.0, epsilon = 1e-14);
        for k in 1..10 {
            assert_abs_diff_eq!(g.partials()[k], 0.0, epsilon = 1e-13);
        }
        let l = f.ln().exp() - f;
        for k in 0..10 {
            assert_abs_diff_eq!(l.partials()[k], 0.0, epsilon = 1e-13);
        }
    }
}
