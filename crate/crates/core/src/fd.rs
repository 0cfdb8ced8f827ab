//! Finite-difference oracle: central stencils with one Richardson step.
//!
//! Everything here evaluates expressions on plain `f64` only, so it shares
//! no derivative machinery with the jet path.

use crate::ambient::Vec4;
use crate::error::Error;
use crate::exprjet::{Expr, Immersion, ImmersionJet, Jet, MAX_ORDER};

/// Base step per derivative order (1, 2, 3), chosen near the balance of
/// truncation `h^4` and rounding `ε/h^k` after extrapolation.
pub const STEPS: [f64; 3] = [1e-3, 2e-3, 5e-3];

/// Second-order central stencil for the `k`-th derivative as
/// `(offset, weight)` pairs in units of the step.
fn stencil(k: u8) -> &'static [(i32, f64)] {
    match k {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        _ => unreachable!("derivative order above 3"),
    }
}

/// One Richardson step for an `O(h^2)` estimate: `(4 D(h) - D(2h)) / 3`.
pub fn richardson(fine: f64, coarse: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

fn mixed_partial(f: &impl Fn([f64; 2]) -> Result<Vec4, Error>, p: [f64; 2], a: u8, b: u8, h: f64) -> Result<Vec4, Error> {
    let mut acc = Vec4::zero();
    for &(i, wi) in stencil(a) {
        for &(j, wj) in stencil(b) {
            let x = f([p[0] + f64::from(i) * h, p[1] + f64::from(j) * h])?;
            acc = acc + x * (wi * wj);
        }
    }
    Ok(acc * h.powi(-i32::from(a + b)))
}

/// All partials up to order three of a vector-valued function, packaged as
/// order-3 jets per component.
pub fn fd_jets(f: impl Fn([f64; 2]) -> Result<Vec4, Error>, p: [f64; 2]) -> Result<Vec4<Jet>, Error> {
    const LAYOUT: [(u8, u8); 10] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
    let mut partials = [[0.0; 10]; 4];
    for (k, &(a, b)) in LAYOUT.iter().enumerate() {
        let d = if a + b == 0 {
            f(p)?
        } else {
            let h = STEPS[usize::from(a + b) - 1];
            let fine = mixed_partial(&f, p, a, b, h)?;
            let coarse = mixed_partial(&f, p, a, b, 2.0 * h)?;
            Vec4::from_fn(|c| richardson(fine[c], coarse[c]))
        };
        for c in 0..4 {
            partials[c][k] = d[c];
        }
    }
    Ok(Vec4(partials.map(|row| Jet::from_partials(row, MAX_ORDER))))
}

/// Immersion jets from finite differences of the point evaluation.
pub fn immersion_jet_fd(m: &Immersion, p: [f64; 2]) -> Result<ImmersionJet, Error> {
    let coords = fd_jets(|q| m.point(q), p)?;
    ImmersionJet::new(p, coords)
}

/// Jets of four coordinate expressions from finite differences.
pub fn expr_jets_fd(exprs: &[Expr; 4], p: [f64; 2]) -> Result<Vec4<Jet>, Error> {
    fd_jets(|q| eval4(exprs, q), p)
}

pub(crate) fn eval4(exprs: &[Expr; 4], q: [f64; 2]) -> Result<Vec4, Error> {
    let mut out = [0.0; 4];
    for (o, e) in out.iter_mut().zip(exprs) {
        *o = e.eval(&q).map_err(|source| Error::Domain { point: q, source })?;
    }
    Ok(Vec4(out))
}

/// First three derivatives at the middle sample of nine equally spaced
/// samples (offsets `-4..=4` times `h`), Richardson-combined between steps
/// `h` and `2h`.
pub fn curve_derivatives(samples: &[Vec4; 9], h: f64) -> [Vec4; 3] {
    let at = |k: i32| &samples[(k + 4) as usize];
    let estimate = |order: u8, m: i32| -> Vec4 {
        let step = h * f64::from(m);
        let mut acc = Vec4::zero();
        for &(i, w) in stencil(order) {
            acc = acc + at(i * m).clone() * w;
        }
        acc * step.powi(-i32::from(order))
    };
    std::array::from_fn(|k| {
        let order = k as u8 + 1;
        let (fine, coarse) = (estimate(order, 1), estimate(order, 2));
        Vec4::from_fn(|c| richardson(fine[c], coarse[c]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprjet::{immersion_jet, parse};
    use proptest::prelude::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn curve_derivatives_of_a_cubic_are_exact() {
        let h = 0.01;
        let samples: [Vec4; 9] = std::array::from_fn(|i| {
            let s = (i as f64 - 4.0) * h;
            Vec4::new(s, s * s, s * s * s, 1.0 + 2.0 * s - s * s * s)
        });
        let [d1, d2, d3] = curve_derivatives(&samples, h);
        let want = [[1.0, 0.0, 0.0, 2.0], [0.0, 2.0, 0.0, 0.0], [0.0, 0.0, 6.0, -6.0]];
        for (d, w) in [d1, d2, d3].iter().zip(want) {
            for c in 0..4 {
                assert!((d[c] - w[c]).abs() < 1e-8, "{d:?} vs {w:?}");
            }
        }
    }

    #[test]
    fn fd_matches_jets_on_ex1() {
        let m = Immersion::graph(
            [1, 2],
            [(3, "(x1 + x2)/sqrt(2)"), (4, "0.5*log(1 + (x1 - x2)^2)")],
            [[-1.0, 1.0], [-1.0, 1.0]],
        )
        .unwrap();
        let p = [0.3, -0.2];
        let exact = immersion_jet(&m, p).unwrap();
        let approx = immersion_jet_fd(&m, p).unwrap();
        for c in 0..4 {
            let (a, b) = (exact.coords[c].partials(), approx.coords[c].partials());
            for k in 0..10 {
                assert!(close(a[k], b[k], 1e-6), "coord {c} slot {k}: {} vs {}", a[k], b[k]);
            }
        }
    }

    const POOL: [&str; 6] = [
        "sin(u1) * exp(u2)",
        "log(2 + u1^2 + u2)",
        "sqrt(3 + u1*u2) - cos(u2)",
        "u1^3 - 2*u1*u2^2 + 5",
        "exp(u1 - u2) / (2 + sin(u1))",
        "(1 + u1^2)^0.5 * u2",
    ];

    proptest! {
        #[test]
        fn fd_agrees_with_jets(idx in 0usize..6, a in -0.5f64..0.5, b in -0.5f64..0.5) {
            let e = parse(POOL[idx]).unwrap();
            let exact = crate::exprjet::jet3(&e, [a, b]).unwrap().to_jet().partials();
            let approx = fd_jets(
                |q| Ok(Vec4::new(e.eval(&q).unwrap(), 0.0, 0.0, 0.0)),
                [a, b],
            ).unwrap()[0].partials();
            for k in 0..10 {
                prop_assert!(close(exact[k], approx[k], 1e-6), "{}: slot {k}: {} vs {}", POOL[idx], exact[k], approx[k]);
            }
        }
    }
}
