//! Induced objects of the Gauss–Weingarten decomposition, read off by
//! expanding ambient derivatives of frame fields in the frame.
//!
//! Everything is stored in the working basis `e_0 = ξ`, `e_1 = v`.
//! Operators are stored by input direction: `a_n[x] = [ξ-part, v-part]` of
//! `A_N e_x`.

use crate::ambient::{AmbientMetric, Vec4};
use crate::error::Error;
use crate::exprjet::{Jet, Scalar};
use crate::frame::{FrameField, MovingFrame};
use crate::surface::{Backend, Surface};

/// Directional derivative of a field along a parameter-space direction.
/// The flat ambient connection is coordinate-wise differentiation.
pub fn ambient_derivative(field: &Vec4<Jet>, dir: &[Jet; 2]) -> Result<Vec4<Jet>, Error> {
    let mut out = [Jet::constant(0.0); 4];
    for (o, c) in out.iter_mut().zip(field.0.iter()) {
        *o = c.directional(dir).ok_or(Error::JetOrderExhausted("ambient derivative"))?;
    }
    Ok(Vec4(out))
}

/// Coefficients `(a_ξ, a_v, a_u, a_N)` of `w` in the frame.
pub fn decompose<S: Scalar>(f: &FrameField<S>, w: &Vec4<S>, g: &AmbientMetric) -> [S; 4] {
    [
        g.inner(w, &f.n),
        g.inner(w, &f.v) * f.eps_v,
        g.inner(w, &f.u) * f.eps,
        g.inner(w, &f.xi),
    ]
}

pub fn decompose_point(f: &MovingFrame, w: &Vec4, g: &AmbientMetric) -> [f64; 4] {
    [
        g.inner(w, &f.n),
        g.inner(w, &f.v) * f.eps_v,
        g.inner(w, &f.u) * f.eps,
        g.inner(w, &f.xi),
    ]
}

/// Reassemble `a_ξ ξ + a_v v + a_u u + a_N N`.
pub fn recompose(f: &MovingFrame, a: [f64; 4]) -> Vec4 {
    f.xi * a[0] + f.v * a[1] + f.u * a[2] + f.n * a[3]
}

pub type Form<S> = [[S; 2]; 2];

#[derive(Debug, Clone)]
pub struct InducedPackage<S = f64> {
    pub d1: Form<S>,
    pub d2: Form<S>,
    /// `E1(e_x, e_y)`; the `ξ` slot (`y = 0`) vanishes since `Pξ = 0`.
    pub e1: Form<S>,
    pub a_n: Form<S>,
    pub a_u: Form<S>,
    pub a_xi_star: Form<S>,
    pub rho1: [S; 2],
    pub rho2: [S; 2],
    pub eps1: [S; 2],
    pub eps2: [S; 2],
    pub u1: [S; 2],
    pub eta: [S; 2],
    /// `∇_{e_x} e_y = gamma[x][y][0] ξ + gamma[x][y][1] v`.
    pub gamma: [[[S; 2]; 2]; 2],
    /// `∇*_{e_x} v = nabla_star_v[x] v`.
    pub nabla_star_v: [S; 2],
    /// `e_x(ḡ(v, v))`.
    pub d_vnorm: [S; 2],
    /// `∇̄_{e_x} e_y`, `∇̄_{e_x} N`, `∇̄_{e_x} u`.
    pub dbar: [[Vec4<S>; 2]; 2],
    pub dbar_n: [Vec4<S>; 2],
    pub dbar_u: [Vec4<S>; 2],
    pub eps: f64,
    pub eps_v: f64,
}

fn map2<S, T>(a: &[S; 2], f: impl Fn(&S) -> T) -> [T; 2] {
    [f(&a[0]), f(&a[1])]
}

fn map22<S, T>(a: &Form<S>, f: impl Fn(&S) -> T) -> Form<T> {
    [map2(&a[0], &f), map2(&a[1], &f)]
}

impl<S: Scalar> InducedPackage<S> {
    pub fn value(&self) -> InducedPackage<f64> {
        let v = |s: &S| s.value();
        InducedPackage {
            d1: map22(&self.d1, v),
            d2: map22(&self.d2, v),
            e1: map22(&self.e1, v),
            a_n: map22(&self.a_n, v),
            a_u: map22(&self.a_u, v),
            a_xi_star: map22(&self.a_xi_star, v),
            rho1: map2(&self.rho1, v),
            rho2: map2(&self.rho2, v),
            eps1: map2(&self.eps1, v),
            eps2: map2(&self.eps2, v),
            u1: map2(&self.u1, v),
            eta: map2(&self.eta, v),
            gamma: [map22(&self.gamma[0], v), map22(&self.gamma[1], v)],
            nabla_star_v: map2(&self.nabla_star_v, v),
            d_vnorm: map2(&self.d_vnorm, v),
            dbar: [map2(&self.dbar[0], |w| w.value()), map2(&self.dbar[1], |w| w.value())],
            dbar_n: map2(&self.dbar_n, |w| w.value()),
            dbar_u: map2(&self.dbar_u, |w| w.value()),
            eps: self.eps,
            eps_v: self.eps_v,
        }
    }
}

impl InducedPackage<f64> {
    /// Largest magnitude among the scalar entries; used to make residuals
    /// relative.
    pub fn scale(&self) -> f64 {
        let forms = [&self.d1, &self.d2, &self.e1, &self.a_n, &self.a_u, &self.a_xi_star];
        let ones = [&self.rho1, &self.rho2, &self.eps1, &self.eps2, &self.u1];
        let m = forms.iter().flat_map(|f| f.iter().flatten()).chain(ones.iter().flat_map(|o| o.iter())).fold(0.0f64, |a, b| a.max(b.abs()));
        m.max(1.0)
    }

    /// `D2(x, y)` in the coordinate-tangent basis: rows `X_1`, `X_2`.
    pub fn d2_coordinates(&self, frame: &MovingFrame) -> Form<f64> {
        to_coordinates(&self.d2, frame)
    }
}

/// Change of basis `{ξ, v} → {X_1, X_2}` for a bilinear form.
pub fn to_coordinates(form: &Form<f64>, frame: &MovingFrame) -> Form<f64> {
    // columns of P express ξ, v in X_1, X_2; invert to write X_i in ξ, v
    let p = [[frame.xi_dir[0], frame.v_dir[0]], [frame.xi_dir[1], frame.v_dir[1]]];
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    let q = [[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]];
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    out[i][j] += q[a][i] * q[b][j] * form[a][b];
                }
            }
        }
    }
    out
}

/// Fill every induced object from an order-2 frame field; the entries come
/// out as order-1 jets so that sections can differentiate them once more.
pub fn induced_package_from(field: &FrameField<Jet>, g: &AmbientMetric) -> Result<InducedPackage<Jet>, Error> {
    let dirs = [field.xi_dir, field.v_dir];
    let basis = [&field.xi, &field.v];
    let zero = Jet::constant(0.0);
    let dec = |w: &Vec4<Jet>| decompose(field, w, g);

    let mut dbar = [[Vec4::<Jet>::zero(), Vec4::zero()], [Vec4::zero(), Vec4::zero()]];
    let mut gamma = [[[zero; 2]; 2]; 2];
    let (mut d1, mut d2, mut e1) = ([[zero; 2]; 2], [[zero; 2]; 2], [[zero; 2]; 2]);
    let mut a_xi_star = [[zero; 2]; 2];
    let (mut u1, mut nabla_star_v) = ([zero; 2], [zero; 2]);
    for x in 0..2 {
        for y in 0..2 {
            let w = ambient_derivative(basis[y], &dirs[x])?;
            let [ax, av, au, an] = dec(&w);
            gamma[x][y] = [ax, av];
            d1[x][y] = an;
            d2[x][y] = au;
            if y == 1 {
                e1[x][1] = ax;
                nabla_star_v[x] = av;
            } else {
                u1[x] = ax;
                a_xi_star[x] = [zero, -av];
            }
            dbar[x][y] = w;
        }
    }

    let mut dbar_n = [Vec4::<Jet>::zero(), Vec4::zero()];
    let mut dbar_u = [Vec4::<Jet>::zero(), Vec4::zero()];
    let (mut a_n, mut a_u) = ([[zero; 2]; 2], [[zero; 2]; 2]);
    let (mut rho1, mut rho2, mut eps1, mut eps2) = ([zero; 2], [zero; 2], [zero; 2], [zero; 2]);
    let mut eta = [zero; 2];
    let mut d_vnorm = [zero; 2];
    let vnorm = g.norm_sq(&field.v);
    for x in 0..2 {
        let w = ambient_derivative(&field.n, &dirs[x])?;
        let [ax, av, au, an] = dec(&w);
        a_n[x] = [-ax, -av];
        rho1[x] = an;
        rho2[x] = au;
        dbar_n[x] = w;

        let w = ambient_derivative(&field.u, &dirs[x])?;
        let [ax, av, au, an] = dec(&w);
        a_u[x] = [-ax, -av];
        eps1[x] = an;
        eps2[x] = au;
        dbar_u[x] = w;

        eta[x] = g.inner(basis[x], &field.n);
        d_vnorm[x] = vnorm.directional(&dirs[x]).ok_or(Error::JetOrderExhausted("e_x(g(v,v))"))?;
    }

    Ok(InducedPackage {
        d1,
        d2,
        e1,
        a_n,
        a_u,
        a_xi_star,
        rho1,
        rho2,
        eps1,
        eps2,
        u1,
        eta,
        gamma,
        nabla_star_v,
        d_vnorm,
        dbar,
        dbar_n,
        dbar_u,
        eps: field.eps,
        eps_v: field.eps_v,
    })
}

/// Frame field and induced package (as jets) at `p`, optionally gauged.
pub fn induced_fields(s: &Surface, p: [f64; 2], backend: Backend, gauge: f64) -> Result<(FrameField<Jet>, InducedPackage<Jet>), Error> {
    let mut field = s.frame_field(p, backend)?;
    if gauge != 1.0 {
        field = field.gauge_transform(gauge)?;
    }
    let pkg = induced_package_from(&field, &s.metric)?;
    Ok((field, pkg))
}

/// Point values of the induced package on the jet backend.
pub fn induced_package(s: &Surface, p: [f64; 2]) -> Result<(MovingFrame, InducedPackage), Error> {
    let (field, pkg) = induced_fields(s, p, Backend::Jet, 1.0)?;
    Ok((field.value(), pkg.value()))
}

/// Named residuals of the structural identities, each relative to the
/// package scale.
pub fn identity_residuals(pkg: &InducedPackage, frame: &MovingFrame, g: &AmbientMetric) -> Vec<(&'static str, f64)> {
    let s = pkg.scale();
    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, |a, b| a.max(b.abs())) / s;
    let xs = || 0..2usize;
    let eps = pkg.eps;
    let basis = [frame.xi, frame.v];
    let op = |m: &Form<f64>, x: usize| basis[0] * m[x][0] + basis[1] * m[x][1];
    let ip = |a: &Vec4, b: &Vec4| g.inner(a, b);

    let mut out = vec![
        ("D1(X,xi) = 0", max(&mut xs().map(|x| pkg.d1[x][0]))),
        ("g(A_N X, N) = 0", max(&mut xs().map(|x| pkg.a_n[x][0]))),
        (
            "g(A_u X, Y) = eps D2(X,Y) + eps1(X) eta(Y)",
            max(&mut xs().flat_map(|x| {
                xs().map(move |y| ip(&op(&pkg.a_u, x), &basis[y]) - (eps * pkg.d2[x][y] + pkg.eps1[x] * pkg.eta[y]))
            })),
        ),
        ("eps1(X) = -eps D2(X,xi)", max(&mut xs().map(|x| pkg.eps1[x] + eps * pkg.d2[x][0]))),
        ("E1(X,PY) = g(A_N X, PY)", max(&mut xs().map(|x| pkg.e1[x][1] - ip(&op(&pkg.a_n, x), &frame.v)))),
        ("D1(X,PY) = g(A*_xi X, PY)", max(&mut xs().map(|x| pkg.d1[x][1] - ip(&op(&pkg.a_xi_star, x), &frame.v)))),
        ("A*_xi xi = 0", max(&mut pkg.a_xi_star[0].iter().copied())),
        ("eps2 = 0", max(&mut pkg.eps2.iter().copied())),
        ("u1 = -rho1", max(&mut xs().map(|x| pkg.u1[x] + pkg.rho1[x]))),
    ];

    // Gauss–Weingarten: the ambient derivative equals its reassembly.
    let mut gw = 0.0f64;
    for x in 0..2 {
        for y in 0..2 {
            let [gx, gv] = pkg.gamma[x][y];
            let rebuilt = basis[0] * gx + basis[1] * gv + frame.n * pkg.d1[x][y] + frame.u * pkg.d2[x][y];
            let w = pkg.dbar[x][y];
            gw = gw.max((w - rebuilt).norm_e() / w.norm_e().max(1.0));
        }
        let rebuilt_n = (basis[0] * pkg.a_n[x][0] + basis[1] * pkg.a_n[x][1]) * -1.0 + frame.n * pkg.rho1[x] + frame.u * pkg.rho2[x];
        let rebuilt_u = (basis[0] * pkg.a_u[x][0] + basis[1] * pkg.a_u[x][1]) * -1.0 + frame.n * pkg.eps1[x] + frame.u * pkg.eps2[x];
        gw = gw.max((pkg.dbar_n[x] - rebuilt_n).norm_e() / pkg.dbar_n[x].norm_e().max(1.0));
        gw = gw.max((pkg.dbar_u[x] - rebuilt_u).norm_e() / pkg.dbar_u[x].norm_e().max(1.0));
    }
    out.push(("Gauss-Weingarten reconstruction", gw));
    out.push((
        "X(g(v,v)) = 2 g(nabla*_X v, v)",
        max(&mut xs().map(|x| pkg.d_vnorm[x] - 2.0 * ip(&(frame.v * pkg.nabla_star_v[x]), &frame.v))),
    ));
    out
}
