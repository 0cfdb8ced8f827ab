//! Region-level verdicts for every built-in surface, and the screen mean
//! curvature of the first worked example checked against the reference value -1/(1+t^4).

use halflight::ambient::Vec4;
use halflight::classify::{classify, sample_points, umbilical_triple};
use halflight::fixtures;
use halflight::surface::Backend;

fn main() -> Result<(), halflight::Error> {
    for cfg in fixtures::all() {
        let c = classify(&cfg.surface, &cfg.sample(), Backend::Jet, 1e-8)?;
        println!(
            "{:19} geodesic {:5} umbilical {:5} minimal {:5} irrotational {:5} screen conformal {:?}",
            cfg.name,
            c.totally_geodesic.holds,
            c.totally_umbilical.holds,
            c.minimal.holds,
            c.irrotational.holds,
            c.screen_conformal.kind
        );
        println!("{:19} K_xi(H) at first point {:+.4}, violations {:?}", "", c.null_sectional_curvature[0], c.implication_violations(1e-8));
    }

    let cfg = fixtures::example_ex1();
    for t in [0.0, 0.5] {
        let p = [0.1 + t, 0.1];
        let c = 1.0 + t * t;
        let u2 = Vec4::new(0.0, 2f64.sqrt() * c, c, -(2f64.sqrt()) * t);
        for backend in [Backend::Jet, Backend::Fd] {
            let q = &sample_points(&cfg.surface, &[p], backend)?[0];
            let tr = umbilical_triple(&q.frame, &q.pkg, &cfg.surface.metric, &u2, 1e-6)?;
            println!(
                "t = {t}, {backend:?}: D2(U2,U2) = {:.6}, g(U2,U2) = {:.6}, H2 = {:.6}; reference -1/(1+t^4) = {:.6}",
                tr.d2,
                tr.norm,
                tr.h2,
                -1.0 / (1.0 + t.powi(4))
            );
        }
    }
    Ok(())
}
