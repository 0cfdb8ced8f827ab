//! Trace the actual curve M ∩ E(p, w) numerically and compare its
//! derivatives with the jet formulas.

use halflight::fixtures;
use halflight::sections::{DirectionKind, LocalGeometry};
use halflight::surface::Backend;
use halflight::trace::{compare, trace_curve, DEFAULT_STEP};

fn main() -> Result<(), halflight::Error> {
    let p = [0.2, 0.1];
    for cfg in [fixtures::example_r41(), fixtures::null_helix(), fixtures::null_helicoid()] {
        let l = LocalGeometry::at(&cfg.surface, p, Backend::Jet)?;
        let f = &l.frame;
        for kind in DirectionKind::BOTH {
            let (w, dir) = match kind {
                DirectionKind::Degenerate => (f.xi, f.xi_dir),
                DirectionKind::Nondegenerate => (f.v, f.v_dir),
            };
            let curve = trace_curve(&cfg.surface, p, &w, dir, &f.n, &f.u, DEFAULT_STEP)?;
            let a = compare(&l.section_jet(kind)?, &curve);
            println!(
                "{:14} {:13} plane residual {:.1e}  jet vs trace: d1 {:.1e} d2 {:.1e} d3 {:.1e}",
                cfg.name,
                kind.name(),
                curve.plane_residual,
                a.d1,
                a.d2,
                a.d3
            );
        }
    }

    // on the R^4_1 example the screen section is the unit circle in x2, x4
    let cfg = fixtures::example_r41();
    let f = cfg.surface.frame(p)?;
    let curve = trace_curve(&cfg.surface, p, &f.v, f.v_dir, &f.n, &f.u, DEFAULT_STEP)?;
    for x in &curve.samples {
        println!("  x2^2 + x4^2 - 1 = {:+.1e}", x[1] * x[1] + x[3] * x[3] - 1.0);
    }
    Ok(())
}
