//! The frame {xi, v, u, N} on the first worked example, pinned to the
//! configured vectors and in auto mode, plus the gauge xi -> alpha xi.

use halflight::fixtures;
use halflight::frame::{frame_residuals, gauge_transform, induced_metric};
use halflight::surface::Backend;

fn main() -> Result<(), halflight::Error> {
    let cfg = fixtures::example_ex1();
    let p = [0.3, -0.2];
    let s = &cfg.surface;
    let jet = s.jet(p, Backend::Jet)?;
    let m = induced_metric(&jet, &s.metric);
    println!("induced metric {:?}: {:?}, eigenvalues {:?}", m.kind, m.matrix, m.eigenvalues);

    for (label, surface) in [("pinned", s.clone()), ("auto", s.without_pins())] {
        let f = surface.frame(p)?;
        println!("{label}: xi {:?}\n  v {:?} (eps_v {})\n  u {:?} (eps {})\n  N {:?}", f.xi.0, f.v.0, f.eps_v, f.u.0, f.eps, f.n.0);
        let worst = frame_residuals(&f, &s.metric).into_iter().fold(0.0f64, |m, (_, r)| m.max(r));
        println!("  worst frame relation residual {worst:.1e}");
    }

    let f = s.frame(p)?;
    for alpha in [0.5, 2.0, -3.0] {
        let g = gauge_transform(&f, alpha)?;
        println!("alpha {alpha}: N* = {:?}, g(N*, xi*) = {}", g.n.0, s.metric.inner(&g.n, &g.xi));
    }
    Ok(())
}
