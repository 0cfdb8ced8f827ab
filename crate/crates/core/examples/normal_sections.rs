//! Normal-section jets along xi and v, the planarity verdict and the
//! residuals of the characterizing theorems.

use halflight::fixtures;
use halflight::sections::{planarity, DirectionKind, LocalGeometry};
use halflight::surface::Backend;

fn main() -> Result<(), halflight::Error> {
    let p = [0.2, 0.1];
    for cfg in fixtures::all() {
        let l = LocalGeometry::at(&cfg.surface, p, Backend::Jet)?;
        println!("{}", cfg.name);
        for kind in DirectionKind::BOTH {
            let jet = l.section_jet(kind)?;
            let (planar, r) = planarity(&jet, 1e-8);
            println!(
                "  {:13} planar {planar:5} (wedge {r:.1e})  eps kappa^2 {:+.4}  d/ds {:+.4}  geodesic arc {}",
                kind.name(),
                jet.kappa_sq,
                jet.d_kappa_sq,
                jet.geodesic_arc
            );
        }
        let [gh_xi, gh_v] = l.geodesic_h_residuals()?;
        println!(
            "  theorem residuals: xi {:.1e}, v {:.1e} (with v wedged in {:.1e}); h^nabla h: xi {gh_xi:.1e}, v {gh_v:.1e}",
            l.theorem31_residual()?,
            l.theorem_nd_residual()?,
            l.theorem_nd_residual_mod_v()?
        );
        match l.plane_coefficients() {
            Ok((a, b)) => println!("  gamma''' = {a:.4} gamma'' + {b:.4} gamma'"),
            Err(e) => println!("  plane coefficients: {e}"),
        }
    }
    Ok(())
}
