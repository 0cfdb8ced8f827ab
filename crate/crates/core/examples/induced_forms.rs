//! Second fundamental forms, shape operators and connection forms, with
//! the structure identities they satisfy.

use halflight::fixtures;
use halflight::forms::{identity_residuals, induced_package};

fn main() -> Result<(), halflight::Error> {
    for cfg in [fixtures::example_ex1(), fixtures::null_helicoid()] {
        let p = [0.3, -0.2];
        let (frame, pkg) = induced_package(&cfg.surface, p)?;
        println!("{} at {p:?} (basis xi, v)", cfg.name);
        println!("  D1 {:?}\n  D2 {:?}\n  E1 {:?}", pkg.d1, pkg.d2, pkg.e1);
        println!("  A_N {:?}\n  A_u {:?}\n  A*_xi {:?}", pkg.a_n, pkg.a_u, pkg.a_xi_star);
        println!("  rho1 {:?} rho2 {:?} eps1 {:?} u1 {:?}", pkg.rho1, pkg.rho2, pkg.eps1, pkg.u1);
        for (name, r) in identity_residuals(&pkg, &frame, &cfg.surface.metric) {
            println!("  {r:9.1e}  {name}");
        }
    }
    Ok(())
}
