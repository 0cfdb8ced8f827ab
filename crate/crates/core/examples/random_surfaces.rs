//! Seeded random half-lightlike surfaces, for property runs and benchmarks.

use halflight::fixtures::{random_graph, random_points, random_ruled};
use halflight::forms::identity_residuals;
use halflight::sections::{planarity, DirectionKind, LocalGeometry};
use halflight::surface::Backend;

fn main() -> Result<(), halflight::Error> {
    for seed in 0..4 {
        for s in [random_ruled(seed), random_graph(seed)] {
            println!("{}: {:?}", s.name, s.immersion.coords().iter().map(|e| e.to_string()).collect::<Vec<_>>());
            for p in random_points(&s, 2, seed) {
                let l = LocalGeometry::at(&s, p, Backend::Jet)?;
                let worst = identity_residuals(&l.pkg, &l.frame, &s.metric).into_iter().fold(0.0f64, |m, (_, r)| m.max(r));
                let planar = DirectionKind::BOTH.map(|k| l.section_jet(k).map(|j| planarity(&j, 1e-8).0));
                println!("  {p:.3?}: identities {worst:.1e}, planar (xi, v) {planar:?}");
            }
        }
    }
    Ok(())
}
