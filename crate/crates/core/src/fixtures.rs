//! Built-in surfaces: the shipped fixture files and seeded random families
//! of half-lightlike surfaces in `R⁴₂`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ambient::AmbientMetric;
use crate::cli::config::SurfaceConfig;
use crate::exprjet::Immersion;
use crate::surface::Surface;

macro_rules! fixture {
    ($fn_name:ident, $file:literal) => {
        pub fn $fn_name() -> SurfaceConfig {
            SurfaceConfig::from_toml(include_str!(concat!("../fixtures/", $file)), $file).expect(concat!($file, " is valid"))
        }
    };
}

fixture!(example_ex1, "example_ex1.cfg");
fixture!(example_ex1_screen, "example_ex1_screen.cfg");
fixture!(example_r41, "example_r41.cfg");
fixture!(null_helix, "null_helix.cfg");
fixture!(null_helicoid, "null_helicoid.cfg");
fixture!(null_plane, "null_plane.cfg");

/// The three worked examples: the graph surface along `ξ`, the same surface
/// along its screen, and the `R⁴₁` surface.
pub fn worked_examples() -> Vec<SurfaceConfig> {
    vec![example_ex1(), example_ex1_screen(), example_r41()]
}

/// Degenerate non-planar (helix) and non-degenerate non-planar (helicoid).
pub fn counterexamples() -> Vec<SurfaceConfig> {
    vec![null_helix(), null_helicoid()]
}

pub fn all() -> Vec<SurfaceConfig> {
    let mut out = worked_examples();
    out.extend(counterexamples());
    out.push(null_plane());
    out
}

fn coef(rng: &mut ChaCha8Rng, a: f64) -> f64 {
    (rng.gen_range(-a..a) * 1e4).round() / 1e4
}

/// `X = (s cos φ(t), s sin φ(t), s, h(t))` with random polynomial `φ`, `h`.
/// `∂_s X` is null and orthogonal to `∂_t X`, and the coefficient ranges keep
/// `ḡ(X_t, X_t) = h′² − s²φ′² > 0` on the domain `[-0.4, 0.4] × [-0.5, 0.5]`.
pub fn random_ruled(seed: u64) -> Surface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a1, a2) = (coef(&mut rng, 1.0), coef(&mut rng, 0.5));
    let (b, c) = (coef(&mut rng, 0.2), coef(&mut rng, 0.2));
    let phi = format!("({a1})*u2 + ({a2})*u2^2");
    let h = format!("u2 + ({b})*u2^2 + ({c})*u2^3");
    let m = Immersion::parametric(
        [&format!("u1*cos({phi})"), &format!("u1*sin({phi})"), "u1", &h],
        [[-0.4, 0.4], [-0.5, 0.5]],
    )
    .expect("generated expressions parse");
    Surface::new(format!("ruled-{seed}"), m, AmbientMetric::r42())
}

/// `x3 = (x1 + x2)/√2`, `x4 = f(x1 − x2)`: degenerate for any `f`, with
/// radical `(1, 1, √2, 0)`. `f` is a random cubic plus a sine with
/// `|f′| < 1/√2` on the domain, which keeps the radical one-dimensional.
pub fn random_graph(seed: u64) -> Surface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (c2, c3, k) = (coef(&mut rng, 0.15), coef(&mut rng, 0.05), coef(&mut rng, 0.15));
    let f = format!("({c2})*(x1 - x2)^2 + ({c3})*(x1 - x2)^3 + ({k})*sin(x1 - x2)");
    let m = Immersion::graph([1, 2], [(3, "(x1 + x2)/sqrt(2)"), (4, &f)], [[-0.5, 0.5], [-0.5, 0.5]]).expect("generated expressions parse");
    Surface::new(format!("graph-{seed}"), m, AmbientMetric::r42())
}

/// Uniform points in the domain box of `s`.
pub fn random_points(s: &Surface, n: usize, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [[a, b], [c, d]] = s.immersion.domain();
    (0..n).map(|_| [rng.gen_range(a..b), rng.gen_range(c..d)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{induced_metric, StructureKind};
    use crate::surface::Backend;

    #[test]
    fn shipped_fixtures_load() {
        let names: Vec<String> = all().into_iter().map(|c| c.name).collect();
        assert_eq!(names, ["example_ex1", "example_ex1_screen", "example_r41", "null_helix", "null_helicoid", "null_plane"]);
    }

    #[test]
    fn random_families_are_half_lightlike() {
        for seed in 0..20 {
            for s in [random_ruled(seed), random_graph(seed)] {
                for p in random_points(&s, 5, seed) {
                    let jet = s.jet(p, Backend::Jet).unwrap();
                    let m = induced_metric(&jet, &s.metric);
                    assert_eq!(m.kind, StructureKind::HalfLightlike, "{} at {p:?}", s.name);
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(random_ruled(7), random_ruled(7));
        assert_ne!(random_ruled(7), random_ruled(8));
        assert_eq!(random_points(&random_graph(1), 3, 2), random_points(&random_graph(1), 3, 2));
    }
}
