//! Inner products, causal characters and wedge tests in R^4_2 and R^4_1.

use halflight::ambient::{causal_character, relative_wedge_residual, triple_wedge, AmbientMetric, Vec4};

fn main() {
    let g = AmbientMetric::r42();
    let xi = Vec4::new(1.0, 1.0, 2f64.sqrt(), 0.0);
    let n = Vec4::new(-0.5, 0.5, 1.0 / 2f64.sqrt(), 0.0);
    println!("signature {:?}, index {}", g.signs(), g.index());
    println!("g(xi,xi) = {}, g(N,N) = {}, g(N,xi) = {}", g.inner(&xi, &xi), g.inner(&n, &n), g.inner(&n, &xi));
    for v in [xi, Vec4::basis(0), Vec4::basis(3), Vec4::zero()] {
        println!("{:?} is {:?}", v.0, causal_character(&g, &v, 1e-12));
    }

    // the same null vector is timelike in R^4_1
    println!("in R^4_1: {:?}", causal_character(&AmbientMetric::r41(), &xi, 1e-12));

    // three vectors are dependent iff their wedge vanishes
    let a = Vec4::new(1.0, 0.0, 0.0, 1.0);
    let b = Vec4::new(0.0, 1.0, 1.0, 0.0);
    println!("a^b^(a+2b) = {:.1e}", relative_wedge_residual(&a, &b, &(a + b * 2.0)));
    println!("a^b^xi     = {:.3}", relative_wedge_residual(&a, &b, &xi));
    println!("Hodge dual of a^b^xi: {:?}", triple_wedge(&a, &b, &xi).0);
}
