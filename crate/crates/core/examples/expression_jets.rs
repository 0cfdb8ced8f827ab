//! Parse coordinate expressions and compare exact Taylor jets with
//! Richardson finite differences.

use halflight::exprjet::{immersion_jet, parse, Immersion, Jet};
use halflight::fd::immersion_jet_fd;

fn main() -> Result<(), halflight::Error> {
    let e = parse("2^3^2 - sqrt(2)*cos(u1)*u2").unwrap();
    println!("2^3^2 - sqrt(2) cos(0.3) 0.5 = {}", e.eval(&[0.3, 0.5]).unwrap());

    // a jet in u1 at 0.3 carries f, f', f'', f''' exactly
    let j: Jet = e.eval(&[Jet::variable(0, 0.3), Jet::constant(0.5)]).unwrap();
    println!("d/du1 = {}, d2/du1^2 = {}, d3/du1^3 = {}", j.coefficient(1, 0), j.coefficient(2, 0), j.coefficient(3, 0));

    match parse("sin(u1") {
        Err(err) => println!("parse error at {}: {err}", err.position()),
        Ok(_) => unreachable!(),
    }

    let m = Immersion::graph([1, 2], [(3, "(x1 + x2)/sqrt(2)"), (4, "0.5*log(1 + (x1 - x2)^2)")], [[-1.0, 1.0], [-1.0, 1.0]])?;
    let p = [0.3, -0.2];
    let exact = immersion_jet(&m, p)?;
    let fd = immersion_jet_fd(&m, p)?;
    for k in 0..4 {
        let (a, b) = (exact.jet3(k), fd.jet3(k));
        println!("x{}: exact {:?}\n    fd    {:?}", k + 1, a, b);
    }

    match m.point([0.0, 0.0]).and_then(|_| Immersion::parametric(["u1", "u2", "log(u1)", "0"], [[-1.0, 1.0], [-1.0, 1.0]])?.point([-0.5, 0.0])) {
        Err(err) => println!("domain error: {err}"),
        Ok(x) => println!("{x:?}"),
    }
    Ok(())
}
