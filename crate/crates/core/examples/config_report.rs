//! Describe a surface in a config file, run the checks and render the
//! report as a table and as JSON.

use halflight::cli::{run, RunOptions, SurfaceConfig};
use halflight::sections::DirectionKind;

const CONFIG: &str = r#"
schema = 1
name = "twisted_ruled"
description = "null rulings along a twisted spacelike curve"
signature = [-1, -1, 1, 1]
checks = ["frame", "identities", "planar_degenerate", "agreement_degenerate", "classify"]

[immersion]
form = "parametric"
coordinates = ["u1*cos(u2)", "u1*sin(u2)", "u1", "u2 + 0.1*u2^3"]
domain = [[0.1, 0.4], [-0.5, 0.5]]

[sample]
grid = [3, 3]

[expect]
totally_geodesic = false
"#;

fn main() -> Result<(), halflight::Error> {
    let cfg = SurfaceConfig::from_toml(CONFIG, "inline")?;
    let report = run(&cfg, &RunOptions::default())?;
    print!("{}", report.table());

    let single = run(
        &cfg,
        &RunOptions {
            point: Some([0.2, 0.1]),
            trace: Some(DirectionKind::Degenerate),
            ..RunOptions::default()
        },
    )?;
    let json = single.to_json();
    println!("{} bytes of JSON; first lines:", json.len());
    for line in json.lines().take(12) {
        println!("{line}");
    }

    match SurfaceConfig::from_toml(&CONFIG.replace("[3, 3]", "[3]"), "inline") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
