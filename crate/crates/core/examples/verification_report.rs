//! Full verification report in both modes.

use planespan::{generate, verify_theorem, Distribution, Mode, Region};

fn main() -> planespan::Result<()> {
    let points = generate(500, Distribution::Uniform, Region::unit(), 4)?;
    let report = verify_theorem(&points, 14, Mode::Euclidean)?;
    print!("{}", report.to_key_value());

    let points = generate(300, Distribution::Uniform, Region::new(6.0, 6.0)?, 4)?;
    let report = verify_theorem(&points, 14, Mode::Udg)?;
    println!("{}", report.to_json());
    Ok(())
}
