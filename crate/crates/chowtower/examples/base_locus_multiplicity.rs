//! Base locus of |-2K| on the bundle stage and the vanishing order of
//! its members along the base curve.
//!
//! The argument runs in four steps, each verified symbolically or at
//! sample values of n, and ends with the curve cut out by two divisors.
//! The multiplicity table shows the generic vanishing order settling
//! at 3 as n grows.

use chowtower::linsys::LinearSeries;
use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;
    let series = LinearSeries::new(pipeline.scroll())?;

    let locus = series.base_locus()?;
    for (i, step) in locus.steps.iter().enumerate() {
        println!("step {}: {}", i + 1, step.name);
        println!("        {}", step.detail);
    }
    println!(
        "base locus: the curve ({}) . ({})",
        locus.center.0, locus.center.1
    );

    println!("\nn    multiplicity along the curve");
    for n0 in 1..=8 {
        println!("{:<4} {}", n0, series.multiplicity(n0)?);
    }

    let filt = series.filtration(10)?;
    assert_eq!(filt.multiplicity, 3);
    assert!(filt.surjective.iter().all(|s| *s));
    Ok(())
}
