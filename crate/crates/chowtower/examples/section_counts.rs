//! Section counts of the half-anticanonical filtration D_i = -2K - i*(tau + A).
//!
//! Counts sections exactly for small n, then finds the least n from which
//! every count follows a single linear form in n.

use chowtower::linsys::{LinearSeries, SERIES_LEN};
use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;
    let series = LinearSeries::new(pipeline.scroll())?;

    println!("n    h0(D0)  h0(D1)  h0(D2)  h0(D3)  h0(D4)");
    for n0 in 1..=12 {
        let dims: Vec<i64> = (0..SERIES_LEN as i64)
            .map(|i| pipeline.scroll().h0(n0, &series.divisor(i)))
            .collect::<chowtower::Result<_>>()?;
        println!(
            "{:<4} {:<7} {:<7} {:<7} {:<7} {}",
            n0, dims[0], dims[1], dims[2], dims[3], dims[4]
        );
    }

    let profile = series.stabilized_dims(1, 60)?;
    println!("\nstable linear forms (exact from n = {}):", profile.stable_from);
    for (i, form) in profile.forms.iter().enumerate() {
        println!("  h0(D{i}) = {form}  (from n = {})", profile.series_stable_from[i]);
    }
    for (i, drop) in profile.drops.iter().enumerate() {
        println!("  h0(D{i}) - h0(D{}) = {drop}", i + 1);
    }

    assert_eq!(profile.forms[0].to_string(), "14n + 61");
    assert_eq!(profile.forms[4].to_string(), "2n + 7");
    assert_eq!(profile.stable_from, 5);
    Ok(())
}
