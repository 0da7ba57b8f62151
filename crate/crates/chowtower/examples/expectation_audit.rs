//! Audit the built tower against the bundled expectations table.
//!
//! Rebuilds every stage from the embedded tower description, renders
//! each claimed value, and compares strings one by one. Ends with the
//! list of facts the checks take on faith.

use chowtower::report;
use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;
    let audit = report::reproduce(&pipeline, 1, 60)?;

    let mut failed = 0;
    for check in &audit.checks {
        if check.pass {
            println!("ok    {} = {}", check.key, check.actual);
        } else {
            println!(
                "FAIL  {}: expected {}, got {}",
                check.key, check.expected, check.actual
            );
            failed += 1;
        }
    }
    if let Some(n0) = audit.stable_from {
        println!(
            "\nsection table exact from n = {n0} ({} rows checked numerically)",
            audit.table_rows_checked
        );
    }
    println!("\nassumed, not verified here:");
    for a in &audit.assumptions {
        println!("  - {a}");
    }
    println!(
        "\n{} checks, {} failed",
        audit.checks.len(),
        failed
    );
    assert!(audit.pass);
    Ok(())
}
