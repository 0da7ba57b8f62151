//! Full triple-product tables along the tower.
//!
//! Every intersection number of three basis divisors, as a polynomial
//! in n, for each stage. Zero rows are kept: they carry the projection
//! formula (a pullback cubed dies against the exceptional divisor).

use chowtower::report::relation_table;
use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;

    for stage in pipeline.stages() {
        let table = relation_table(stage);
        println!("stage {}", table.stage);
        for entry in &table.entries {
            println!("  {:<12} = {}", entry.product, entry.value);
        }
    }

    // spot checks on the final stage
    let x2 = pipeline.final_model();
    let t = x2.triple_form();
    assert_eq!(t.get("E2", "E2", "E2"), "2n + 1".parse()?);
    assert_eq!(t.get("E2", "E2", "C0"), "n".parse()?);
    assert_eq!(t.get("E2", "E2", "F"), "-1".parse()?);
    assert_eq!(t.get("E1", "E1", "E1"), "3n + 1".parse()?);
    Ok(())
}
