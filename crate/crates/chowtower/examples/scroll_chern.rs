//! Chern data of every stage of the default tower.
//!
//! Prints c1, c2, the canonical class, and the Euler number for the
//! bundle stage and for each blow-up, then checks the degree
//! integral(c1 . c2) = 24 on the bundle stage.

use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;

    for stage in pipeline.stages() {
        println!("stage {}", stage.name());
        println!("  c1    = {}", stage.c1());
        println!("  K     = {}", stage.canonical());
        println!("  euler = {}", stage.euler());
        for ((a, b), v) in stage.c2().terms() {
            println!("  c2[{a}.{b}] = {v}");
        }
    }

    let x = pipeline.scroll().model();
    let degree = x.c2_dot(x.c1())?;
    println!("integral(c1 . c2) on {} = {}", x.name(), degree);
    assert_eq!(degree, "24".parse()?);
    Ok(())
}
