//! The branched double cover of the final stage and the K3 surface
//! sitting over the last exceptional divisor.

use chowtower::threefold::DivClass;
use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;
    let cover = pipeline.cover().expect("builtin tower carries a cover");

    println!("branch divisor     B = {}", cover.branch());
    println!("euler(B)             = {}", cover.branch_euler()?);
    println!("euler(cover)         = {}", cover.euler());
    println!("K of cover pulls back from {}", cover.canonical_pullback());

    // the pair (X2, E2) is log Calabi-Yau: K + B/2 + E2 = 0
    let log_cy = cover.verify_log_cy(&DivClass::sym("E2"))?;
    println!(
        "K + B/2 + E2 = {} ({})",
        log_cy.residual,
        if log_cy.passes { "log Calabi-Yau" } else { "not log CY" }
    );
    assert!(log_cy.passes);

    // over E2 the cover restricts to a K3 surface
    let k3 = cover.k3_check("E2")?;
    println!("\nover the surface {}:", k3.surface);
    println!("  B|_S               = {}", k3.branch_restriction);
    println!("  equals -2K_S       = {}", k3.anticanonical_match);
    println!("  genus of branch curve = {}", k3.genus);
    println!("  euler of branch curve = {}", k3.ramification_euler);
    println!("  euler of double cover = {}", k3.cover_euler);
    assert!(k3.passes);
    assert_eq!(k3.cover_euler, "24".parse()?);
    Ok(())
}
