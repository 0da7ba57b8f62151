//! The two blow-ups: center degrees, normal bundles, and the ruled
//! surfaces the exceptional divisors become.

use chowtower::Pipeline;

fn main() -> chowtower::Result<()> {
    let pipeline = Pipeline::builtin()?;

    for (k, bl) in pipeline.blowups().iter().enumerate() {
        let exc = bl.exceptional();
        let (deg_a, deg_b) = bl.normal_degrees();
        println!("blow-up {} introduces {}", k + 1, exc);
        println!("  normal bundle degrees on the center: ({deg_a}, {deg_b})");
        println!("  c1 of the normal bundle: {}", bl.normal_c1());

        let surface = bl
            .model()
            .surface(exc)
            .expect("pipeline registers each exceptional surface");
        println!("  {} is the Hirzebruch surface F_({})", exc, surface.model().index());
        for sym in bl.model().basis() {
            let r = surface.restriction_of(sym)?;
            if !r.is_zero() {
                println!("    {}|_{} = {}", sym, exc, r);
            }
        }

        // e(E) on the stage where E was just created
        let class = chowtower::threefold::DivClass::sym(exc);
        println!("  euler({exc}) = {}", bl.model().euler_divisor(&class)?);
    }

    let e1 = pipeline.blowups()[0]
        .model()
        .surface("E1")
        .unwrap()
        .restriction_of("E1")?;
    assert_eq!(e1.to_string(), "-g - (2n + 1)*f");
    Ok(())
}
