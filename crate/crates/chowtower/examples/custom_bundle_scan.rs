//! Scan other split bundles over other bases.
//!
//! The degree integral(c1 . c2) = 24 is insensitive to the bundle twist
//! and to the base index; the finer series analysis is tied to the
//! twist (2, -1). This example scans a grid and reports both.

use chowtower::bundle::{BundleSpec, Scroll};
use chowtower::linsys::LinearSeries;

fn main() -> chowtower::Result<()> {
    println!("x   y   base     c1.c2   euler   series analysis");
    for (x, y) in [(0, 0), (1, 0), (1, 3), (2, -1), (3, -2)] {
        for index in ["0", "1", "n", "2n + 1"] {
            let scroll = Scroll::new(index.parse()?, BundleSpec { x, y })?;
            let degree = scroll.model().c2_dot(scroll.model().c1())?;
            let series = match LinearSeries::new(&scroll) {
                Ok(_) => "supported",
                Err(_) => "-",
            };
            println!(
                "{:<3} {:<3} {:<10} {:<7} {:<7} {}",
                x,
                y,
                format!("F_({index})"),
                degree.to_string(),
                scroll.model().euler().to_string(),
                series
            );
            assert_eq!(degree, "24".parse()?);
        }
    }

    // a tower file can swap in any of these bundles
    let custom = "\
[base]
index = \"2n + 1\"

[bundle]
x = 1
y = 3
";
    let spec = chowtower::TowerSpec::parse(custom)?;
    let pipeline = chowtower::Pipeline::build(spec)?;
    println!(
        "\ncustom tower: stage {} over F_(2n + 1), c1 = {}",
        pipeline.final_model().name(),
        pipeline.final_model().c1()
    );
    Ok(())
}
