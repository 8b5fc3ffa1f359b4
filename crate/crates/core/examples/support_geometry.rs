//! Supports as unions of intervals: the polynomial `H`, branch signs of
//! `sqrt H` and which roots of the polynomial set fall in which gap.
//!
//! ```text
//! cargo run --example support_geometry
//! ```

use trace_lp::cli::Preset;
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let set = Preset::Quad.poly_set()?;
    let sigma = Support::new(Preset::Quad.endpoints())?;
    for (i, (a, b)) in sigma.intervals().enumerate() {
        println!("interval {i}: [{a}, {b}]  branch sign {:+}", sigma.branch_sign(i));
    }
    let map = sigma.validate(&set)?;
    for (j, roots) in map.gaps.iter().enumerate() {
        let (lo, hi) = sigma.gap(j);
        println!("gap ({lo:.4}, {hi:.4}) holds roots {roots:?}");
    }
    println!("below the support: {:?}", map.below);
    for x in [0.5, 1.0, 5.0] {
        println!("H({x}) = {:+.6e}, sqrt H outside = {:+.6e}", sigma.h(x), sigma.sqrt_h_outside(x));
    }

    // A support that swallows the root 1 of x - 1 is invalid.
    let bad = Support::new(vec![0.1, 0.7, 0.9, 4.0])?;
    println!("validation of a bad support: {:?}", bad.validate(&set).err());
    Ok(())
}
