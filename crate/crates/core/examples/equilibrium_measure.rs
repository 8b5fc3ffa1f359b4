//! Equilibrium measure of a union of intervals: the density
//! `|P_eq(x)| / (pi sqrt|H(x)|)` and its constant potential on the support.
//!
//! ```text
//! cargo run --example equilibrium_measure
//! ```

use trace_lp::measures::{collocation_points, equilibrium};
use trace_lp::quadrature::Grid;
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let sigma = Support::new(vec![0.1, 0.8, 1.4, 2.0, 2.9, 4.6])?;
    let eq = equilibrium(&sigma, &Grid::new(256))?;
    println!("mass {:.15}", eq.mass());
    let pts = collocation_points(&sigma, 8);
    let u = eq.potentials(&pts);
    let (lo, hi) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    println!("potential on the support in [{lo:.15}, {hi:.15}]");
    println!("log capacity {:.15}", 0.5 * (lo + hi));
    for (i, (a, b)) in sigma.intervals().enumerate() {
        let m = 0.5 * (a + b);
        println!("interval {i}: mass {:.6}, density at midpoint {:.6}", eq.integrate(|x| if sigma.interval_of(x) == Some(i) { 1.0 } else { 0.0 }), eq.density(m));
    }
    for x in [0.5, 1.1, 5.0] {
        println!("U({x}) = {:.6}", eq.potential(x));
    }
    Ok(())
}
