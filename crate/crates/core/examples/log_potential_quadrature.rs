//! Chebyshev product integration of logarithmic potentials and Cauchy
//! transforms, compared with the closed forms for the arcsine law on [0, 4]
//! (potential 0 on the interval, `log|(x - 2 + sqrt(x^2 - 4x)) / 2|` outside).
//!
//! ```text
//! cargo run --example log_potential_quadrature
//! ```

use trace_lp::quadrature::{Discretized, Grid};
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let sigma = Support::new(vec![0.0, 4.0])?;
    let arcsine = Discretized::from_numerator(&Grid::new(64), &sigma, |_, _| 1.0);
    println!("mass {:.15}", arcsine.mass());
    for x in [0.3f64, 2.0, 3.9, -1.0, 5.0, 17.0] {
        let exact = if (0.0..=4.0).contains(&x) {
            0.0
        } else {
            let w = x - 2.0 + (x - 2.0).signum() * (x * x - 4.0 * x).sqrt();
            (w / 2.0).abs().ln()
        };
        println!(
            "U({x:5}) = {:+.15}  exact {:+.15}  cauchy {:+.6}",
            arcsine.potential(x),
            exact,
            arcsine.cauchy(x)
        );
    }
    Ok(())
}
