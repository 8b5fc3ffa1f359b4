//! Balayage of the roots of `x^2 - 3x + 1` onto a support: a probability
//! measure whose potential equals `log|Q| / deg Q` plus a constant on the
//! support.
//!
//! ```text
//! cargo run --example balayage_of_roots
//! ```

use trace_lp::measures::{collocation_points, log_potential_measure};
use trace_lp::polyarith::{real_roots, IntPoly};
use trace_lp::quadrature::Grid;
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let q = IntPoly::from_i64(&[1, -3, 1]);
    let roots = real_roots(&q, 1e-15)?;
    let sigma = Support::new(vec![0.07, 0.30, 0.48, 0.71, 1.35, 2.33, 2.94, 4.59])?;
    let mu_q = log_potential_measure(&sigma, &q, &roots, &Grid::new(256))?;
    println!("roots {roots:?}, mass {:.15}", mu_q.mass());
    let pts = collocation_points(&sigma, 6);
    let u = mu_q.potentials(&pts);
    let diffs: Vec<f64> = pts
        .iter()
        .zip(&u)
        .map(|(&x, &ux)| ux - q.eval(x).abs().ln() / 2.0)
        .collect();
    let (lo, hi) = diffs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    println!("U - log|Q|/2 on the support in [{lo:.12}, {hi:.12}]");
    Ok(())
}
