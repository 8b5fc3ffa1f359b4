//! Builds the dual measure `nu`, its coefficients and the primal mixture at a
//! fixed support (the reference seven-interval support for the four-polynomial
//! set), and prints the residuals that drive the descent.
//!
//! ```text
//! cargo run --release --example primal_dual_at_support
//! ```

use trace_lp::cli::Preset;
use trace_lp::primal_dual::{evaluate, Problem, SolverConfig};
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let problem = Problem::new(Preset::Cubic.poly_set()?)?;
    let sigma = Support::new(Preset::Cubic.endpoints())?;
    let ev = evaluate(&problem, &sigma, &SolverConfig::default())?;
    let d = &ev.dual;
    println!("c = {:.8}, X_lin = {:.8}, X_eq = {:.8}", d.c, d.x_lin, d.x_eq);
    println!("X_Q = {:?}", d.x_q);
    println!("lambda_Q = {:?}", d.lambda_q);
    println!("lambda_0 = {:.10}", d.lambda_0);
    let p = &ev.primal;
    println!("Y = {:.8} {:?}", p.eq_weight, p.weights);
    println!("trace of mu = {:.10}", p.trace);
    println!("max residual {:.3e}", ev.residuals.max_abs());
    Ok(())
}
