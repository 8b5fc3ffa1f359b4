//! Levenberg–Marquardt descent on the endpoints for `{x, x - 1}`, started
//! from the reference support rounded to three decimals.
//!
//! ```text
//! RUST_LOG=info cargo run --release --example descent_pair
//! ```

use trace_lp::cli::{round_endpoints, Preset};
use trace_lp::descent::{solve, DescentConfig};
use trace_lp::primal_dual::{Problem, SolverConfig};
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let problem = Problem::new(Preset::Pair.poly_set()?)?;
    let init = Support::new(round_endpoints(&Preset::Pair.endpoints(), 3))?;
    let cfg = DescentConfig {
        tol_obj: 1e-20,
        ..DescentConfig::default()
    };
    let out = solve(&problem, &init, &SolverConfig::default(), &cfg)?;
    println!("converged {} after {} iterations", out.converged, out.state.iter);
    println!("endpoints {:?}", out.state.endpoints);
    println!(
        "lambda_0 {:.10}, trace {:.10}",
        out.evaluation.dual.lambda_0, out.evaluation.primal.trace
    );
    Ok(())
}
