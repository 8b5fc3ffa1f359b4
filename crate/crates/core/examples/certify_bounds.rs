//! Solves the four-polynomial problem and certifies numerical lower and
//! upper bounds on its value.
//!
//! ```text
//! cargo run --release --example certify_bounds
//! ```

use trace_lp::cli::{round_endpoints, Preset, PRESET_TOL};
use trace_lp::descent::{solve, DescentConfig};
use trace_lp::primal_dual::{Problem, SolverConfig};
use trace_lp::support::Support;
use trace_lp::verify::{inspect, VerifyConfig};

fn main() -> trace_lp::Result<()> {
    let problem = Problem::new(Preset::Cubic.poly_set()?)?;
    let init = Support::new(round_endpoints(&Preset::Cubic.endpoints(), 3))?;
    let solver = SolverConfig {
        nodes_per_interval: 128,
        ..SolverConfig::default()
    };
    let cfg = DescentConfig {
        tol_obj: PRESET_TOL,
        ..DescentConfig::default()
    };
    let out = solve(&problem, &init, &solver, &cfg)?;
    let report = inspect(&problem, &out.evaluation, &VerifyConfig::default())?;
    println!("{:.10} <= Lambda <= {:.10}", report.lower, report.upper);
    println!("delta = {:.3e}", report.delta);
    for c in &report.endpoint_checks {
        println!(
            "a_{:<2} {:5}  d|n_nu| {:>10.3}  d|P_eq| {:>10.3}",
            c.index,
            if c.left { "left" } else { "right" },
            c.nu_slope,
            c.eq_slope
        );
    }
    println!("failures: {:?}", report.failures);
    Ok(())
}
