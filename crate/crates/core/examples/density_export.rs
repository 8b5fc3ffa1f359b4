//! Samples the primal and dual densities and potentials of the `{x, x - 1}`
//! solution at the reference support and prints the CSV.
//!
//! ```text
//! cargo run --example density_export > pair.csv
//! ```

use trace_lp::cli::Preset;
use trace_lp::measures::{rows_to_csv, sample_density};
use trace_lp::primal_dual::{evaluate, Problem, SolverConfig};
use trace_lp::support::Support;

fn main() -> trace_lp::Result<()> {
    let problem = Problem::new(Preset::Pair.poly_set()?)?;
    let sigma = Support::new(Preset::Pair.endpoints())?;
    let ev = evaluate(&problem, &sigma, &SolverConfig::default())?;
    let rows = sample_density(&ev.primal.mu, &ev.dual.nu, 25);
    print!("{}", rows_to_csv(&rows));
    Ok(())
}
