//! The two closed-form cases: the empty set (value 2 on [0, 4]) and the
//! single polynomial `x`, solved by damped Newton.
//!
//! ```text
//! cargo run --example closed_forms
//! ```

use trace_lp::closedform::{schur, serre_solve};

fn main() -> trace_lp::Result<()> {
    let s = schur(128)?;
    let ev = &s.evaluation;
    println!("empty set: Lambda = {}, lambda_0 = {:.15}, trace = {:.15}", s.lambda, ev.dual.lambda_0, ev.primal.trace);
    for x in [0.5, 2.0, 3.5] {
        println!("  U_nu'({x}) = {:+.12}  (x - 2 = {:+})", ev.dual.nu.potential(x) / ev.dual.x_lin, x - 2.0);
    }

    let sol = serre_solve(1e-15)?;
    println!("{{x}}: Lambda = {:.12}", sol.lambda);
    println!("  support [{:.10}, {:.10}], t = {:.6}", sol.a, sol.b, sol.t);
    println!("  x_hat = {:.12}, y_hat = {:.12}", sol.x_hat, sol.y_hat);
    Ok(())
}
