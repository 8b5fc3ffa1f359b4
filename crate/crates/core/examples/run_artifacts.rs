//! End-to-end artifact flow: a JSON run configuration, `run.json`,
//! re-verification from disk and the text report.
//!
//! ```text
//! cargo run --release --example run_artifacts
//! ```

use trace_lp::cli::{render_report, solve_run, verify_run, RunConfig, RunRecord};
use trace_lp::verify::VerifyConfig;

fn main() -> trace_lp::Result<()> {
    let dir = std::env::temp_dir().join("trace-lp-example-run");
    let text = format!(
        r#"{{
            "preset": "pair",
            "round_init": 3,
            "solver": {{ "nodes_per_interval": 128 }},
            "out": {:?}
        }}"#,
        dir
    );
    let cfg: RunConfig = serde_json::from_str(&text)?;
    let run = cfg.resolve()?;
    let solved = solve_run(&run, false)?;
    println!("wrote {}", solved.dir.join("run.json").display());

    let record = RunRecord::load(&dir)?;
    let report = verify_run(&record, &VerifyConfig::default())?;
    print!("{}", render_report(&record));
    println!(
        "certified [{:.10}, {:.10}], lambda reproduced: {}",
        report.bounds.lower, report.bounds.upper, report.reproduced
    );
    Ok(())
}
