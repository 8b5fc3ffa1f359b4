//! Batch front end: run configuration, presets, run artifacts and the
//! `trace-lp` subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::closedform::{schur, serre_solve, SerreSolution};
use crate::descent::{self, Checkpoint, DescentConfig};
use crate::error::{Error, Result};
use crate::measures::{rows_to_csv, sample_density};
use crate::polyarith::{IntPoly, PolySet};
use crate::primal_dual::{evaluate, Evaluation, Problem, Residuals, SolverConfig};
use crate::support::Support;
use crate::verify::{inspect, CertifiedBounds, VerifyConfig};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_CONVERGED: i32 = 1;
    pub const VERIFY_FAILED: i32 = 2;
    pub const CONFIG: i32 = 3;
}

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "TRACE_LP_THREADS";

/// Objective tolerance used by the presets: tight enough that the endpoint
/// numerators fall well below the dual mixing weight, which certification
/// relies on.
pub const PRESET_TOL: f64 = 1e-20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `{x}`
    Serre,
    /// `{x, x - 1}`
    Pair,
    /// `{x, 1 - x, x^2 - 3x + 1}`
    Quad,
    /// `{x, 1 - x, x^2 - 3x + 1, x^3 - 5x^2 + 6x - 1}`
    Cubic,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Serre => "serre",
            Preset::Pair => "pair",
            Preset::Quad => "quad",
            Preset::Cubic => "cubic",
        }
    }

    /// Ascending integer coefficients of every polynomial.
    pub fn polys(self) -> Vec<Vec<i64>> {
        let x = vec![0, 1];
        let one_minus_x = vec![1, -1];
        let quad = vec![1, -3, 1];
        let cubic = vec![-1, 6, -5, 1];
        match self {
            Preset::Serre => vec![x],
            Preset::Pair => vec![x, vec![-1, 1]],
            Preset::Quad => vec![x, one_minus_x, quad],
            Preset::Cubic => vec![x, one_minus_x, quad, cubic],
        }
    }

    /// Reference support endpoints.
    pub fn endpoints(self) -> Vec<f64> {
        match self {
            Preset::Serre => vec![0.0873528949, 4.411076350],
            Preset::Pair => vec![
                0.0706597128759717,
                0.7191192204214787,
                1.337668148298108,
                4.687953934364709,
            ],
            Preset::Quad => vec![
                0.0743803, 0.2966453, 0.4803800, 0.708246, 1.348128, 2.333811, 2.9387115, 4.592219,
            ],
            Preset::Cubic => vec![
                0.06129179514230616,
                0.17515032062914598,
                0.22234021363650555,
                0.31342480981675824,
                0.45755305611054947,
                0.7464580569205782,
                1.3003810514246414,
                1.4785537920437593,
                1.629639282543484,
                2.391040662791468,
                2.8714421221120547,
                3.108899604515233,
                3.387062952658943,
                4.905820899328081,
            ],
        }
    }

    /// Reference value of the optimum.
    pub fn reference_lambda(self) -> f64 {
        match self {
            Preset::Serre => 1.898302009,
            Preset::Pair => 1.84701204,
            Preset::Quad => 1.8224798,
            Preset::Cubic => 1.8215998,
        }
    }

    pub fn poly_set(self) -> Result<PolySet> {
        PolySet::new(self.polys().iter().map(|c| IntPoly::from_i64(c)).collect())
    }
}

/// Rounds every endpoint to `digits` decimals.
pub fn round_endpoints(pts: &[f64], digits: u32) -> Vec<f64> {
    let s = 10f64.powi(digits as i32);
    pts.iter().map(|x| (x * s).round() / s).collect()
}

/// Everything a `solve` run needs. Fields left out fall back to the preset
/// (if any) and then to the defaults.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    /// Polynomial set; each polynomial is a list of ascending coefficients
    /// written as decimal strings.
    pub polys: Option<PolySet>,
    pub init: Option<Support>,
    /// Round the initial endpoints to this many decimals before starting.
    pub round_init: Option<u32>,
    /// Optional extra factor of the dual numerator (ascending monomial
    /// coefficients) for supports with several roots in a gap.
    pub gap_poly: Option<Vec<f64>>,
    pub solver: SolverConfig,
    pub descent: Option<DescentConfig>,
    pub verify: VerifyConfig,
    pub out: Option<PathBuf>,
}

/// A fully resolved run.
pub struct ResolvedRun {
    pub name: String,
    pub problem: Problem,
    pub init: Support,
    pub solver: SolverConfig,
    pub descent: DescentConfig,
    pub verify: VerifyConfig,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn from_preset(p: Preset) -> Self {
        RunConfig {
            preset: Some(p),
            ..RunConfig::default()
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn resolve(&self) -> Result<ResolvedRun> {
        let set = match (&self.polys, self.preset) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => p.poly_set()?,
            (None, None) => PolySet::empty(),
        };
        let init = match (&self.init, self.preset) {
            (Some(s), _) => s.endpoints().to_vec(),
            (None, Some(p)) => p.endpoints(),
            (None, None) if set.is_empty() => vec![0.0, 4.0],
            (None, None) => {
                return Err(Error::Config("no initial support given and no preset".into()))
            }
        };
        let init = match self.round_init {
            Some(d) => round_endpoints(&init, d),
            None => init,
        };
        let init = Support::new(init)?;
        let mut problem = Problem::new(set)?;
        if let Some(p) = &self.gap_poly {
            problem = problem.with_gap_poly(p.clone());
        }
        problem.validate(&init)?;
        let descent = self.descent.clone().unwrap_or_else(|| DescentConfig {
            tol_obj: if self.preset.is_some() { PRESET_TOL } else { DescentConfig::default().tol_obj },
            ..DescentConfig::default()
        });
        if self.solver.nodes_per_interval < 8 {
            return Err(Error::Config("nodes_per_interval must be at least 8".into()));
        }
        let name = self.preset.map_or("custom", Preset::name).to_string();
        let out = self
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from("runs").join(&name));
        Ok(ResolvedRun {
            name,
            problem,
            init,
            solver: self.solver.clone(),
            descent,
            verify: self.verify.clone(),
            out,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Energies {
    pub i_mu: f64,
    pub i_nu: f64,
    pub i_mu_nu: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Masses {
    pub nu: f64,
    pub mu_lin: f64,
}

/// The `run.json` artifact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub name: String,
    pub polys: PolySet,
    #[serde(default)]
    pub gap_poly: Option<Vec<f64>>,
    pub support: Support,
    pub solver: SolverConfig,
    pub converged: bool,
    pub iterations: usize,
    pub objective: f64,
    /// Estimate of the optimum: the dual constant `lambda_0`.
    pub lambda: f64,
    pub lambda_0_raw: f64,
    pub trace: f64,
    pub c: f64,
    pub x_eq: f64,
    pub x_lin: f64,
    pub x_q: Vec<f64>,
    pub lambda_q: Vec<f64>,
    pub y_eq: f64,
    pub y_q: Vec<f64>,
    pub b_q: Vec<f64>,
    /// How the primal weights relate to the potential coefficients.
    pub primal_convention: String,
    pub kappa: f64,
    pub residuals: Residuals,
    pub energies: Energies,
    pub masses: Masses,
    pub weak_duality_held: bool,
    /// Largest raw `lambda_0 - trace` along the descent.
    #[serde(default)]
    pub max_lambda_excess: f64,
    pub mass_bound: f64,
    pub seconds: f64,
}

impl RunRecord {
    pub fn new(name: &str, problem: &Problem, ev: &Evaluation, solver: &SolverConfig) -> Self {
        RunRecord {
            name: name.to_string(),
            polys: problem.set.clone(),
            gap_poly: problem.gap_poly.clone(),
            support: ev.support.clone(),
            solver: solver.clone(),
            converged: true,
            iterations: 0,
            objective: ev.objective(solver),
            lambda: ev.dual.lambda_0,
            lambda_0_raw: ev.dual.lambda_0_raw,
            trace: ev.primal.trace,
            c: ev.dual.c,
            x_eq: ev.dual.x_eq,
            x_lin: ev.dual.x_lin,
            x_q: ev.dual.x_q.clone(),
            lambda_q: ev.dual.lambda_q.clone(),
            y_eq: ev.primal.eq_weight,
            y_q: ev.primal.weights.clone(),
            b_q: ev.primal.b_q.clone(),
            primal_convention: "mu = Y_eq mu_eq + sum Y_Q mu_Q, U_mu = sum (Y_Q / deg Q) log|Q| on the support"
                .into(),
            kappa: ev.primal.kappa,
            residuals: ev.residuals.clone(),
            energies: Energies {
                i_mu: ev.primal.i_mu,
                i_nu: ev.dual.i_nu,
                i_mu_nu: ev.dual.nu.cross_energy(&ev.primal.mu),
            },
            masses: Masses {
                nu: ev.dual.mass,
                mu_lin: ev.blocks.lin.mass(),
            },
            weak_duality_held: descent::weak_duality(ev),
            max_lambda_excess: ev.dual.lambda_0 - ev.primal.trace,
            mass_bound: ev.dual.mass_bound_lhs(&problem.set),
            seconds: 0.0,
        }
    }

    /// Loads `run.json` from a run directory or a direct path.
    pub fn load(path: &Path) -> Result<Self> {
        let file = if path.is_dir() { path.join("run.json") } else { path.to_path_buf() };
        let text = std::fs::read_to_string(&file)?;
        serde_json::from_str(&text).map_err(|e| {
            Error::Io(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("{}: {e}", file.display()),
            ))
        })
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let file = dir.join("run.json");
        std::fs::write(&file, serde_json::to_string_pretty(self)?)?;
        Ok(file)
    }

    pub fn problem(&self) -> Result<Problem> {
        let p = Problem::new(self.polys.clone())?;
        Ok(match &self.gap_poly {
            Some(g) => p.with_gap_poly(g.clone()),
            None => p,
        })
    }

    /// Rebuilds every measure from the stored support and settings.
    pub fn evaluate(&self) -> Result<(Problem, Evaluation)> {
        let problem = self.problem()?;
        let ev = evaluate(&problem, &self.support, &self.solver)?;
        Ok((problem, ev))
    }
}

/// The `verify.json` artifact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub bounds: CertifiedBounds,
    pub lambda_stored: f64,
    pub lambda_recomputed: f64,
    /// Whether re-evaluation reproduced the stored `lambda_0` within 1e-12.
    pub reproduced: bool,
}

pub fn verify_run(record: &RunRecord, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let (problem, ev) = record.evaluate()?;
    let mut bounds = inspect(&problem, &ev, cfg)?;
    let reproduced = (ev.dual.lambda_0 - record.lambda).abs() <= 1e-12;
    if !reproduced {
        bounds
            .failures
            .push(format!("stored lambda {} is not reproduced ({})", record.lambda, ev.dual.lambda_0));
    }
    Ok(VerifyReport {
        bounds,
        lambda_stored: record.lambda,
        lambda_recomputed: ev.dual.lambda_0,
        reproduced,
    })
}

/// Result of `solve`.
pub struct SolveReport {
    pub record: RunRecord,
    pub evaluation: Evaluation,
    pub problem: Problem,
    pub dir: PathBuf,
}

/// Runs the descent, writing checkpoints, `run.json` and `density.csv`.
pub fn solve_run(run: &ResolvedRun, resume: bool) -> Result<SolveReport> {
    std::fs::create_dir_all(&run.out)?;
    let ckpt = run.out.join("checkpoint.json");
    let mut dcfg = run.descent.clone();
    dcfg.checkpoint_path = Some(ckpt.clone());
    let start = Instant::now();
    let outcome = if resume && ckpt.exists() {
        let (iter, pts, damping) = Checkpoint::load(&ckpt)?;
        log::info!("resuming from {} at iteration {iter}", ckpt.display());
        let init = Support::new(pts)?;
        descent::solve_from(&run.problem, &init, &run.solver, &dcfg, iter, damping)?
    } else {
        descent::solve(&run.problem, &run.init, &run.solver, &dcfg)?
    };
    let mut record = RunRecord::new(&run.name, &run.problem, &outcome.evaluation, &run.solver);
    record.converged = outcome.converged;
    record.iterations = outcome.state.iter;
    record.objective = outcome.state.objective;
    record.weak_duality_held = outcome.state.weak_duality_held;
    record.max_lambda_excess = outcome.state.max_lambda_excess;
    record.seconds = start.elapsed().as_secs_f64();
    record.save(&run.out)?;
    let rows = sample_density(&outcome.evaluation.primal.mu, &outcome.evaluation.dual.nu, 200);
    std::fs::write(run.out.join("density.csv"), rows_to_csv(&rows))?;
    Ok(SolveReport {
        record,
        evaluation: outcome.evaluation,
        problem: run.problem.clone(),
        dir: run.out.clone(),
    })
}

/// Writes a closed-form case as a run directory so it can be verified and
/// sampled like any other.
fn save_closed_form(name: &str, problem: &Problem, ev: &Evaluation, solver: &SolverConfig, dir: &Path) -> Result<()> {
    let record = RunRecord::new(name, problem, ev, solver);
    record.save(dir)?;
    let rows = sample_density(&ev.primal.mu, &ev.dual.nu, 200);
    std::fs::write(dir.join("density.csv"), rows_to_csv(&rows))?;
    Ok(())
}

#[derive(Parser, Debug)]
#[command(name = "trace-lp", version, about = "Trace linear programs over arithmetic measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Optimise the support from a preset or a JSON config.
    Solve(SolveArgs),
    /// Certify lower and upper bounds for a finished run.
    Verify(VerifyArgs),
    /// Closed-form solution for the single polynomial x.
    Serre(ClosedArgs),
    /// Closed-form solution for the empty set.
    Schur(ClosedArgs),
    /// Sample densities and potentials of a run to CSV.
    SampleDensity(SampleArgs),
    /// Human-readable summary of a run.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Quadrature nodes per interval.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Objective tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Round the initial endpoints to this many decimals.
    #[arg(long)]
    pub round_init: Option<u32>,
    /// Continue from `checkpoint.json` in the output directory.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run directory or run.json path.
    pub run: PathBuf,
    /// Directory for verify.json (defaults to the run directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClosedArgs {
    /// Also write a run directory here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    pub nodes: usize,
    /// Newton residual tolerance (serre only).
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    pub run: PathBuf,
    /// Points per interval.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Output CSV path (defaults to density.csv in the run directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub run: PathBuf,
}

/// Maps an error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ChecksFailed(_) => exit::VERIFY_FAILED,
        Error::NotConverged { .. }
        | Error::StalledLineSearch(_)
        | Error::NewtonDiverged(_)
        | Error::SingularSystem { .. }
        | Error::SingularW(_)
        | Error::NonFinite(_)
        | Error::TooCloseToNode(_) => exit::NOT_CONVERGED,
        _ => exit::CONFIG,
    }
}

/// Caps rayon's global pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    Ok(())
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// Executes a parsed command and returns the exit code.
pub fn run(cli: Cli) -> Result<i32> {
    init_threads()?;
    match cli.command {
        Command::Solve(a) => {
            let mut cfg = match (&a.config, a.preset) {
                (Some(path), p) => {
                    let mut c = RunConfig::load(path)?;
                    if p.is_some() {
                        c.preset = p;
                    }
                    c
                }
                (None, Some(p)) => RunConfig::from_preset(p),
                (None, None) => return Err(Error::Config("solve needs --preset or --config".into())),
            };
            if let Some(n) = a.nodes {
                cfg.solver.nodes_per_interval = n;
            }
            if a.round_init.is_some() {
                cfg.round_init = a.round_init;
            }
            if a.out.is_some() {
                cfg.out = a.out.clone();
            }
            let mut run = cfg.resolve()?;
            if let Some(m) = a.max_iters {
                run.descent.max_iters = m;
            }
            if let Some(t) = a.tol {
                run.descent.tol_obj = t;
            }
            let report = solve_run(&run, a.resume)?;
            print_json(&report.record)?;
            Ok(if report.record.converged { exit::OK } else { exit::NOT_CONVERGED })
        }
        Command::Verify(a) => {
            let record = RunRecord::load(&a.run)?;
            let cfg = match &a.config {
                Some(p) => RunConfig::load(p)?.verify,
                None => VerifyConfig::default(),
            };
            let report = verify_run(&record, &cfg)?;
            let dir = a.out.clone().unwrap_or_else(|| {
                if a.run.is_dir() { a.run.clone() } else { a.run.parent().map(Path::to_path_buf).unwrap_or_default() }
            });
            std::fs::create_dir_all(&dir)?;
            std::fs::write(dir.join("verify.json"), serde_json::to_string_pretty(&report)?)?;
            print_json(&report)?;
            Ok(if report.bounds.passed() { exit::OK } else { exit::VERIFY_FAILED })
        }
        Command::Serre(a) => {
            let sol: SerreSolution = serre_solve(a.tol)?;
            if let Some(dir) = &a.out {
                let problem = Problem::new(Preset::Serre.poly_set()?)?;
                let solver = SolverConfig {
                    nodes_per_interval: a.nodes,
                    ..SolverConfig::default()
                };
                let ev = evaluate(&problem, &sol.support()?, &solver)?;
                save_closed_form("serre", &problem, &ev, &solver, dir)?;
                std::fs::write(dir.join("serre.json"), serde_json::to_string_pretty(&sol)?)?;
            }
            print_json(&sol)?;
            Ok(exit::OK)
        }
        Command::Schur(a) => {
            let s = schur(a.nodes)?;
            if let Some(dir) = &a.out {
                let problem = Problem::new(PolySet::empty())?;
                let solver = SolverConfig {
                    nodes_per_interval: a.nodes,
                    delta_mix: 0.0,
                    eps_mix: 0.0,
                    ..SolverConfig::default()
                };
                save_closed_form("schur", &problem, &s.evaluation, &solver, dir)?;
            }
            #[derive(Serialize)]
            struct Out {
                lambda: f64,
                support: Support,
                lambda_0: f64,
                trace: f64,
                nu_mass: f64,
            }
            let ev = &s.evaluation;
            print_json(&Out {
                lambda: s.lambda,
                support: ev.support.clone(),
                lambda_0: ev.dual.lambda_0,
                trace: ev.primal.trace,
                nu_mass: ev.dual.mass / ev.dual.x_lin,
            })?;
            Ok(exit::OK)
        }
        Command::SampleDensity(a) => {
            let record = RunRecord::load(&a.run)?;
            let (_, ev) = record.evaluate()?;
            let rows = sample_density(&ev.primal.mu, &ev.dual.nu, a.points);
            let path = a.out.clone().unwrap_or_else(|| {
                let dir = if a.run.is_dir() { a.run.clone() } else { a.run.parent().map(Path::to_path_buf).unwrap_or_default() };
                dir.join("density.csv")
            });
            std::fs::write(&path, rows_to_csv(&rows))?;
            println!("{} rows written to {}", rows.len(), path.display());
            Ok(exit::OK)
        }
        Command::Report(a) => {
            let record = RunRecord::load(&a.run)?;
            print!("{}", render_report(&record));
            let vpath = if a.run.is_dir() { a.run.join("verify.json") } else { a.run.with_file_name("verify.json") };
            if let Ok(text) = std::fs::read_to_string(&vpath) {
                let v: VerifyReport = serde_json::from_str(&text)?;
                println!(
                    "certified:    [{:.10}, {:.10}]  delta {:.3e}  {}",
                    v.bounds.lower,
                    v.bounds.upper,
                    v.bounds.delta,
                    if v.bounds.passed() { "all checks passed" } else { "CHECKS FAILED" }
                );
                for f in &v.bounds.failures {
                    println!("  - {f}");
                }
            }
            Ok(exit::OK)
        }
    }
}

/// Plain-text summary of a run.
pub fn render_report(r: &RunRecord) -> String {
    let polys: Vec<String> = r.polys.iter().map(|p| p.to_string()).collect();
    let mut s = String::new();
    s += &format!("run:          {}\n", r.name);
    s += &format!("polynomials:  {{{}}}\n", polys.join(", "));
    s += "support:     ";
    for (a, b) in r.support.intervals() {
        s += &format!(" [{a:.8}, {b:.8}]");
    }
    s += "\n";
    s += &format!("lambda_0:     {:.10}\n", r.lambda);
    s += &format!("trace mu:     {:.10}\n", r.trace);
    s += &format!(
        "converged:    {} after {} iterations (objective {:.3e}, max residual {:.3e})\n",
        r.converged,
        r.iterations,
        r.objective,
        r.residuals.max_abs()
    );
    s += &format!("X:            eq {:.8} lin {:.8} Q {:?}\n", r.x_eq, r.x_lin, r.x_q);
    s += &format!("Y:            eq {:.8} Q {:?}\n", r.y_eq, r.y_q);
    s += &format!(
        "energies:     I(mu) {:.3e}  I(nu) {:.6}  I(mu,nu) {:.3e}\n",
        r.energies.i_mu, r.energies.i_nu, r.energies.i_mu_nu
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for p in [Preset::Serre, Preset::Pair, Preset::Quad, Preset::Cubic] {
            let run = RunConfig::from_preset(p).resolve().unwrap();
            assert_eq!(run.descent.tol_obj, PRESET_TOL);
            assert_eq!(run.init.endpoints(), p.endpoints().as_slice());
        }
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = RunConfig {
            preset: Some(Preset::Pair),
            round_init: Some(3),
            ..RunConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.preset, Some(Preset::Pair));
        assert_eq!(back.round_init, Some(3));
        let run = back.resolve().unwrap();
        assert_eq!(run.init.endpoints()[0], 0.071);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"presett": "pair"}"#).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::ChecksFailed(vec![])), exit::VERIFY_FAILED);
        assert_eq!(exit_code(&Error::Config("x".into())), exit::CONFIG);
        assert_eq!(
            exit_code(&Error::NotConverged { iters: 1, objective: 1.0 }),
            exit::NOT_CONVERGED
        );
    }
}
