//! Endpoint optimisation: drive the optimality residuals of a support to
//! zero by moving its interval endpoints.
//!
//! Gradients come from central finite differences of the residual vector.
//! The search direction is a Levenberg–Marquardt step on the least-squares
//! problem (plain steepest descent is available), followed by a
//! backtracking line search and projection back onto admissible supports.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primal_dual::{evaluate_with_grid, Evaluation, Problem, SolverConfig};
use crate::quadrature::Grid;
use crate::support::{format_real, RealRepr, Support, SUPPORT_MAX};
use crate::verify::dual_lower_bound;

/// Number of recent objective values kept in the state.
const HISTORY: usize = 16;
/// Maximum number of step halvings in the line search.
pub const MAX_HALVINGS: usize = 30;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    #[default]
    LevenbergMarquardt,
    SteepestDescent,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct DescentConfig {
    pub tol_obj: f64,
    pub max_iters: usize,
    /// Relative finite-difference step: `h = fd_step * max(1, |a_i|)`.
    pub fd_step: f64,
    /// Minimum interval length, gap width and distance from 0.
    pub min_width: f64,
    pub direction: Direction,
    /// Write a checkpoint every this many iterations (0 disables).
    pub checkpoint_every: usize,
    #[serde(skip)]
    pub checkpoint_path: Option<PathBuf>,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            tol_obj: 1e-12,
            max_iters: 5000,
            fd_step: 1e-7,
            min_width: 1e-6,
            direction: Direction::LevenbergMarquardt,
            checkpoint_every: 100,
            checkpoint_path: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DescentState {
    pub endpoints: Vec<f64>,
    pub residuals: Vec<f64>,
    pub objective: f64,
    pub iter: usize,
    /// Step length accepted in the last line search.
    pub step: f64,
    /// Levenberg–Marquardt damping.
    pub damping: f64,
    pub history: VecDeque<f64>,
    /// Weak duality held at every accepted iterate, see [`weak_duality`].
    pub weak_duality_held: bool,
    /// Largest `lambda_0 - int x dmu` seen; positive values are possible away
    /// from the optimum, where the raw dual is not feasible.
    pub max_lambda_excess: f64,
    /// Endpoints pinned at 0 (the boundary of the half-line).
    pub frozen: Vec<bool>,
}

impl DescentState {
    fn push_history(&mut self, obj: f64) {
        if self.history.len() == HISTORY {
            self.history.pop_front();
        }
        self.history.push_back(obj);
    }
}

/// On-disk checkpoint.
#[derive(Serialize, Deserialize)]
pub struct Checkpoint {
    pub iter: usize,
    pub endpoints: Vec<String>,
    pub objective: f64,
    pub damping: f64,
    pub step: f64,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<(usize, Vec<f64>, f64)> {
        #[derive(Deserialize)]
        struct Raw {
            iter: usize,
            endpoints: Vec<RealRepr>,
            damping: f64,
        }
        let raw: Raw = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let pts = raw
            .endpoints
            .iter()
            .map(RealRepr::value)
            .collect::<Result<Vec<_>>>()?;
        Ok((raw.iter, pts, raw.damping))
    }
}

/// Outcome of an optimisation run.
pub struct SolveOutcome {
    pub evaluation: Evaluation,
    pub state: DescentState,
    pub converged: bool,
}

/// Projects endpoints onto ordered supports with minimum widths inside
/// `[0, 18]`; frozen coordinates are left untouched.
pub fn project(endpoints: &mut [f64], frozen: &[bool], min_width: f64) {
    let n = endpoints.len();
    if !frozen[0] {
        endpoints[0] = endpoints[0].max(min_width);
    }
    for j in 1..n {
        let lo = endpoints[j - 1] + min_width;
        if endpoints[j] < lo {
            endpoints[j] = lo;
        }
    }
    if endpoints[n - 1] > SUPPORT_MAX {
        endpoints[n - 1] = SUPPORT_MAX;
        for j in (0..n - 1).rev() {
            let hi = endpoints[j + 1] - min_width;
            if endpoints[j] > hi {
                endpoints[j] = hi;
            }
        }
    }
}

struct Evaluator<'a> {
    problem: &'a Problem,
    solver: &'a SolverConfig,
    grid: std::sync::Arc<Grid>,
}

impl Evaluator<'_> {
    fn eval(&self, endpoints: &[f64]) -> Result<Evaluation> {
        let s = Support::new(endpoints.to_vec())?;
        evaluate_with_grid(self.problem, &s, self.solver, &self.grid)
    }

    fn residuals(&self, endpoints: &[f64]) -> Option<Vec<f64>> {
        self.eval(endpoints)
            .ok()
            .map(|e| e.residuals.weighted(&self.solver.weights))
    }

    /// Central-difference Jacobian, columns in coordinate order.
    fn jacobian(&self, x: &[f64], frozen: &[bool], fd: f64, m: usize) -> Result<DMatrix<f64>> {
        let cols: Vec<Option<Vec<f64>>> = (0..x.len())
            .into_par_iter()
            .map(|j| {
                if frozen[j] {
                    return Some(vec![0.0; m]);
                }
                let h = fd * x[j].abs().max(1.0);
                let mut xp = x.to_vec();
                xp[j] += h;
                let mut xm = x.to_vec();
                xm[j] -= h;
                let (rp, rm) = (self.residuals(&xp)?, self.residuals(&xm)?);
                Some(rp.iter().zip(&rm).map(|(a, b)| (a - b) / (2.0 * h)).collect())
            })
            .collect();
        let mut jac = DMatrix::zeros(m, x.len());
        for (j, col) in cols.into_iter().enumerate() {
            let col = col.ok_or_else(|| {
                Error::InvalidSupport(format!("finite-difference probe of coordinate {j} left the admissible set"))
            })?;
            if col.len() != m {
                return Err(Error::InvalidSupport("residual length changed under perturbation".into()));
            }
            for (i, v) in col.into_iter().enumerate() {
                jac[(i, j)] = v;
            }
        }
        Ok(jac)
    }
}

/// Weak duality at one iterate: the corrected dual bound does not exceed the
/// primal trace (up to quadrature noise).
pub fn weak_duality(e: &Evaluation) -> bool {
    dual_lower_bound(e) <= e.primal.trace + 1e-9
}

fn objective_of(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// One descent iteration: direction, backtracking line search, projection.
fn step(
    ev: &Evaluator<'_>,
    state: &mut DescentState,
    cfg: &DescentConfig,
) -> Result<Evaluation> {
    let x = state.endpoints.clone();
    let r = DVector::from_vec(state.residuals.clone());
    let jac = ev.jacobian(&x, &state.frozen, cfg.fd_step, r.len())?;
    let grad = jac.transpose() * &r;
    let dir: DVector<f64> = match cfg.direction {
        Direction::SteepestDescent => -&grad * (2.0 * state.step.max(1e-12)),
        Direction::LevenbergMarquardt => {
            let jtj = jac.transpose() * &jac;
            let mut a = jtj.clone();
            for i in 0..a.nrows() {
                let d = jtj[(i, i)];
                a[(i, i)] += state.damping * if d > 0.0 { d } else { 1.0 };
            }
            a.full_piv_lu()
                .solve(&(-&grad))
                .unwrap_or_else(|| -&grad)
        }
    };
    let mut t = 1.0;
    for halving in 0..=MAX_HALVINGS {
        let mut trial: Vec<f64> = x.iter().zip(dir.iter()).map(|(a, d)| a + t * d).collect();
        for (j, f) in state.frozen.iter().enumerate() {
            if *f {
                trial[j] = x[j];
            }
        }
        project(&mut trial, &state.frozen, cfg.min_width);
        if let Ok(e) = ev.eval(&trial) {
            let rv = e.residuals.weighted(&ev.solver.weights);
            let obj = objective_of(&rv);
            if rv.len() == state.residuals.len() && obj < state.objective {
                state.endpoints = trial;
                state.residuals = rv;
                state.objective = obj;
                state.step = t;
                state.weak_duality_held &= weak_duality(&e);
                state.max_lambda_excess = state.max_lambda_excess.max(e.dual.lambda_0 - e.primal.trace);
                state.damping = if halving == 0 {
                    (state.damping / 3.0).max(1e-15)
                } else {
                    (state.damping * 4.0).min(1e8)
                };
                state.iter += 1;
                state.push_history(obj);
                return Ok(e);
            }
        }
        t *= 0.5;
    }
    Err(Error::StalledLineSearch(MAX_HALVINGS))
}

fn write_checkpoint(path: &Path, state: &DescentState) -> Result<()> {
    let cp = Checkpoint {
        iter: state.iter,
        endpoints: state.endpoints.iter().map(|x| format_real(*x)).collect(),
        objective: state.objective,
        damping: state.damping,
        step: state.step,
    };
    std::fs::write(path, serde_json::to_string_pretty(&cp)?)?;
    Ok(())
}

/// Minimises the residual norm from `init`. Returns the final evaluation
/// even when the tolerance is not met (`converged = false`); errors only
/// when the initial support cannot be evaluated.
pub fn solve(
    problem: &Problem,
    init: &Support,
    solver: &SolverConfig,
    cfg: &DescentConfig,
) -> Result<SolveOutcome> {
    solve_from(problem, init, solver, cfg, 0, 1e-3)
}

/// As [`solve`], resuming at iteration `start_iter` with a given damping.
pub fn solve_from(
    problem: &Problem,
    init: &Support,
    solver: &SolverConfig,
    cfg: &DescentConfig,
    start_iter: usize,
    damping: f64,
) -> Result<SolveOutcome> {
    let ev = Evaluator {
        problem,
        solver,
        grid: Grid::new(solver.nodes_per_interval),
    };
    let mut evaluation = ev.eval(init.endpoints())?;
    let residuals = evaluation.residuals.weighted(&solver.weights);
    let objective = objective_of(&residuals);
    let mut state = DescentState {
        endpoints: init.endpoints().to_vec(),
        residuals,
        objective,
        iter: start_iter,
        step: 1.0,
        damping,
        history: VecDeque::from(vec![objective]),
        weak_duality_held: weak_duality(&evaluation),
        max_lambda_excess: evaluation.dual.lambda_0 - evaluation.primal.trace,
        frozen: init.endpoints().iter().map(|a| *a == 0.0).collect(),
    };
    let mut converged = state.objective < cfg.tol_obj;
    while !converged && state.iter < start_iter + cfg.max_iters {
        match step(&ev, &mut state, cfg) {
            Ok(e) => evaluation = e,
            Err(Error::StalledLineSearch(n)) => {
                log::info!(
                    "line search stalled after {n} halvings at objective {:.3e}",
                    state.objective
                );
                break;
            }
            Err(e) => return Err(e),
        }
        log::info!("iter {:5}  objective {:.6e}  step {:.3e}", state.iter, state.objective, state.step);
        converged = state.objective < cfg.tol_obj;
        if let Some(path) = &cfg.checkpoint_path {
            if cfg.checkpoint_every > 0 && state.iter % cfg.checkpoint_every == 0 {
                write_checkpoint(path, &state)?;
            }
        }
    }
    // Always leave the final state on disk so a run can be resumed.
    if let (Some(path), true) = (&cfg.checkpoint_path, cfg.checkpoint_every > 0) {
        write_checkpoint(path, &state)?;
    }
    Ok(SolveOutcome {
        evaluation,
        state,
        converged,
    })
}

/// Single line-search step from `state`, exposed for inspection and tests.
pub fn single_step(
    problem: &Problem,
    solver: &SolverConfig,
    cfg: &DescentConfig,
    state: &mut DescentState,
) -> Result<Evaluation> {
    let ev = Evaluator {
        problem,
        solver,
        grid: Grid::new(solver.nodes_per_interval),
    };
    step(&ev, state, cfg)
}

/// Initial state for `init` (evaluates the residuals once).
pub fn initial_state(problem: &Problem, init: &Support, solver: &SolverConfig) -> Result<DescentState> {
    let e = crate::primal_dual::evaluate(problem, init, solver)?;
    let residuals = e.residuals.weighted(&solver.weights);
    let objective = objective_of(&residuals);
    Ok(DescentState {
        endpoints: init.endpoints().to_vec(),
        residuals,
        objective,
        iter: 0,
        step: 1.0,
        damping: 1e-3,
        history: VecDeque::from(vec![objective]),
        weak_duality_held: weak_duality(&e),
        max_lambda_excess: e.dual.lambda_0 - e.primal.trace,
        frozen: init.endpoints().iter().map(|a| *a == 0.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_restores_order_and_widths() {
        let mut x = vec![-0.1, 0.5, 0.4, 19.0];
        project(&mut x, &[false; 4], 1e-6);
        assert!(x[0] >= 1e-6);
        assert!(x.windows(2).all(|w| w[1] - w[0] >= 1e-6 - 1e-15));
        assert!(x[3] <= SUPPORT_MAX);
    }

    #[test]
    fn projection_keeps_frozen_zero() {
        let mut x = vec![0.0, 4.0];
        project(&mut x, &[true, false], 1e-6);
        assert_eq!(x, vec![0.0, 4.0]);
    }

    #[test]
    fn serre_descent_from_rounded_start() {
        let problem = Problem::new(crate::primal_dual::polyset_from_i64(&[&[0, 1]]).unwrap()).unwrap();
        let init = Support::new(vec![0.087, 4.411]).unwrap();
        let solver = SolverConfig {
            nodes_per_interval: 64,
            ..SolverConfig::default()
        };
        let cfg = DescentConfig {
            tol_obj: 1e-20,
            max_iters: 50,
            ..DescentConfig::default()
        };
        let out = solve(&problem, &init, &solver, &cfg).unwrap();
        let e = out.state.endpoints;
        assert!((e[0] - 0.0873528949).abs() < 1e-7, "{e:?}");
        assert!((e[1] - 4.411076350).abs() < 1e-7, "{e:?}");
        assert!(out.state.weak_duality_held);
        let h: Vec<f64> = out.state.history.iter().cloned().collect();
        assert!(h.windows(2).all(|w| w[1] <= w[0]));
    }
}
