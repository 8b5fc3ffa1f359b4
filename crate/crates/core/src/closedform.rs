//! The two cases with closed forms: the empty set (support `[0, 4]`,
//! value 2) and the single polynomial `x`, whose support `[a, b]` is fixed by
//! a 2x2 transcendental system in
//! `x = (a + b - 2 sqrt(ab)) / 4`, `y = (a + b + 2 sqrt(ab)) / 4`:
//!
//! ```text
//! y log y = (y - x) log(y - x) + x
//! log x log y = log(xy) log(y - x)
//! ```
//!
//! with value `y - y log y + x - x log x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyarith::PolySet;
use crate::primal_dual::{evaluate, Evaluation, Problem, SolverConfig};
use crate::support::Support;

/// The value of the problem with no polynomials.
pub const SCHUR_LAMBDA: f64 = 2.0;

/// Reference starting point for the Newton iteration.
const SERRE_A0: f64 = 0.0873528949;
const SERRE_B0: f64 = 4.411076350;

pub struct SchurSolution {
    pub lambda: f64,
    pub evaluation: Evaluation,
}

/// The empty-set solution on `[0, 4]`: `mu` is the arcsine law and
/// `nu = (4 - x) / (2 pi sqrt(x (4 - x)))`, built without mixing so the dual
/// is exact.
pub fn schur(nodes_per_interval: usize) -> Result<SchurSolution> {
    let problem = Problem::new(PolySet::empty())?;
    let sigma = Support::new(vec![0.0, 4.0])?;
    let cfg = SolverConfig {
        nodes_per_interval,
        delta_mix: 0.0,
        eps_mix: 0.0,
        ..SolverConfig::default()
    };
    Ok(SchurSolution {
        lambda: SCHUR_LAMBDA,
        evaluation: evaluate(&problem, &sigma, &cfg)?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SerreSolution {
    pub x_hat: f64,
    pub y_hat: f64,
    pub a: f64,
    pub b: f64,
    /// Weight of `log x` in the primal potential, `log(xy) / (2 log y)`.
    pub t: f64,
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl SerreSolution {
    pub fn support(&self) -> Result<Support> {
        Support::new(vec![self.a, self.b])
    }
}

fn serre_residual(x: f64, y: f64) -> [f64; 2] {
    let g = y - x;
    [
        y * y.ln() - g * g.ln() - x,
        x.ln() * y.ln() - (x * y).ln() * g.ln(),
    ]
}

fn serre_jacobian(x: f64, y: f64) -> [[f64; 2]; 2] {
    let g = y - x;
    let (lx, ly, lg) = (x.ln(), y.ln(), g.ln());
    let lxy = lx + ly;
    [
        [lg, ly - lg],
        [(ly - lg) / x + lxy / g, (lx - lg) / y - lxy / g],
    ]
}

fn in_domain(x: f64, y: f64) -> bool {
    let eps = f64::EPSILON;
    x > eps && y - x > eps && y > eps
}

/// Damped Newton on the two-equation system, started from the reference
/// support; steps are halved until the residual norm decreases.
pub fn serre_solve(tol: f64) -> Result<SerreSolution> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let s = (SERRE_A0 * SERRE_B0).sqrt();
    let (mut x, mut y) = ((SERRE_A0 + SERRE_B0 - 2.0 * s) / 4.0, (SERRE_A0 + SERRE_B0 + 2.0 * s) / 4.0);
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let mut res = norm(serre_residual(x, y));
    let mut iterations = 0;
    while res >= tol {
        if iterations == 100 {
            return Err(Error::NewtonDiverged(format!(
                "residual {res:.3e} after {iterations} iterations"
            )));
        }
        iterations += 1;
        let r = serre_residual(x, y);
        let j = serre_jacobian(x, y);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(Error::NewtonDiverged("singular Jacobian".into()));
        }
        let dx = (r[0] * j[1][1] - r[1] * j[0][1]) / det;
        let dy = (j[0][0] * r[1] - j[1][0] * r[0]) / det;
        let mut step = 1.0;
        loop {
            let (nx, ny) = (x - step * dx, y - step * dy);
            if in_domain(nx, ny) {
                let nr = norm(serre_residual(nx, ny));
                if nr < res || nr < tol {
                    x = nx;
                    y = ny;
                    res = nr;
                    break;
                }
            }
            step *= 0.5;
            if step < 1e-12 {
                // No decrease is possible any more: accept if we are at the
                // rounding floor, otherwise give up.
                if res < tol.max(1e-14) {
                    break;
                }
                return Err(Error::NewtonDiverged(format!("line search failed at residual {res:.3e}")));
            }
        }
    }
    let (sx, sy) = (x.sqrt(), y.sqrt());
    Ok(SerreSolution {
        x_hat: x,
        y_hat: y,
        a: (sy - sx).powi(2),
        b: (sy + sx).powi(2),
        t: (x * y).ln() / (2.0 * y.ln()),
        lambda: y - y * y.ln() + x - x * x.ln(),
        residual: res,
        iterations,
    })
}
