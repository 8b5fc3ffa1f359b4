//! Primal and dual measures for a fixed support.
//!
//! The dual measure is `nu = X_eq mu_eq + X_lin mu_lin + sum_Q X_Q mu_Q`,
//! whose potential on the support equals
//! `X_lin (x - lambda_0) - sum_Q X_lin lambda_Q log|Q(x)|` up to the
//! normalisation `nu' = nu / X_lin`. The primal measure is
//! `mu = Y_eq mu_eq + sum_Q Y_Q mu_Q` with `int log|Q| dmu = 0` for all `Q`.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    collocation_points, equilibrium, eval_monomial, linear_potential_measure,
    log_potential_measure, solve_dense, MeasureDensity,
};
use crate::polyarith::{discriminant, resultant, IntPoly, PolySet};
use crate::quadrature::{Grid, DEFAULT_NODES};
use crate::support::{GapRootMap, Support};

/// Numerical settings shared by every stage.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct SolverConfig {
    /// Quadrature nodes per interval.
    pub nodes_per_interval: usize,
    /// Weight of `mu_eq` mixed into the dual for strict positivity.
    pub delta_mix: f64,
    /// Weight of `mu_eq` mixed into the primal for the upper bound.
    pub eps_mix: f64,
    /// Collocation points per interval for extracting `lambda_0`.
    pub collocation: usize,
    /// Residual weights by group: energy, endpoint numerators,
    /// primal log-moments, dual log-moments, duality gap.
    pub weights: [f64; 5],
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            nodes_per_interval: DEFAULT_NODES,
            delta_mix: 2e-8,
            eps_mix: 6e-8,
            collocation: 32,
            weights: [1.0; 5],
        }
    }
}

/// A polynomial set with its roots cached, plus an optional gap polynomial.
#[derive(Clone, Debug)]
pub struct Problem {
    pub set: PolySet,
    pub roots: Vec<Vec<f64>>,
    /// Monic real polynomial (ascending coefficients) needed when the total
    /// degree exceeds the number of intervals.
    pub gap_poly: Option<Vec<f64>>,
}

impl Problem {
    pub fn new(set: PolySet) -> Result<Self> {
        let roots = set.roots(1e-14)?;
        Ok(Problem {
            set,
            roots,
            gap_poly: None,
        })
    }

    pub fn with_gap_poly(mut self, p: Vec<f64>) -> Self {
        self.gap_poly = Some(p);
        self
    }

    pub fn validate(&self, sigma: &Support) -> Result<GapRootMap> {
        sigma.validate_with_roots(&self.set, &self.roots)
    }
}

/// The building-block measures of a support and their potential constants.
#[derive(Clone, Debug)]
pub struct BlockMeasures {
    pub eq: MeasureDensity,
    pub lin: MeasureDensity,
    pub mu_q: Vec<MeasureDensity>,
    /// `U_eq` on the support.
    pub c_eq: f64,
    /// `U_lin(x) - x` on the support.
    pub c_lin: f64,
    /// `U_{mu_Q}(x) - log|Q(x)| / deg Q` on the support.
    pub c_q: Vec<f64>,
}

impl BlockMeasures {
    pub fn build(problem: &Problem, sigma: &Support, grid: &Arc<Grid>) -> Result<Self> {
        let eq = equilibrium(sigma, grid)?;
        let lin = linear_potential_measure(sigma, grid)?;
        let mu_q = problem
            .set
            .iter()
            .zip(&problem.roots)
            .map(|(q, r)| log_potential_measure(sigma, q, r, grid))
            .collect::<Result<Vec<_>>>()?;
        let c_eq = eq.potential_constant(|_| 0.0);
        let c_lin = lin.potential_constant(|x| x);
        let c_q = problem
            .set
            .iter()
            .zip(&mu_q)
            .map(|(q, m)| m.potential_constant(|x| q.eval(x).abs().ln() / q.degree() as f64))
            .collect();
        Ok(BlockMeasures {
            eq,
            lin,
            mu_q,
            c_eq,
            c_lin,
            c_q,
        })
    }
}

#[derive(Clone, Debug)]
pub struct DualSolution {
    pub c: f64,
    pub x_eq: f64,
    pub x_lin: f64,
    pub x_q: Vec<f64>,
    /// `lambda_Q = -X_Q / (X_lin deg Q)`.
    pub lambda_q: Vec<f64>,
    /// Dual constant of the mixed (strictly positive) measure.
    pub lambda_0: f64,
    /// Dual constant before mixing in `delta_mix * mu_eq`.
    pub lambda_0_raw: f64,
    /// Max deviation of the collocated `lambda_0` values from their mean.
    pub lambda_0_deviation: f64,
    /// The dual measure after mixing (used for certification).
    pub nu: MeasureDensity,
    /// The dual measure before mixing (drives the residuals).
    pub nu_raw: MeasureDensity,
    pub mass: f64,
    pub i_nu: f64,
    pub delta_mix: f64,
}

impl DualSolution {
    /// `lambda_0 + sum deg(Q) lambda_Q + nu'(R)` with `nu' = nu / X_lin`,
    /// which never exceeds `2e` for a valid dual.
    pub fn mass_bound_lhs(&self, set: &PolySet) -> f64 {
        let s: f64 = set
            .iter()
            .zip(&self.lambda_q)
            .map(|(q, l)| q.degree() as f64 * l)
            .sum();
        self.lambda_0 + s + self.mass / self.x_lin
    }

    pub fn mass_bound_holds(&self, set: &PolySet) -> bool {
        self.mass_bound_lhs(set) <= 2.0 * E + 1e-6
    }

    /// The left end of the sandwich `lambda_0 + I(nu) / (2 nu(R)) <= lambda_0`,
    /// computed for `nu' = nu / X_lin`.
    pub fn sandwich_lower(&self) -> f64 {
        let m = self.mass / self.x_lin;
        let i = self.i_nu / (self.x_lin * self.x_lin);
        self.lambda_0 + i / (2.0 * m)
    }

    /// The dual slack `x - lambda_0 - sum lambda_Q log|Q(x)| - U_nu'(x)`.
    pub fn slack(&self, set: &PolySet, x: f64) -> f64 {
        let logs: f64 = set
            .iter()
            .zip(&self.lambda_q)
            .map(|(q, l)| l * q.eval(x).abs().ln())
            .sum();
        x - self.lambda_0 - logs - self.nu.potential(x) / self.x_lin
    }
}

#[derive(Clone, Debug)]
pub struct PrimalSolution {
    /// Mixture weight of `mu_eq`.
    pub eq_weight: f64,
    /// Mixture weights `Y_Q` of the `mu_Q`.
    pub weights: Vec<f64>,
    /// Log coefficients `b_Q = Y_Q / deg Q`: `U_mu = sum b_Q log|Q| + kappa`.
    pub b_q: Vec<f64>,
    /// Potential constant `kappa` (equals `I(mu)` when the log-moments vanish).
    pub kappa: f64,
    pub mu: MeasureDensity,
    pub trace: f64,
    pub i_mu: f64,
    pub eps_mix: f64,
    pub condition: f64,
}

impl PrimalSolution {
    /// `mu~ = eps mu_eq + (1 - eps) mu`.
    pub fn mixed(&self, eq: &MeasureDensity) -> MeasureDensity {
        MeasureDensity::mixture(vec![
            (self.eps_mix, eq.clone()),
            (1.0 - self.eps_mix, self.mu.clone()),
        ])
    }
}

/// `c` from `int c |p| sqrt|H| / prod |Q| = 1`.
pub fn normalization_c(problem: &Problem, sigma: &Support, grid: &Grid) -> f64 {
    let mut total = 0.0;
    for (i, (a, b)) in sigma.intervals().enumerate() {
        total += grid.integrate_weighted(a, b, |x| {
            let pv = problem
                .gap_poly
                .as_ref()
                .map_or(1.0, |p| eval_monomial(p, x).abs());
            let d: f64 = problem.set.iter().map(|q| q.eval(x).abs()).product();
            pv * sigma.h(x).abs() / (d * sigma.h_rest(i, x).abs().sqrt())
        });
    }
    1.0 / total
}

fn big_to_f64(x: &num_bigint::BigInt) -> f64 {
    x.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// `X_Q = -deg(Q) c pi (prod_alpha |p(alpha)| sqrt|H(alpha)| / |D'(alpha)|)^(1/deg Q)`
/// using exact resultants and discriminants for the integer parts.
pub fn residue_coefficients(problem: &Problem, sigma: &Support, c: f64) -> Vec<f64> {
    let polys = problem.set.polys();
    polys
        .iter()
        .enumerate()
        .map(|(qi, q)| {
            let d = q.degree() as i32;
            let lc = big_to_f64(&q.leading());
            // sum over roots of log(sqrt|H(alpha)| |p(alpha)|)
            let mut log_num = 0.0;
            for &alpha in &problem.roots[qi] {
                log_num += 0.5 * sigma.h(alpha).abs().ln();
                if let Some(p) = &problem.gap_poly {
                    log_num += eval_monomial(p, alpha).abs().ln();
                }
            }
            // prod |Q'(alpha)| = |Disc Q| |lc|^(2 - d)
            let mut log_den = big_to_f64(&discriminant(q)).ln() + (2 - d) as f64 * lc.ln();
            for (qj, other) in polys.iter().enumerate() {
                if qj == qi {
                    continue;
                }
                // prod |Q_j(alpha)| = |Res(Q, Q_j)| / |lc|^deg Q_j
                log_den += big_to_f64(&resultant(q, other)).ln() - other.degree() as f64 * lc.ln();
            }
            -(d as f64) * c * PI * ((log_num - log_den) / d as f64).exp()
        })
        .collect()
}

/// Leading coefficient of `prod Q` in absolute value.
fn product_leading(set: &PolySet) -> f64 {
    set.iter().map(|q| big_to_f64(&q.leading())).product()
}

/// Assembles the dual measure and extracts `lambda_0`, `lambda_Q`.
pub fn dual_coefficients(
    problem: &Problem,
    sigma: &Support,
    gaps: &GapRootMap,
    blocks: &BlockMeasures,
    cfg: &SolverConfig,
) -> Result<DualSolution> {
    let k = sigma.num_intervals();
    let m_lin = blocks.lin.mass();
    let (c, x_lin, x_q, x_eq) = if problem.set.is_empty() {
        // Make the numerator vanish at the right end and the mass 1.
        let j = 2 * k - 1;
        let (ne, nl) = (
            blocks.eq.numerator_at_endpoint(j),
            blocks.lin.numerator_at_endpoint(j),
        );
        let a = DMatrix::from_row_slice(2, 2, &[ne, nl, 1.0, m_lin]);
        let (x, _) = solve_dense(a, DVector::from_vec(vec![0.0, 1.0]), "dual for empty set")?;
        (x[1] / PI, x[1], Vec::new(), x[0])
    } else {
        let total_degree = problem.set.total_degree();
        let want = problem.gap_poly.as_ref().map_or(0, |p| p.len() - 1);
        if total_degree != k + want {
            if problem.gap_poly.is_none() {
                return Err(Error::MultiRootGapWithoutP);
            }
            return Err(Error::Config(format!(
                "gap polynomial must have degree {} (total degree {total_degree}, {k} intervals)",
                total_degree as i64 - k as i64
            )));
        }
        if !gaps.one_root_per_gap && problem.gap_poly.is_none() {
            return Err(Error::MultiRootGapWithoutP);
        }
        let grid = blocks.eq.grid();
        let c = normalization_c(problem, sigma, grid);
        let x_lin = c * PI / product_leading(&problem.set);
        let x_q = residue_coefficients(problem, sigma, c);
        let x_eq = 1.0 - x_lin * m_lin - x_q.iter().sum::<f64>();
        (c, x_lin, x_q, x_eq)
    };

    let mut raw_parts = vec![(x_eq, blocks.eq.clone()), (x_lin, blocks.lin.clone())];
    raw_parts.extend(x_q.iter().cloned().zip(blocks.mu_q.iter().cloned()));
    let nu_raw = MeasureDensity::mixture(raw_parts);

    let lambda_q: Vec<f64> = problem
        .set
        .iter()
        .zip(&x_q)
        .map(|(q, x)| -x / (x_lin * q.degree() as f64))
        .collect();

    let pts = collocation_points(sigma, cfg.collocation);
    let u = nu_raw.potentials(&pts);
    let vals: Vec<f64> = pts
        .iter()
        .zip(&u)
        .map(|(&x, &ux)| {
            let logs: f64 = problem
                .set
                .iter()
                .zip(&lambda_q)
                .map(|(q, l)| l * q.eval(x).abs().ln())
                .sum();
            x - ux / x_lin - logs
        })
        .collect();
    let lambda_0_raw = vals.iter().sum::<f64>() / vals.len() as f64;
    let lambda_0_deviation = vals
        .iter()
        .map(|v| (v - lambda_0_raw).abs())
        .fold(0.0, f64::max);

    // Mixing in delta * mu_eq rescales every coefficient and shifts the
    // potential by delta * C_eq on the support; lambda_Q is unchanged.
    let dm = cfg.delta_mix;
    let x_eq = dm + (1.0 - dm) * x_eq;
    let x_lin = (1.0 - dm) * x_lin;
    let x_q: Vec<f64> = x_q.iter().map(|x| (1.0 - dm) * x).collect();
    let lambda_0 = lambda_0_raw - dm * blocks.c_eq / x_lin;
    let nu = if dm == 0.0 {
        nu_raw.clone()
    } else {
        MeasureDensity::mixture(vec![(dm, blocks.eq.clone()), (1.0 - dm, nu_raw.clone())])
    };
    let mass = nu.mass();
    let i_nu = nu.energy();
    Ok(DualSolution {
        c,
        x_eq,
        x_lin,
        x_q,
        lambda_q,
        lambda_0,
        lambda_0_raw,
        lambda_0_deviation,
        nu,
        nu_raw,
        mass,
        i_nu,
        delta_mix: dm,
    })
}

/// Solves `sum Y = 1`, `int log|Q'| dmu = 0` for the primal mixture weights.
pub fn primal_weights(
    problem: &Problem,
    blocks: &BlockMeasures,
    cfg: &SolverConfig,
) -> Result<PrimalSolution> {
    let n = problem.set.len();
    let mut a = DMatrix::zeros(n + 1, n + 1);
    let mut rhs = DVector::zeros(n + 1);
    for j in 0..=n {
        a[(0, j)] = 1.0;
    }
    rhs[0] = 1.0;
    for (row, qp) in problem.set.iter().enumerate() {
        a[(row + 1, 0)] = blocks.eq.log_moment(qp);
        for (col, mq) in blocks.mu_q.iter().enumerate() {
            a[(row + 1, col + 1)] = mq.log_moment(qp);
        }
    }
    let (y, cond) = match solve_dense(a, rhs, "primal weights") {
        Ok(v) => v,
        Err(Error::SingularSystem { cond, .. }) => return Err(Error::SingularW(cond)),
        Err(e) => return Err(e),
    };
    let eq_weight = y[0];
    let weights: Vec<f64> = y.iter().skip(1).cloned().collect();
    let b_q: Vec<f64> = problem
        .set
        .iter()
        .zip(&weights)
        .map(|(q, w)| w / q.degree() as f64)
        .collect();
    let kappa = eq_weight * blocks.c_eq
        + weights
            .iter()
            .zip(&blocks.c_q)
            .map(|(w, c)| w * c)
            .sum::<f64>();
    let mut parts = vec![(eq_weight, blocks.eq.clone())];
    parts.extend(weights.iter().cloned().zip(blocks.mu_q.iter().cloned()));
    let mu = MeasureDensity::mixture(parts);
    let trace = mu.expectation();
    let i_mu = mu.energy();
    Ok(PrimalSolution {
        eq_weight,
        weights,
        b_q,
        kappa,
        mu,
        trace,
        i_mu,
        eps_mix: cfg.eps_mix,
        condition: cond,
    })
}

/// Residuals of the optimality conditions, grouped.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Residuals {
    /// `I(nu, mu)` for the unmixed `nu`.
    pub energy: f64,
    /// Numerator of the unmixed `nu` at each endpoint (endpoints at 0 are skipped).
    pub endpoint_numerators: Vec<f64>,
    /// `int log|Q| dmu` per `Q`.
    pub primal_log_moments: Vec<f64>,
    /// `int log|Q| dnu` per `Q` (unmixed `nu`).
    pub dual_log_moments: Vec<f64>,
    /// `int x dmu - lambda_0` with the unmixed dual constant.
    pub duality_gap: f64,
}

impl Residuals {
    /// Flat vector in canonical order.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = vec![self.energy];
        v.extend(&self.endpoint_numerators);
        v.extend(&self.primal_log_moments);
        v.extend(&self.dual_log_moments);
        v.push(self.duality_gap);
        v
    }

    /// Flat vector scaled by the per-group weights.
    pub fn weighted(&self, w: &[f64; 5]) -> Vec<f64> {
        let mut v = vec![w[0] * self.energy];
        v.extend(self.endpoint_numerators.iter().map(|x| w[1] * x));
        v.extend(self.primal_log_moments.iter().map(|x| w[2] * x));
        v.extend(self.dual_log_moments.iter().map(|x| w[3] * x));
        v.push(w[4] * self.duality_gap);
        v
    }

    pub fn objective(&self, w: &[f64; 5]) -> f64 {
        self.weighted(w).iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_vec().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Everything computed for one support.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub support: Support,
    pub gaps: GapRootMap,
    pub blocks: BlockMeasures,
    pub dual: DualSolution,
    pub primal: PrimalSolution,
    pub residuals: Residuals,
}

impl Evaluation {
    pub fn objective(&self, cfg: &SolverConfig) -> f64 {
        self.residuals.objective(&cfg.weights)
    }
}

/// Builds blocks, dual and primal for `sigma` and computes the residuals.
pub fn evaluate(problem: &Problem, sigma: &Support, cfg: &SolverConfig) -> Result<Evaluation> {
    let grid = Grid::new(cfg.nodes_per_interval);
    evaluate_with_grid(problem, sigma, cfg, &grid)
}

pub fn evaluate_with_grid(
    problem: &Problem,
    sigma: &Support,
    cfg: &SolverConfig,
    grid: &Arc<Grid>,
) -> Result<Evaluation> {
    let gaps = problem.validate(sigma)?;
    let blocks = BlockMeasures::build(problem, sigma, grid)?;
    let dual = dual_coefficients(problem, sigma, &gaps, &blocks, cfg)?;
    let primal = primal_weights(problem, &blocks, cfg)?;
    let residuals = residuals_of(problem, sigma, &dual, &primal);
    Ok(Evaluation {
        support: sigma.clone(),
        gaps,
        blocks,
        dual,
        primal,
        residuals,
    })
}

fn residuals_of(
    problem: &Problem,
    sigma: &Support,
    dual: &DualSolution,
    primal: &PrimalSolution,
) -> Residuals {
    let endpoint_numerators = sigma
        .endpoints()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a > 0.0)
        .map(|(j, _)| dual.nu_raw.numerator_at_endpoint(j))
        .collect();
    Residuals {
        energy: dual.nu_raw.cross_energy(&primal.mu),
        endpoint_numerators,
        primal_log_moments: problem.set.iter().map(|q| primal.mu.log_moment(q)).collect(),
        dual_log_moments: problem.set.iter().map(|q| dual.nu_raw.log_moment(q)).collect(),
        duality_gap: primal.trace - dual.lambda_0_raw,
    }
}

/// Convenience: the residual vector for a support.
pub fn objective_residuals(problem: &Problem, sigma: &Support, cfg: &SolverConfig) -> Result<Vec<f64>> {
    Ok(evaluate(problem, sigma, cfg)?.residuals.to_vec())
}

/// Parses a list of polynomials given as ascending integer coefficients.
pub fn polyset_from_i64(polys: &[&[i64]]) -> Result<PolySet> {
    PolySet::new(polys.iter().map(|c| IntPoly::from_i64(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> SolverConfig {
        SolverConfig {
            nodes_per_interval: 128,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn schur_dual_and_primal() {
        let p = Problem::new(PolySet::empty()).unwrap();
        let s = Support::new(vec![0.0, 4.0]).unwrap();
        let cfg = SolverConfig {
            delta_mix: 0.0,
            ..cfg()
        };
        let ev = evaluate(&p, &s, &cfg).unwrap();
        assert_abs_diff_eq!(ev.dual.lambda_0, 2.0, epsilon = 1e-12);
        assert!(ev.dual.lambda_0_deviation < 1e-12);
        assert_abs_diff_eq!(ev.dual.x_lin, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(ev.dual.x_eq, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev.primal.trace, 2.0, epsilon = 1e-12);
        assert!(ev.residuals.max_abs() < 1e-9, "{:?}", ev.residuals);
    }

    #[test]
    fn pair_at_reference_support() {
        let p = Problem::new(polyset_from_i64(&[&[0, 1], &[-1, 1]]).unwrap()).unwrap();
        let s = Support::new(vec![
            0.0706597128759717,
            0.7191192204214787,
            1.337668148298108,
            4.687953934364709,
        ])
        .unwrap();
        let ev = evaluate(&p, &s, &cfg()).unwrap();
        assert_abs_diff_eq!(ev.dual.mass, 1.0, epsilon = 1e-9);
        assert!((ev.dual.lambda_0 - 1.84701204).abs() < 1e-6, "{}", ev.dual.lambda_0);
        assert!(ev.dual.lambda_0_deviation < 1e-8);
        assert!(ev.residuals.max_abs() < 1e-5, "{:?}", ev.residuals);
    }
}
