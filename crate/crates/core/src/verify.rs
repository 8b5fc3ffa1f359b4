//! Floating-point certification of a primal/dual pair.
//!
//! Given a support and the measures built on it, the lower bound is
//! `lambda_0 - delta log 18`, where `delta` bounds the ratio of the dual
//! density to the equilibrium density at every endpoint. It is only reported
//! as verified when the endpoint slope comparisons, the convexity of the dual
//! slack on every gap segment, positivity of the dual density and a global scan
//! of the slack all pass. The upper bound is the mean of the slightly mixed
//! primal measure `mu~ = eps mu_eq + (1 - eps) mu`, verified by its
//! log-moments and a spot check of its potential inequality.
//!
//! None of this is interval arithmetic; the bounds are "numerically certified".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::MeasureDensity;
use crate::primal_dual::{Evaluation, Problem};
use crate::support::Support;

/// Right end of the region on which the inequalities are certified.
pub const CERT_UPPER: f64 = 18.0;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct VerifyConfig {
    /// Samples of the second derivative per gap segment.
    pub gap_samples: usize,
    /// Points of the global slack scan over `[0, 18]` minus the support.
    pub scan_points: usize,
    /// Points of the primal potential spot check.
    pub spot_points: usize,
    /// Interior samples per interval for the positivity precheck.
    pub positivity_samples: usize,
    /// The global scan requires `F(x) > -scan_tol`.
    pub scan_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            gap_samples: 64,
            scan_points: 1024,
            spot_points: 256,
            positivity_samples: 256,
            scan_tol: 1e-9,
        }
    }
}

/// Slope comparison at one endpoint.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EndpointCheck {
    pub index: usize,
    pub endpoint: f64,
    /// `true` for a left endpoint `a_{2i}`.
    pub left: bool,
    /// `d/dx |n_nu(x)|` at the endpoint, taken from inside the interval.
    pub nu_slope: f64,
    /// `d/dx |P_eq(x)|` at the endpoint, taken from inside the interval.
    pub eq_slope: f64,
    /// Oriented slope of the numerator of `nu' - delta_i mu_eq`; must be >= 0.
    pub margin: f64,
    /// Whether the plain comparison `nu_slope >= eq_slope` (left) or
    /// `nu_slope <= eq_slope` (right) holds.
    pub plain_comparison: bool,
    pub passed: bool,
}

/// Minimum of the slack's second derivative on one segment outside the support.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GapCheck {
    pub lo: f64,
    pub hi: f64,
    /// Endpoint whose ratio `delta_i` is subtracted on this segment.
    pub endpoint_index: usize,
    pub min_value: f64,
    pub argmin: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertifiedBounds {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
    pub lower_verified: bool,
    pub upper_verified: bool,
    pub lambda_0: f64,
    pub delta: f64,
    /// `delta_i` for every endpoint; an endpoint at 0 is excluded from `delta`.
    pub delta_i: Vec<f64>,
    pub min_nu_numerator: f64,
    pub endpoint_checks: Vec<EndpointCheck>,
    pub gap_checks: Vec<GapCheck>,
    pub scan_min: f64,
    pub scan_argmin: f64,
    pub dual_log_moments: Vec<f64>,
    pub primal_log_moments: Vec<f64>,
    pub feasibility: Vec<bool>,
    pub spot_min: f64,
    pub failures: Vec<String>,
}

impl CertifiedBounds {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `delta_i = scale |n_nu(a_i)| / |n_eq(a_i)|` for every endpoint, where
/// `scale` converts `nu` to the measure appearing in the slack (`1 / X_lin`).
pub fn delta_ratios(nu: &MeasureDensity, scale: f64, eq: &MeasureDensity) -> Vec<f64> {
    (0..nu.support().endpoints().len())
        .map(|j| scale * nu.numerator_at_endpoint(j).abs() / eq.numerator_at_endpoint(j).abs())
        .collect()
}

/// Largest ratio over endpoints away from 0 (the dual constraint only has to
/// hold on `[0, CERT_UPPER]`, so an endpoint at 0 needs no correction).
fn max_delta(sigma: &Support, delta_i: &[f64]) -> f64 {
    sigma
        .endpoints()
        .iter()
        .zip(delta_i)
        .filter(|(a, _)| **a > 0.0)
        .map(|(_, d)| *d)
        .fold(0.0, f64::max)
}

/// The dual bound `lambda_0 - delta log 18` after subtracting `delta mu_eq`
/// from `nu / X_lin` to make its endpoint numerators non-negative. Unlike the
/// raw `lambda_0`, this respects weak duality away from the optimum as well.
pub fn dual_lower_bound(ev: &Evaluation) -> f64 {
    let dual = &ev.dual;
    let deltas = delta_ratios(&dual.nu, 1.0 / dual.x_lin, &ev.blocks.eq);
    dual.lambda_0 - max_delta(&ev.support, &deltas) * CERT_UPPER.ln()
}

/// Derivative of `|n(x)|` at endpoint `j`, one-sided from inside its interval.
fn inner_slope(m: &MeasureDensity, j: usize) -> f64 {
    let sigma = m.support();
    let i = j / 2;
    let (a, b) = sigma.interval(i);
    let x = sigma.endpoints()[j];
    let dir = if j % 2 == 0 { 1.0 } else { -1.0 };
    let h = 1e-5 * (b - a);
    let f = |t: f64| m.numerator_on(i, t);
    let sign = f(x + dir * 1e-3 * (b - a)).signum();
    // Second-order one-sided difference; `dir` orients it into the interval.
    let d = (-3.0 * f(x) + 4.0 * f(x + dir * h) - f(x + 2.0 * dir * h)) / (2.0 * h);
    sign * dir * d
}

/// Compares the slopes of the dual and equilibrium numerators at each endpoint.
///
/// The density of `nu' - delta_i mu_eq` must grow into the interval, which at a
/// left endpoint means a non-negative slope and at a right endpoint a
/// non-positive one.
pub fn endpoint_derivative_checks(
    nu: &MeasureDensity,
    scale: f64,
    eq: &MeasureDensity,
    deltas: &[f64],
) -> Vec<EndpointCheck> {
    let ends = nu.support().endpoints();
    (0..ends.len())
        .map(|j| {
            let left = j % 2 == 0;
            let nu_slope = inner_slope(nu, j);
            let eq_slope = inner_slope(eq, j);
            let orient = if left { 1.0 } else { -1.0 };
            let margin = orient * (scale * nu_slope - deltas[j] * eq_slope);
            let plain_comparison = if left {
                nu_slope >= eq_slope
            } else {
                nu_slope <= eq_slope
            };
            EndpointCheck {
                index: j,
                endpoint: ends[j],
                left,
                nu_slope,
                eq_slope,
                margin,
                plain_comparison,
                passed: margin >= -1e-12 * (nu_slope.abs() + eq_slope.abs()),
            }
        })
        .collect()
}

/// Smallest numerator value of `nu` over interior samples of every interval
/// and its endpoints.
pub fn min_numerator(nu: &MeasureDensity, samples: usize) -> f64 {
    let sigma = nu.support();
    let mut min = f64::INFINITY;
    for (i, (a, b)) in sigma.intervals().enumerate() {
        min = min.min(nu.numerator_on(i, a)).min(nu.numerator_on(i, b));
        for k in 0..samples {
            let x = a + (b - a) * (k as f64 + 0.5) / samples as f64;
            min = min.min(nu.numerator_on(i, x));
        }
    }
    min
}

/// Segments of `[0, 18]` outside the support on which the slack must be
/// convex, each paired with the endpoint whose `delta_i` applies.
///
/// Every gap is split at its unique root; below the support the segment runs
/// from 0, above it up to 18.
pub fn convexity_segments(sigma: &Support, gap_roots: &[f64]) -> Vec<(f64, f64, usize)> {
    let e = sigma.endpoints();
    let mut out = Vec::new();
    if e[0] > 0.0 {
        out.push((0.0, e[0], 0));
    }
    for (j, &r) in gap_roots.iter().enumerate() {
        out.push((e[2 * j + 1], r, 2 * j + 1));
        out.push((r, e[2 * j + 2], 2 * j + 2));
    }
    let last = e.len() - 1;
    if e[last] < CERT_UPPER {
        out.push((e[last], CERT_UPPER, last));
    }
    out
}

/// Evaluates `f''(x) = sum_Q lambda_Q sum_alpha (x - alpha)^-2
/// + int d(scale nu - delta_i mu_eq)(y) / (x - y)^2` on every segment.
#[allow(clippy::too_many_arguments)]
pub fn gap_convexity(
    nu: &MeasureDensity,
    scale: f64,
    eq: &MeasureDensity,
    roots: &[Vec<f64>],
    lambda_q: &[f64],
    deltas: &[f64],
    gap_roots: &[f64],
    samples: usize,
) -> Vec<GapCheck> {
    let sigma = nu.support();
    convexity_segments(sigma, gap_roots)
        .into_iter()
        .map(|(lo, hi, j)| {
            let mut min_value = f64::INFINITY;
            let mut argmin = lo;
            for k in 0..samples {
                let x = lo + (hi - lo) * (k as f64 + 0.5) / samples as f64;
                let poles: f64 = roots
                    .iter()
                    .zip(lambda_q)
                    .map(|(rs, l)| l * rs.iter().map(|a| (x - a).powi(-2)).sum::<f64>())
                    .sum();
                let v = poles + scale * nu.cauchy_sq(x) - deltas[j] * eq.cauchy_sq(x);
                if v < min_value {
                    min_value = v;
                    argmin = x;
                }
            }
            GapCheck {
                lo,
                hi,
                endpoint_index: j,
                min_value,
                argmin,
                passed: min_value > 0.0,
            }
        })
        .collect()
}

/// `n` midpoint samples of `[0, 18]` minus the support, spread over the
/// complementary segments in proportion to their length.
pub fn complement_samples(sigma: &Support, n: usize) -> Vec<f64> {
    let e = sigma.endpoints();
    let mut segs = Vec::new();
    if e[0] > 0.0 {
        segs.push((0.0, e[0]));
    }
    segs.extend(sigma.gaps());
    if e[e.len() - 1] < CERT_UPPER {
        segs.push((e[e.len() - 1], CERT_UPPER));
    }
    let total: f64 = segs.iter().map(|(a, b)| b - a).sum();
    let mut pts = Vec::with_capacity(n + segs.len());
    for (a, b) in segs {
        let k = ((n as f64 * (b - a) / total).round() as usize).max(1);
        pts.extend((0..k).map(|i| a + (b - a) * (i as f64 + 0.5) / k as f64));
    }
    pts
}

/// Runs every check and reports the bounds; failed checks are listed in
/// `failures` rather than returned as an error.
pub fn inspect(problem: &Problem, ev: &Evaluation, cfg: &VerifyConfig) -> Result<CertifiedBounds> {
    let sigma = &ev.support;
    let dual = &ev.dual;
    let eq = &ev.blocks.eq;
    let mut failures = Vec::new();

    if !ev.gaps.one_root_per_gap {
        return Err(Error::ChecksFailed(vec![
            "a gap contains more than one root; certification needs exactly one".into(),
        ]));
    }
    let gap_roots: Vec<f64> = ev.gaps.gaps.iter().map(|g| g[0].1).collect();
    if ev.gaps.below.iter().any(|&(_, r)| r != 0.0) {
        failures.push("a root other than 0 lies below the support".into());
    }
    if !ev.gaps.above.is_empty() {
        failures.push("a root lies above the support".into());
    }
    if dual.lambda_q.iter().any(|&l| l < 0.0) {
        failures.push("some lambda_Q is negative".into());
    }
    if dual.lambda_0 <= 0.0 {
        failures.push("lambda_0 is not positive".into());
    }

    let scale = 1.0 / dual.x_lin;
    let min_nu = min_numerator(&dual.nu, cfg.positivity_samples);
    if min_nu < 0.0 {
        failures.push(format!("dual density is negative (numerator {min_nu:.3e})"));
    }

    let delta_i = delta_ratios(&dual.nu, scale, eq);
    let delta = max_delta(sigma, &delta_i);

    let endpoint_checks = endpoint_derivative_checks(&dual.nu, scale, eq, &delta_i);
    for c in endpoint_checks.iter().filter(|c| !c.passed && c.endpoint > 0.0) {
        failures.push(format!(
            "slope comparison fails at endpoint {} (margin {:.3e})",
            c.index, c.margin
        ));
    }

    let gap_checks = gap_convexity(
        &dual.nu,
        scale,
        eq,
        &problem.roots,
        &dual.lambda_q,
        &delta_i,
        &gap_roots,
        cfg.gap_samples,
    );
    for g in gap_checks.iter().filter(|g| !g.passed) {
        failures.push(format!(
            "slack is not convex on ({:.6}, {:.6}): {:.3e} at {:.6}",
            g.lo, g.hi, g.min_value, g.argmin
        ));
    }

    // Global scan of the slack F(x) = x - lambda_0 - sum lambda_Q log|Q| - U_nu'.
    let pts: Vec<f64> = complement_samples(sigma, cfg.scan_points)
        .into_iter()
        .filter(|&x| problem.set.iter().all(|q| q.eval(x) != 0.0))
        .collect();
    let u = dual.nu.potentials(&pts);
    let (mut scan_min, mut scan_argmin) = (f64::INFINITY, 0.0);
    for (&x, ux) in pts.iter().zip(&u) {
        let logs: f64 = problem
            .set
            .iter()
            .zip(&dual.lambda_q)
            .map(|(q, l)| l * q.eval(x).abs().ln())
            .sum();
        let f = x - dual.lambda_0 - logs - scale * ux;
        if f < scan_min {
            scan_min = f;
            scan_argmin = x;
        }
    }
    if scan_min <= -cfg.scan_tol {
        failures.push(format!("dual slack {scan_min:.3e} at {scan_argmin:.6}"));
    }

    let dual_log_moments: Vec<f64> = problem.set.iter().map(|q| dual.nu.log_moment(q)).collect();
    if dual_log_moments.iter().any(|&m| m < 0.0) {
        failures.push("int log|Q| dnu is negative".into());
    }
    let lower_verified = failures.is_empty();

    // Upper bound from the mixed primal measure.
    let primal = &ev.primal;
    let mu_t = primal.mixed(eq);
    let upper = mu_t.expectation();
    let primal_log_moments: Vec<f64> = problem.set.iter().map(|q| mu_t.log_moment(q)).collect();
    let feasibility: Vec<bool> = primal_log_moments.iter().map(|&m| m >= 0.0).collect();
    let mut upper_failures = Vec::new();
    if feasibility.iter().any(|ok| !ok) {
        upper_failures.push("int log|Q| dmu~ is negative".to_string());
    }
    let b_t: Vec<f64> = primal.b_q.iter().map(|b| (1.0 - primal.eps_mix) * b).collect();
    let spots: Vec<f64> = complement_samples(sigma, cfg.spot_points)
        .into_iter()
        .filter(|&x| problem.set.iter().all(|q| q.eval(x) != 0.0))
        .collect();
    let um = mu_t.potentials(&spots);
    let spot_min = spots
        .iter()
        .zip(&um)
        .map(|(&x, ux)| {
            ux - problem
                .set
                .iter()
                .zip(&b_t)
                .map(|(q, b)| b * q.eval(x).abs().ln())
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    if spot_min < -1e-12 {
        upper_failures.push(format!("primal potential inequality fails ({spot_min:.3e})"));
    }
    let upper_verified = upper_failures.is_empty();
    failures.extend(upper_failures);

    let lower = dual.lambda_0 - delta * CERT_UPPER.ln();
    if lower > upper {
        failures.push(format!("lower bound {lower} exceeds upper bound {upper}"));
    }

    Ok(CertifiedBounds {
        label: "numerically certified".into(),
        lower,
        upper,
        lower_verified,
        upper_verified,
        lambda_0: dual.lambda_0,
        delta,
        delta_i,
        min_nu_numerator: min_nu,
        endpoint_checks,
        gap_checks,
        scan_min,
        scan_argmin,
        dual_log_moments,
        primal_log_moments,
        feasibility,
        spot_min,
        failures,
    })
}

/// Like [`inspect`], but fails with [`Error::ChecksFailed`] unless every
/// check passes.
pub fn certify(problem: &Problem, ev: &Evaluation, cfg: &VerifyConfig) -> Result<CertifiedBounds> {
    let report = inspect(problem, ev, cfg)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::ChecksFailed(report.failures))
    }
}
