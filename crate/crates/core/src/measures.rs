//! Building-block measures on a support: the equilibrium measure, the
//! measure with linear potential, and measures whose potential matches
//! `log|Q| / deg Q` on the support.
//!
//! All of them have densities `n(x) / (pi sqrt|H(x)|)` with a numerator `n`
//! that is smooth on each closed interval. We keep an analytic description
//! of `n` (for exact endpoint values) alongside a discretisation used for
//! potentials and integrals.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::polyarith::IntPoly;
use crate::quadrature::{clenshaw, Block, Discretized, Grid};
use crate::support::Support;

/// Accepted relative error of the inversion construction's derivative
/// identity `U'(x) = 1/(x - alpha)` before falling back to the direct solve.
pub const BALAYAGE_CHECK_TOL: f64 = 1e-10;

/// Conditioning limit for the small dense solves.
pub const MAX_CONDITION: f64 = 1e12;

/// Real polynomial stored as a Chebyshev series in `u = (x - m) / r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPoly {
    pub m: f64,
    pub r: f64,
    pub cheb: Vec<f64>,
}

impl ScaledPoly {
    pub fn eval(&self, x: f64) -> f64 {
        clenshaw(&self.cheb, (x - self.m) / self.r)
    }

    pub fn degree(&self) -> usize {
        self.cheb.len().saturating_sub(1)
    }

    /// The polynomial `x * p(x)`.
    pub fn mul_x(&self) -> ScaledPoly {
        // x T_j = m T_j + r (T_{j+1} + T_{|j-1|}) / 2, with u T_0 = T_1
        let n = self.cheb.len();
        let mut out = vec![0.0; n + 1];
        for (j, &c) in self.cheb.iter().enumerate() {
            out[j] += self.m * c;
            if j == 0 {
                out[1] += self.r * c;
            } else {
                out[j + 1] += 0.5 * self.r * c;
                out[j - 1] += 0.5 * self.r * c;
            }
        }
        ScaledPoly {
            m: self.m,
            r: self.r,
            cheb: out,
        }
    }

    pub fn add(&self, other: &ScaledPoly) -> ScaledPoly {
        assert!(self.m == other.m && self.r == other.r, "mismatched scaling");
        let n = self.cheb.len().max(other.cheb.len());
        let cheb = (0..n)
            .map(|j| self.cheb.get(j).unwrap_or(&0.0) + other.cheb.get(j).unwrap_or(&0.0))
            .collect();
        ScaledPoly {
            m: self.m,
            r: self.r,
            cheb,
        }
    }

    /// Coefficients in the monomial basis of `x`, ascending.
    pub fn to_monomial(&self) -> Vec<f64> {
        // Chebyshev -> monomial in u
        let n = self.cheb.len();
        let mut u_coeffs = vec![0.0; n];
        let mut tm1 = vec![0.0; n + 1];
        let mut t = vec![0.0; n + 1];
        tm1[0] = 1.0; // T_0
        if n > 1 {
            t[1] = 1.0; // T_1
        }
        for (j, &c) in self.cheb.iter().enumerate() {
            let tj = if j == 0 { &tm1 } else { &t };
            if j <= 1 {
                for k in 0..n {
                    u_coeffs[k] += c * tj[k];
                }
                continue;
            }
            let mut next = vec![0.0; n + 1];
            for k in 0..n {
                next[k + 1] += 2.0 * t[k];
                next[k] -= tm1[k];
            }
            tm1 = std::mem::replace(&mut t, next);
            for k in 0..n {
                u_coeffs[k] += c * t[k];
            }
        }
        // substitute u = (x - m) / r
        let mut out = vec![0.0; n];
        let mut pow = vec![1.0]; // ((x - m)/r)^k
        for (k, &uc) in u_coeffs.iter().enumerate() {
            if k > 0 {
                let mut next = vec![0.0; pow.len() + 1];
                for (i, &p) in pow.iter().enumerate() {
                    next[i + 1] += p / self.r;
                    next[i] -= p * self.m / self.r;
                }
                pow = next;
            }
            for (i, &p) in pow.iter().enumerate() {
                out[i] += uc * p;
            }
        }
        out
    }
}

/// Analytic description of a density `n(x) / (pi sqrt|H(x)|)`.
#[derive(Clone, Debug)]
pub enum DensityForm {
    /// `n(x) = scale * s_i^alt * P(x)` where `s_i` is the branch sign of
    /// interval `i` (applied when `alternating`).
    NumerOverSqrtH {
        numer: ScaledPoly,
        alternating: bool,
        scale: f64,
    },
    /// Density `c |p(x)| sqrt|H(x)| / prod |Q(x)|` (monomial `p`, `None`
    /// meaning `p = 1`).
    SqrtHOverProd {
        c: f64,
        p: Option<Vec<f64>>,
        denom: Vec<IntPoly>,
    },
    /// `(1/deg Q) sum_alpha omega_alpha`: balayage of the roots of `Q`.
    RootSum { terms: Vec<RootTerm> },
    /// Linear combination of other measures on the same support.
    Mixture(Vec<(f64, MeasureDensity)>),
}

/// Balayage of a unit point mass at `alpha` onto the support, with weight.
#[derive(Clone, Debug)]
pub struct RootTerm {
    pub alpha: f64,
    pub weight: f64,
    pub kernel: RootKernel,
    /// Per-interval sign making the numerator positive.
    pub sigma: Vec<f64>,
}

#[derive(Clone, Debug)]
pub enum RootKernel {
    /// Pull-back of the equilibrium measure of the image under
    /// `w = 1 / (x - alpha)`; `image_eq` is its numerator in `w`.
    Inversion {
        image_eq: ScaledPoly,
        sqrt_h_alpha: f64,
    },
    /// Numerator `T(x) / (x - alpha)` from the direct collocation solve.
    Direct { t: ScaledPoly },
}

impl RootTerm {
    fn numerator(&self, i: usize, x: f64, k: usize) -> f64 {
        let d = x - self.alpha;
        let raw = match &self.kernel {
            RootKernel::Inversion {
                image_eq,
                sqrt_h_alpha,
            } => {
                let w = 1.0 / d;
                image_eq.eval(w) * d.powi(k as i32 - 1) / d.abs() * sqrt_h_alpha
            }
            RootKernel::Direct { t } => t.eval(x) / d,
        };
        self.weight * self.sigma[i] * raw
    }
}

/// A finite signed measure on a support, with its discretisation.
#[derive(Clone, Debug)]
pub struct MeasureDensity {
    support: Support,
    form: DensityForm,
    disc: Discretized,
}

impl MeasureDensity {
    fn build(support: &Support, form: DensityForm, grid: &Arc<Grid>) -> MeasureDensity {
        let disc = match &form {
            DensityForm::Mixture(parts) => {
                let refs: Vec<(f64, &Discretized)> =
                    parts.iter().map(|(w, m)| (*w, &m.disc)).collect();
                Discretized::combine(&refs)
            }
            _ => Discretized::from_numerator(grid, support, |i, x| {
                numerator_of(&form, support, i, x)
            }),
        };
        MeasureDensity {
            support: support.clone(),
            form,
            disc,
        }
    }

    /// Linear combination `sum w_k mu_k` of measures on the same support.
    pub fn mixture(parts: Vec<(f64, MeasureDensity)>) -> MeasureDensity {
        assert!(!parts.is_empty(), "empty mixture");
        let support = parts[0].1.support.clone();
        let grid = parts[0].1.disc.grid.clone();
        MeasureDensity::build(&support, DensityForm::Mixture(parts), &grid)
    }

    /// Measure of the form `c |p| sqrt|H| / prod |Q|`.
    pub fn sqrt_h_over_prod(
        support: &Support,
        c: f64,
        p: Option<Vec<f64>>,
        denom: Vec<IntPoly>,
        grid: &Arc<Grid>,
    ) -> MeasureDensity {
        MeasureDensity::build(support, DensityForm::SqrtHOverProd { c, p, denom }, grid)
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn form(&self) -> &DensityForm {
        &self.form
    }

    pub fn discretized(&self) -> &Discretized {
        &self.disc
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.disc.grid
    }

    /// Numerator `n(x)` on interval `i` (valid on the closed interval).
    pub fn numerator_on(&self, i: usize, x: f64) -> f64 {
        numerator_of(&self.form, &self.support, i, x)
    }

    /// Numerator at an endpoint index `j` of the support.
    pub fn numerator_at_endpoint(&self, j: usize) -> f64 {
        self.numerator_on(j / 2, self.support.endpoints()[j])
    }

    /// Density at `x` (0 off the support).
    pub fn density(&self, x: f64) -> f64 {
        match self.support.interval_of(x) {
            Some(i) => {
                let (a, b) = self.support.interval(i);
                if x == a || x == b {
                    return f64::INFINITY;
                }
                self.numerator_on(i, x) / (PI * self.support.h(x).abs().sqrt())
            }
            None => 0.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.disc.mass()
    }

    pub fn expectation(&self) -> f64 {
        self.disc.integrate(|x| x)
    }

    /// `int log|Q(x)| dmu`.
    pub fn log_moment(&self, q: &IntPoly) -> f64 {
        self.disc.integrate(|x| q.eval(x).abs().ln())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.disc.integrate(f)
    }

    /// Logarithmic potential `U(s)`.
    pub fn potential(&self, s: f64) -> f64 {
        self.disc.potential(s)
    }

    pub fn potentials(&self, pts: &[f64]) -> Vec<f64> {
        self.disc.potentials(pts)
    }

    /// Derivative of the potential: `(PV) int dmu(y) / (s - y)`.
    pub fn cauchy(&self, s: f64) -> f64 {
        self.disc.cauchy(s)
    }

    /// Second-order kernel `int dmu(y) / (s - y)^2` off the support.
    pub fn cauchy_sq(&self, s: f64) -> f64 {
        self.disc.cauchy_sq(s)
    }

    /// Principal value by singularity subtraction (errors near nodes).
    pub fn pv_kernel(&self, x: f64) -> Result<f64> {
        self.disc.pv_subtracted(x)
    }

    /// `I(mu, nu) = int U_mu dnu`.
    pub fn cross_energy(&self, other: &MeasureDensity) -> f64 {
        let pts = other.disc.nodes();
        let u = self.potentials(&pts);
        other.disc.integrate_nodal(&u)
    }

    pub fn energy(&self) -> f64 {
        self.cross_energy(self)
    }

    /// Value of `U(s) - f(s)` at the first interval's midpoint.
    pub fn potential_constant(&self, f: impl Fn(f64) -> f64) -> f64 {
        let (a, b) = self.support.interval(0);
        let s = 0.5 * (a + b);
        self.potential(s) - f(s)
    }

    /// Collocation points: `per` Chebyshev points in each interval.
    pub fn collocation(&self, per: usize) -> Vec<f64> {
        collocation_points(&self.support, per)
    }
}

/// `per` interior Chebyshev points in every interval of the support.
pub fn collocation_points(sigma: &Support, per: usize) -> Vec<f64> {
    sigma
        .intervals()
        .flat_map(|(a, b)| {
            (0..per).map(move |k| {
                let t = ((2 * k + 1) as f64 * PI / (2 * per) as f64).cos();
                0.5 * (a + b) + 0.5 * (b - a) * t
            })
        })
        .collect()
}

fn numerator_of(form: &DensityForm, sigma: &Support, i: usize, x: f64) -> f64 {
    match form {
        DensityForm::NumerOverSqrtH {
            numer,
            alternating,
            scale,
        } => {
            let s = if *alternating { sigma.branch_sign(i) } else { 1.0 };
            scale * s * numer.eval(x)
        }
        DensityForm::SqrtHOverProd { c, p, denom } => {
            let pv = p.as_ref().map_or(1.0, |p| eval_monomial(p, x).abs());
            let d: f64 = denom.iter().map(|q| q.eval(x).abs()).product();
            PI * c * pv * sigma.h(x).abs() / d
        }
        DensityForm::RootSum { terms } => {
            let k = sigma.num_intervals();
            terms.iter().map(|t| t.numerator(i, x, k)).sum()
        }
        DensityForm::Mixture(parts) => parts
            .iter()
            .map(|(w, m)| w * numerator_of(&m.form, sigma, i, x))
            .sum(),
    }
}

/// Horner evaluation of ascending monomial coefficients.
pub fn eval_monomial(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Solves a small dense system with full pivoting, rejecting it when the
/// 2-norm condition number exceeds [`MAX_CONDITION`].
pub fn solve_dense(a: DMatrix<f64>, b: DVector<f64>, what: &str) -> Result<(DVector<f64>, f64)> {
    if a.nrows() == 0 {
        return Ok((DVector::zeros(0), 1.0));
    }
    let cond = condition_number(&a);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::SingularSystem {
            what: what.to_string(),
            cond,
        });
    }
    let lu = a.full_piv_lu();
    let x = lu.solve(&b).ok_or_else(|| Error::SingularSystem {
        what: what.to_string(),
        cond,
    })?;
    Ok((x, cond))
}

pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    let sv = a.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Gap moments `int_gap T_k(u) / sqrt|H| dx` for `k < ncols`, one row per gap.
fn gap_moments(sigma: &Support, grid: &Grid, m: f64, r: f64, ncols: usize) -> DMatrix<f64> {
    let l = sigma.num_gaps();
    let mut a = DMatrix::zeros(l, ncols);
    for j in 0..l {
        let (g1, g2) = sigma.gap(j);
        let nodes = grid.nodes(g1, g2);
        let w = PI / grid.len() as f64;
        for x in nodes {
            let base = w / sigma.h_rest_gap(j, x).abs().sqrt();
            let u = (x - m) / r;
            let (mut tm1, mut t) = (1.0, u);
            for k in 0..ncols {
                let tk = if k == 0 { 1.0 } else { t };
                a[(j, k)] += base * tk;
                if k >= 1 {
                    let next = 2.0 * u * t - tm1;
                    tm1 = t;
                    t = next;
                }
            }
        }
    }
    a
}

/// Gap integrals `int_gap f(x) / sqrt|H| dx`.
fn gap_integrals(sigma: &Support, grid: &Grid, f: impl Fn(f64) -> f64) -> Vec<f64> {
    (0..sigma.num_gaps())
        .map(|j| {
            let (g1, g2) = sigma.gap(j);
            grid.integrate_weighted(g1, g2, |x| f(x) / sigma.h_rest_gap(j, x).abs().sqrt())
        })
        .collect()
}

/// Numerator polynomial of the equilibrium measure: monic of degree `l`,
/// with vanishing integral against `1/sqrt|H|` over every gap.
pub fn equilibrium_numerator(sigma: &Support, grid: &Grid) -> Result<ScaledPoly> {
    let (m, r) = sigma.hull_scale();
    let l = sigma.num_gaps();
    // x^l has Chebyshev coefficient r^l / 2^(l-1) on T_l(u)
    let lead = if l == 0 {
        1.0
    } else {
        r.powi(l as i32) / 2f64.powi(l as i32 - 1)
    };
    let mom = gap_moments(sigma, grid, m, r, l + 1);
    let a = mom.columns(0, l).into_owned();
    let b = -mom.column(l) * lead;
    let (p, _) = solve_dense(a, b, "equilibrium gap moments")?;
    let mut cheb: Vec<f64> = p.iter().cloned().collect();
    cheb.push(lead);
    Ok(ScaledPoly { m, r, cheb })
}

/// The equilibrium measure of the support.
pub fn equilibrium(sigma: &Support, grid: &Arc<Grid>) -> Result<MeasureDensity> {
    let p = equilibrium_numerator(sigma, grid)?;
    Ok(MeasureDensity::build(
        sigma,
        DensityForm::NumerOverSqrtH {
            numer: p,
            alternating: true,
            scale: 1.0,
        },
        grid,
    ))
}

/// The measure with potential `x + C` on the support, normalised so that
/// its numerator is `-s_i (x P_eq(x) + S(x))` with `deg S < l`.
///
/// On a single interval `[a, b]` the numerator is `-x`, a signed measure of
/// mass `-(a+b)/2`. Adding multiples of the equilibrium measure only shifts
/// the constant `C`, so this choice is a normalisation.
pub fn linear_potential_measure(sigma: &Support, grid: &Arc<Grid>) -> Result<MeasureDensity> {
    let p_eq = equilibrium_numerator(sigma, grid)?;
    let xp = p_eq.mul_x();
    let l = sigma.num_gaps();
    let (m, r) = (p_eq.m, p_eq.r);
    let mut cheb = xp.cheb.clone();
    if l > 0 {
        let a = gap_moments(sigma, grid, m, r, l);
        let rhs = gap_integrals(sigma, grid, |x| xp.eval(x));
        let b = -DVector::from_vec(rhs);
        let (s, _) = solve_dense(a, b, "linear-potential gap moments")?;
        for (k, v) in s.iter().enumerate() {
            cheb[k] += v;
        }
    }
    Ok(MeasureDensity::build(
        sigma,
        DensityForm::NumerOverSqrtH {
            numer: ScaledPoly { m, r, cheb },
            alternating: true,
            scale: -1.0,
        },
        grid,
    ))
}

/// How the balayage of a root was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Inversion,
    Direct,
}

/// Balayage `omega_alpha` of the unit mass at `alpha` onto the support:
/// the probability measure with potential `log|x - alpha| + C` there.
pub fn balayage(sigma: &Support, alpha: f64, grid: &Arc<Grid>) -> Result<(RootTerm, Construction)> {
    if sigma.contains(alpha) {
        return Err(Error::RootInsideSupport {
            poly: format!("x-({alpha})"),
            root: alpha,
        });
    }
    let probe = collocation_points(sigma, 4);
    let check = |term: &RootTerm| -> f64 {
        let form = DensityForm::RootSum {
            terms: vec![term.clone()],
        };
        let disc = Discretized::from_numerator(grid, sigma, |i, x| numerator_of(&form, sigma, i, x));
        probe
            .iter()
            .map(|&x| (disc.cauchy(x) - 1.0 / (x - alpha)).abs() * (x - alpha).abs())
            .fold(0.0, f64::max)
    };
    if let Ok(term) = balayage_inversion(sigma, alpha, grid) {
        if check(&term) < BALAYAGE_CHECK_TOL {
            return Ok((term, Construction::Inversion));
        }
        log::debug!("inversion balayage at {alpha} failed its check; using direct solve");
    }
    let term = balayage_direct(sigma, alpha, grid)?;
    Ok((term, Construction::Direct))
}

fn sign_fix(sigma: &Support, f: impl Fn(usize, f64) -> f64) -> Vec<f64> {
    sigma
        .intervals()
        .enumerate()
        .map(|(i, (a, b))| if f(i, 0.5 * (a + b)) < 0.0 { -1.0 } else { 1.0 })
        .collect()
}

/// Balayage via the equilibrium measure of the image of the support under
/// `w = 1 / (x - alpha)`.
pub fn balayage_inversion(sigma: &Support, alpha: f64, grid: &Arc<Grid>) -> Result<RootTerm> {
    let mut w: Vec<f64> = sigma.endpoints().iter().map(|a| 1.0 / (a - alpha)).collect();
    w.sort_by(|x, y| x.total_cmp(y));
    let image = Support::from_raw(w)?;
    let image_eq = equilibrium_numerator(&image, grid)?;
    let sqrt_h_alpha = sigma.h(alpha).abs().sqrt();
    let mut term = RootTerm {
        alpha,
        weight: 1.0,
        kernel: RootKernel::Inversion {
            image_eq,
            sqrt_h_alpha,
        },
        sigma: vec![1.0; sigma.num_intervals()],
    };
    let k = sigma.num_intervals();
    term.sigma = sign_fix(sigma, |i, x| term.numerator(i, x, k));
    Ok(term)
}

/// Balayage via `G(z) = 1/(z - alpha) - T(z) / ((z - alpha) sqrt(H(z)))`
/// with `T(alpha) = sqrt(H(alpha))` and vanishing principal-value gap
/// integrals.
pub fn balayage_direct(sigma: &Support, alpha: f64, grid: &Arc<Grid>) -> Result<RootTerm> {
    let k = sigma.num_intervals();
    let (m, r) = sigma.hull_scale();
    let mut a = DMatrix::zeros(k, k);
    let mut b = DVector::zeros(k);
    // regularity at alpha
    let ua = (alpha - m) / r;
    for j in 0..k {
        let mut e = vec![0.0; j + 1];
        e[j] = 1.0;
        a[(0, j)] = clenshaw(&e, ua);
    }
    b[0] = sigma.sqrt_h_outside(alpha);
    // gap conditions: PV int_gap T(x) / ((x - alpha) sqrt|H|) = 0
    for g in 0..sigma.num_gaps() {
        let (g1, g2) = sigma.gap(g);
        let nodes = grid.nodes(g1, g2);
        for j in 0..k {
            let mut e = vec![0.0; j + 1];
            e[j] = 1.0;
            let values: Vec<f64> = nodes
                .iter()
                .map(|&x| clenshaw(&e, (x - m) / r) / sigma.h_rest_gap(g, x).abs().sqrt())
                .collect();
            let coeffs = grid.cheb_coeffs(&values);
            let blk = Block {
                a: g1,
                b: g2,
                values,
                coeffs,
            };
            a[(g + 1, j)] = blk.cauchy(alpha);
        }
    }
    let (t, _) = solve_dense(a, b, "balayage collocation")?;
    let t = ScaledPoly {
        m,
        r,
        cheb: t.iter().cloned().collect(),
    };
    let sigma_signs: Vec<f64> = (0..k).map(|i| -sigma.branch_sign(i)).collect();
    Ok(RootTerm {
        alpha,
        weight: 1.0,
        kernel: RootKernel::Direct { t },
        sigma: sigma_signs,
    })
}

/// `mu_Q = (1/deg Q) sum_{Q(alpha)=0} omega_alpha`, whose potential is
/// `log|Q(x)| / deg Q + C_Q` on the support.
pub fn log_potential_measure(
    sigma: &Support,
    q: &IntPoly,
    roots: &[f64],
    grid: &Arc<Grid>,
) -> Result<MeasureDensity> {
    let d = q.degree() as f64;
    let mut terms = Vec::with_capacity(roots.len());
    for &alpha in roots {
        if sigma.contains(alpha) {
            return Err(Error::RootInsideSupport {
                poly: q.to_string(),
                root: alpha,
            });
        }
        let (mut term, how) = balayage(sigma, alpha, grid)?;
        log::debug!("balayage of {alpha} for {q}: {how:?}");
        term.weight = 1.0 / d;
        terms.push(term);
    }
    Ok(MeasureDensity::build(
        sigma,
        DensityForm::RootSum { terms },
        grid,
    ))
}

/// One row of a density export.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub interval: usize,
    pub x: f64,
    pub density_mu: f64,
    pub density_nu: f64,
    pub potential_mu: f64,
    pub potential_nu: f64,
}

/// Samples densities and potentials of `mu` and `nu` at `per_interval`
/// interior points of every interval (excluding endpoints).
pub fn sample_density(mu: &MeasureDensity, nu: &MeasureDensity, per_interval: usize) -> Vec<SampleRow> {
    let sigma = mu.support();
    let mut rows = Vec::new();
    for (i, (a, b)) in sigma.intervals().enumerate() {
        for k in 0..per_interval {
            let x = a + (b - a) * (k as f64 + 0.5) / per_interval as f64;
            rows.push(SampleRow {
                interval: i,
                x,
                density_mu: mu.density(x),
                density_nu: nu.density(x),
                potential_mu: mu.potential(x),
                potential_nu: nu.potential(x),
            });
        }
    }
    rows
}

/// Renders sample rows as CSV text.
pub fn rows_to_csv(rows: &[SampleRow]) -> String {
    let mut s = String::from("interval,x,density_mu,density_nu,potential_mu,potential_nu\n");
    for r in rows {
        s.push_str(&format!(
            "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
            r.interval, r.x, r.density_mu, r.density_nu, r.potential_mu, r.potential_nu
        ));
    }
    s
}
