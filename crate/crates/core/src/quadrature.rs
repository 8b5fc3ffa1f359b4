//! Gauss–Chebyshev quadrature on interval unions and the three singular
//! kernels built on it: weighted integrals, logarithmic potentials and
//! Cauchy (principal value) transforms.
//!
//! Every measure handled here has, on each interval `[a, b]` with midpoint
//! `m` and half-width `r`, a density of the form `g(t) / (r sqrt(1 - t^2))`
//! where `x = m + r t` and `g` is smooth on `[-1, 1]`. We keep `g` both as
//! values at the Chebyshev nodes and as a Chebyshev series; the log and
//! Cauchy kernels then have closed-form moments against each `T_n`, which
//! gives spectrally accurate potentials uniformly in the evaluation point.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::support::Support;

/// Default number of nodes per interval.
pub const DEFAULT_NODES: usize = 512;

/// Chebyshev nodes `t_k = cos((2k - 1) pi / 2N)` and a cosine table for the
/// discrete cosine transform.
#[derive(Debug)]
pub struct Grid {
    n: usize,
    t: Vec<f64>,
    cos_table: Vec<f64>,
}

impl Grid {
    pub fn new(n: usize) -> Arc<Grid> {
        assert!(n >= 2, "need at least two nodes");
        let theta: Vec<f64> = (0..n)
            .map(|k| (2 * k + 1) as f64 * PI / (2 * n) as f64)
            .collect();
        let t = theta.iter().map(|th| th.cos()).collect();
        let mut cos_table = Vec::with_capacity(n * n);
        for j in 0..n {
            for th in &theta {
                cos_table.push((j as f64 * th).cos());
            }
        }
        Arc::new(Grid { n, t, cos_table })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Reference nodes in `(-1, 1)`, in descending order.
    pub fn reference_nodes(&self) -> &[f64] {
        &self.t
    }

    /// Nodes mapped onto `[a, b]`.
    pub fn nodes(&self, a: f64, b: f64) -> Vec<f64> {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        self.t.iter().map(|t| m + r * t).collect()
    }

    /// `int_a^b f(x) / sqrt((x - a)(b - x)) dx` by Gauss–Chebyshev.
    pub fn integrate_weighted(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        let s: f64 = self.t.iter().map(|t| f(m + r * t)).sum();
        s * PI / self.n as f64
    }

    /// Chebyshev coefficients of the interpolant through node values, with
    /// negligible trailing coefficients dropped.
    pub fn cheb_coeffs(&self, values: &[f64]) -> Vec<f64> {
        let n = self.n;
        debug_assert_eq!(values.len(), n);
        let mut c: Vec<f64> = (0..n)
            .map(|j| {
                let row = &self.cos_table[j * n..(j + 1) * n];
                let s: f64 = row.iter().zip(values).map(|(c, v)| c * v).sum();
                s * 2.0 / n as f64
            })
            .collect();
        c[0] *= 0.5;
        let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        // Rounding in the transform leaves a noise plateau; estimate it from
        // the last eighth of the spectrum and drop everything below it.
        let tail = c[n - n / 8..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let cutoff = (scale * 64.0 * f64::EPSILON).max(2.0 * tail);
        let keep = c.iter().rposition(|x| x.abs() > cutoff).map_or(1, |i| i + 1);
        c.truncate(keep);
        c
    }
}

/// `int_Sigma f(x) dx` for integrands with inverse square-root endpoint
/// behaviour; the endpoint factor is absorbed by the Chebyshev weight.
pub fn integrate_density(f: impl Fn(f64) -> f64, sigma: &Support, n: usize) -> Result<f64> {
    let grid = Grid::new(n);
    let mut total = 0.0;
    for (a, b) in sigma.intervals() {
        let mut part = 0.0;
        for x in grid.nodes(a, b) {
            let v = f(x) * ((x - a) * (b - x)).sqrt();
            if !v.is_finite() {
                return Err(Error::NonFinite(x));
            }
            part += v;
        }
        total += part * PI / n as f64;
    }
    Ok(total)
}

/// One interval's share of a measure: `dmu = g(t) dt / sqrt(1 - t^2)`.
#[derive(Clone, Debug)]
pub struct Block {
    pub a: f64,
    pub b: f64,
    /// `g` at the grid nodes.
    pub values: Vec<f64>,
    /// Chebyshev coefficients of `g`.
    pub coeffs: Vec<f64>,
}

impl Block {
    pub fn mid(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    fn z(&self, s: f64) -> f64 {
        (s - self.mid()) / self.half()
    }

    /// `g` evaluated through its Chebyshev series (Clenshaw).
    pub fn g_at(&self, t: f64) -> f64 {
        clenshaw(&self.coeffs, t)
    }

    pub fn mass(&self) -> f64 {
        PI * self.coeffs[0]
    }

    /// Logarithmic potential of this block at `s`.
    pub fn potential(&self, s: f64) -> f64 {
        let z = self.z(s);
        let c = &self.coeffs;
        let r = self.half();
        let mut acc = c[0] * r.ln();
        if z.abs() <= 1.0 {
            acc -= c[0] * std::f64::consts::LN_2;
            let (mut tm1, mut t) = (1.0, z);
            for (n, cn) in c.iter().enumerate().skip(1) {
                acc -= cn * t / n as f64;
                let next = 2.0 * z * t - tm1;
                tm1 = t;
                t = next;
            }
        } else {
            let w = z + z.signum() * (z * z - 1.0).sqrt();
            acc += c[0] * (w.abs() * 0.5).ln();
            let winv = 1.0 / w;
            let mut p = winv;
            for (n, cn) in c.iter().enumerate().skip(1) {
                acc -= cn * p / n as f64;
                p *= winv;
            }
        }
        PI * acc
    }

    /// `int dmu(y) / (s - y)`, as a principal value when `s` is inside.
    pub fn cauchy(&self, s: f64) -> f64 {
        let z = self.z(s);
        let c = &self.coeffs;
        let r = self.half();
        if z.abs() < 1.0 {
            // PV int T_n / ((z - t) sqrt(1-t^2)) = -pi U_{n-1}(z)
            let (mut um1, mut u) = (0.0, 1.0);
            let mut acc = 0.0;
            for cn in c.iter().skip(1) {
                acc += cn * u;
                let next = 2.0 * z * u - um1;
                um1 = u;
                u = next;
            }
            -PI * acc / r
        } else if z.abs() == 1.0 {
            f64::INFINITY.copysign(z)
        } else {
            let sq = z.signum() * (z * z - 1.0).sqrt();
            let w = z + sq;
            let winv = 1.0 / w;
            let mut p = 1.0;
            let mut acc = 0.0;
            for cn in c {
                acc += cn * p;
                p *= winv;
            }
            PI * acc / (sq * r)
        }
    }

    /// `int dmu(y) / (s - y)^2` for `s` outside the interval.
    pub fn cauchy_sq(&self, s: f64) -> f64 {
        let z = self.z(s);
        assert!(z.abs() > 1.0, "cauchy_sq needs a point off the interval");
        let c = &self.coeffs;
        let r = self.half();
        let sq = z.signum() * (z * z - 1.0).sqrt();
        let w = z + sq;
        let winv = 1.0 / w;
        let mut p = 1.0;
        let mut acc = 0.0;
        for (n, cn) in c.iter().enumerate() {
            acc += cn * p * (n as f64 * sq + z);
            p *= winv;
        }
        PI * acc / (sq * sq * sq * r * r)
    }
}

/// Clenshaw summation of a Chebyshev series.
pub fn clenshaw(c: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c.first().copied().unwrap_or(0.0)
}

/// A measure discretised on a support: one [`Block`] per interval.
#[derive(Clone, Debug)]
pub struct Discretized {
    pub grid: Arc<Grid>,
    pub blocks: Vec<Block>,
}

impl Discretized {
    /// Builds the blocks from a numerator `n(i, x)`; the density on
    /// interval `i` is `n(i, x) / (pi sqrt|H(x)|)`.
    pub fn from_numerator(
        grid: &Arc<Grid>,
        sigma: &Support,
        numer: impl Fn(usize, f64) -> f64,
    ) -> Discretized {
        let blocks = sigma
            .intervals()
            .enumerate()
            .map(|(i, (a, b))| {
                let values: Vec<f64> = grid
                    .nodes(a, b)
                    .into_iter()
                    .map(|x| numer(i, x) / (PI * sigma.h_rest(i, x).abs().sqrt()))
                    .collect();
                let coeffs = grid.cheb_coeffs(&values);
                Block { a, b, values, coeffs }
            })
            .collect();
        Discretized {
            grid: grid.clone(),
            blocks,
        }
    }

    /// `sum_k w_k * d_k` combined block by block (coefficient-wise, so the
    /// result is exactly linear).
    pub fn combine(parts: &[(f64, &Discretized)]) -> Discretized {
        let first = parts[0].1;
        let blocks = (0..first.blocks.len())
            .map(|i| {
                let n = first.blocks[i].values.len();
                let mut values = vec![0.0; n];
                let len = parts
                    .iter()
                    .map(|(_, d)| d.blocks[i].coeffs.len())
                    .max()
                    .unwrap_or(1);
                let mut coeffs = vec![0.0; len];
                for (w, d) in parts {
                    let blk = &d.blocks[i];
                    for (v, x) in values.iter_mut().zip(&blk.values) {
                        *v += w * x;
                    }
                    for (c, x) in coeffs.iter_mut().zip(&blk.coeffs) {
                        *c += w * x;
                    }
                }
                Block {
                    a: first.blocks[i].a,
                    b: first.blocks[i].b,
                    values,
                    coeffs,
                }
            })
            .collect();
        Discretized {
            grid: first.grid.clone(),
            blocks,
        }
    }

    pub fn mass(&self) -> f64 {
        // Sum of node values equals N * c_0 exactly for the DCT.
        self.integrate(|_| 1.0)
    }

    /// `int f dmu` by Gauss–Chebyshev.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let n = self.grid.len() as f64;
        let t = self.grid.reference_nodes();
        self.blocks
            .iter()
            .map(|blk| {
                let (m, r) = (blk.mid(), blk.half());
                let s: f64 = t
                    .iter()
                    .zip(&blk.values)
                    .map(|(tk, g)| f(m + r * tk) * g)
                    .sum();
                s * PI / n
            })
            .sum()
    }

    /// `int f dmu` with `f` given at the nodes, in block/node order.
    pub fn integrate_nodal(&self, f: &[f64]) -> f64 {
        let n = self.grid.len();
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, blk)| {
                let s: f64 = f[i * n..(i + 1) * n]
                    .iter()
                    .zip(&blk.values)
                    .map(|(a, b)| a * b)
                    .sum();
                s * PI / n as f64
            })
            .sum()
    }

    /// All nodes in block order.
    pub fn nodes(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .flat_map(|b| self.grid.nodes(b.a, b.b))
            .collect()
    }

    /// Logarithmic potential `U(s) = int log|s - y| dmu(y)`.
    pub fn potential(&self, s: f64) -> f64 {
        self.blocks.iter().map(|b| b.potential(s)).sum()
    }

    /// Potentials at many points (parallel, order-preserving).
    pub fn potentials(&self, pts: &[f64]) -> Vec<f64> {
        pts.par_iter().map(|&s| self.potential(s)).collect()
    }

    /// `int dmu(y) / (s - y)`; principal value on the support.
    pub fn cauchy(&self, s: f64) -> f64 {
        self.blocks.iter().map(|b| b.cauchy(s)).sum()
    }

    /// `int dmu(y) / (s - y)^2` for `s` off the support.
    pub fn cauchy_sq(&self, s: f64) -> f64 {
        self.blocks.iter().map(|b| b.cauchy_sq(s)).sum()
    }

    /// Density at `x` (0 off the support).
    pub fn density(&self, x: f64) -> f64 {
        for blk in &self.blocks {
            if blk.a < x && x < blk.b {
                let t = (x - blk.mid()) / blk.half();
                return blk.g_at(t) / (blk.half() * (1.0 - t * t).sqrt());
            }
        }
        0.0
    }

    /// Principal value `PV int dmu(y) / (x - y)` by singularity subtraction:
    /// on the interval holding `x` the integrand `(g(t) - g(z)) / (z - t)`
    /// is regular and `PV int dt / ((z - t) sqrt(1 - t^2)) = 0`.
    pub fn pv_subtracted(&self, x: f64) -> Result<f64> {
        let n = self.grid.len() as f64;
        let t = self.grid.reference_nodes();
        let mut total = 0.0;
        for blk in &self.blocks {
            let (m, r) = (blk.mid(), blk.half());
            let z = (x - m) / r;
            if z.abs() < 1.0 {
                if t.iter().any(|tk| ((m + r * tk) - x).abs() < 1e-9) {
                    return Err(Error::TooCloseToNode(x));
                }
                let gz = blk.g_at(z);
                let s: f64 = t
                    .iter()
                    .zip(&blk.values)
                    .map(|(tk, g)| (g - gz) / (z - tk))
                    .sum();
                total += s * PI / (n * r);
            } else {
                total += blk.cauchy(x);
            }
        }
        Ok(total)
    }
}
