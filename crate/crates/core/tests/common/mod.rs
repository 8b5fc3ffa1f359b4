//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use trace_lp::polyarith::IntPoly;

/// Determinant of the Sylvester matrix of `p` and `q` (rows of `p` first,
/// coefficients in descending order) by fraction-free Bareiss elimination.
pub fn sylvester_resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let (m, n) = (p.degree(), q.degree());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let desc = |f: &IntPoly| -> Vec<BigInt> { f.coeffs().iter().rev().cloned().collect() };
    let (pc, qc) = (desc(p), desc(q));
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().enumerate() {
            a[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(a)
}

pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `c * prod (x - r_i)` with integer roots.
pub fn from_integer_roots(c: i64, roots: &[i64]) -> IntPoly {
    roots
        .iter()
        .fold(IntPoly::from_i64(&[c]), |acc, &r| acc.mul(&IntPoly::from_i64(&[-r, 1])))
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

/// Brute-force logarithmic potential
/// `int_a^b log|s - y| n(y) / (pi sqrt((y - a)(b - y))) dy`.
///
/// The substitution `y = m + r cos(theta)` removes the endpoint singularities.
/// For `s` inside `[a, b]` the log singularity at `theta_s` is excised: each
/// side is mapped by `theta = theta_s +- L t^3`, which makes the integrand
/// vanish at the singular end, and integrated by the trapezoid rule with
/// `n` panels.
pub fn brute_log_potential(n_fn: impl Fn(f64) -> f64, a: f64, b: f64, s: f64, n: usize) -> f64 {
    let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
    let f = |theta: f64| {
        let y = m + r * theta.cos();
        (s - y).abs().ln() * n_fn(y)
    };
    let trapezoid = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        let h = (hi - lo) / n as f64;
        let mut acc = 0.5 * (g(lo) + g(hi));
        for k in 1..n {
            acc += g(lo + k as f64 * h);
        }
        acc * h
    };
    let total = if s <= a || s >= b {
        trapezoid(&f, 0.0, std::f64::consts::PI)
    } else {
        let ts = ((s - m) / r).clamp(-1.0, 1.0).acos();
        let left = ts;
        let right = std::f64::consts::PI - ts;
        // theta = ts - left t^3 on [0, 1]; the t = 0 node is the excised point.
        let gl = |t: f64| if t == 0.0 { 0.0 } else { f(ts - left * t.powi(3)) * 3.0 * left * t * t };
        let gr = |t: f64| if t == 0.0 { 0.0 } else { f(ts + right * t.powi(3)) * 3.0 * right * t * t };
        trapezoid(&gl, 0.0, 1.0) + trapezoid(&gr, 0.0, 1.0)
    };
    total / std::f64::consts::PI
}
