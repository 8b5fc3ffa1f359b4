//! Exact arithmetic on integer polynomials.
//!
//! Resultants and discriminants are computed with the subresultant PRS over
//! arbitrary-precision integers. Real roots are isolated with Sturm sequences
//! evaluated exactly at dyadic rationals and then polished in `f64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Value and first derivative at `x`.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c.to_f64().unwrap_or(f64::NAN);
        }
        (p, dp)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn div_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_exact(&c)
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let mut r = self.clone();
        if r.degree() < b.degree() || r.is_zero() {
            return r;
        }
        let db = b.degree();
        let lb = b.leading();
        let mut e = r.degree() - db + 1;
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.leading();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lb).collect();
            for (j, bc) in b.coeffs.iter().enumerate() {
                next[j + shift] -= &lr * bc;
            }
            r = IntPoly::new(next);
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&num_traits::pow(lb, e));
        }
        r
    }

    /// Coefficient-wise average-trace `-a_{n-1} / (n a_n)`: the mean of the
    /// roots.
    pub fn avg_trace(&self) -> f64 {
        let n = self.degree();
        assert!(n >= 1, "avg_trace needs degree >= 1");
        let an1 = self.coeff(n - 1).to_f64().unwrap_or(f64::NAN);
        let an = self.leading().to_f64().unwrap_or(f64::NAN);
        -an1 / (n as f64 * an)
    }

    /// Exact sign of `p(num / 2^k)`.
    fn sign_at_dyadic(&self, x: &Dyadic) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        // sum a_i num^i 2^{k (n-i)}
        let n = self.degree();
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let scale = BigInt::one() << (x.k as usize * (n - i));
                acc += c * &num_pow * scale;
            }
            num_pow *= &x.num;
        }
        acc.sign_ordering()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(items: &[String]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidPoly(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = !(mag.is_one() && i > 0);
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        IntPoly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// Resultant `Res(p, q) = lc(p)^deg q * prod_{p(a)=0} q(a)` via the
/// subresultant PRS. Returns 0 when either input is zero.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = -sign;
        }
    }
    if b.degree() == 0 {
        return sign * num_traits::pow(b.leading(), a.degree());
    }
    let ca = a.content();
    let cb = b.content();
    let t = num_traits::pow(ca.clone(), b.degree()) * num_traits::pow(cb.clone(), a.degree());
    a = a.div_exact(&ca);
    b = b.div_exact(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = -sign;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact(&divisor);
        g = a.leading();
        // h <- h^(1-delta) g^delta
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
        if b.degree() == 0 {
            let da = a.degree();
            let hb = num_traits::pow(b.leading(), da);
            let h_final = if da == 0 {
                hb * h
            } else {
                hb / num_traits::pow(h, da - 1)
            };
            return sign * t * h_final;
        }
    }
}

/// `Disc(q) = (-1)^(n(n-1)/2) Res(q, q') / lc(q)`.
pub fn discriminant(q: &IntPoly) -> BigInt {
    let n = q.degree();
    assert!(n >= 1, "discriminant needs degree >= 1");
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(q, &q.derivative()) / q.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Polynomial gcd over Q, returned primitive with positive leading coefficient.
pub fn gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b).primitive_part();
        a = b;
        b = r;
    }
    if a.leading().is_negative() {
        a.neg()
    } else {
        a
    }
}

pub fn is_squarefree(p: &IntPoly) -> bool {
    p.degree() == 0 || gcd(p, &p.derivative()).degree() == 0
}

/// Dyadic rational `num / 2^k`.
#[derive(Clone, Debug)]
struct Dyadic {
    num: BigInt,
    k: u32,
}

impl Dyadic {
    fn from_int(n: BigInt) -> Self {
        Dyadic { num: n, k: 0 }
    }

    fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let k = self.k.max(other.k);
        let a = &self.num << (k - self.k) as usize;
        let b = &other.num << (k - other.k) as usize;
        Dyadic { num: a + b, k: k + 1 }
    }

    fn to_f64(&self) -> f64 {
        // exact enough for isolating intervals: scale down by powers of two
        let mut k = self.k as i32;
        let mut num = self.num.clone();
        while num.bits() > 1000 {
            num >>= 64usize;
            k -= 64;
        }
        num.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-k)
    }
}

/// Sturm chain of a squarefree polynomial, each member scaled by a positive
/// constant.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.degree() == 0 {
            break;
        }
        let r = a.prem(b);
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^e * rem; the chain needs -rem up to a positive factor
        let e = a.degree() - b.degree() + 1;
        let mult_negative = b.leading().is_negative() && e % 2 == 1;
        let next = if mult_negative { r } else { r.neg() };
        let c = next.content();
        chain.push(next.div_exact(&c));
    }
    chain
}

fn sign_variations(chain: &[IntPoly], x: &Dyadic) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for q in chain {
        let s = q.sign_at_dyadic(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Integer bound strictly above every |root| (Cauchy bound).
fn root_bound(p: &IntPoly) -> BigInt {
    let lc = p.leading().abs();
    let max = p.coeffs[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // 1 + ceil(max / lc) + 1
    let (q, r) = max.div_rem(&lc);
    let ceil = if r.is_zero() { q } else { q + 1 };
    ceil + BigInt::from(2)
}

/// Number of distinct real roots, by Sturm's theorem.
pub fn count_real_roots(p: &IntPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let sq = if is_squarefree(p) {
        p.clone()
    } else {
        // count distinct roots of the squarefree part
        let g = gcd(p, &p.derivative());
        exact_div(p, &g)
    };
    let chain = sturm_chain(&sq);
    let b = root_bound(&sq);
    sign_variations(&chain, &Dyadic::from_int(-b.clone())) - sign_variations(&chain, &Dyadic::from_int(b))
}

/// Exact division over Q, scaled back to an integer polynomial.
fn exact_div(p: &IntPoly, d: &IntPoly) -> IntPoly {
    // Long division with fractions avoided by pseudo-division on the quotient.
    let n = p.degree();
    let m = d.degree();
    let lc = d.leading();
    let mut rem: Vec<BigInt> = p.coeffs.clone();
    let mut quot = vec![BigInt::zero(); n - m + 1];
    let mut scale = BigInt::one();
    for i in (0..=n - m).rev() {
        // make rem[i+m] divisible by lc
        let top = rem[i + m].clone();
        if !(&top % &lc).is_zero() {
            let g = top.gcd(&lc);
            let f = &lc / g;
            for c in rem.iter_mut() {
                *c *= &f;
            }
            for c in quot.iter_mut() {
                *c *= &f;
            }
            scale *= &f;
        }
        let q = &rem[i + m] / &lc;
        for (j, dc) in d.coeffs.iter().enumerate() {
            rem[i + j] -= &q * dc;
        }
        quot[i] = q;
    }
    IntPoly::new(quot).primitive_part()
}

/// All real roots of a squarefree polynomial, sorted ascending, each within
/// `tol` of a true root.
pub fn real_roots(q: &IntPoly, tol: f64) -> Result<Vec<f64>> {
    if q.is_zero() {
        return Err(Error::InvalidPoly("zero polynomial".into()));
    }
    if q.degree() == 0 {
        return Ok(Vec::new());
    }
    if !is_squarefree(q) {
        return Err(Error::NonSquarefree);
    }
    let chain = sturm_chain(q);
    let b = root_bound(q);
    let lo = Dyadic::from_int(-b.clone());
    let hi = Dyadic::from_int(b);
    let mut isolated = Vec::new();
    let v_lo = sign_variations(&chain, &lo);
    let v_hi = sign_variations(&chain, &hi);
    isolate(&chain, lo, hi, v_lo, v_hi, &mut isolated);

    let mut roots = Vec::with_capacity(isolated.len());
    for (lo, hi) in isolated {
        roots.push(refine_root(q, &chain, lo, hi, tol));
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(roots)
}

/// Recursive bisection of (lo, hi] until each piece holds exactly one root.
fn isolate(
    chain: &[IntPoly],
    lo: Dyadic,
    hi: Dyadic,
    v_lo: usize,
    v_hi: usize,
    out: &mut Vec<(Dyadic, Dyadic)>,
) {
    let count = v_lo - v_hi;
    match count {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = lo.midpoint(&hi);
            let v_mid = sign_variations(chain, &mid);
            isolate(chain, lo, mid.clone(), v_lo, v_mid, out);
            isolate(chain, mid, hi, v_mid, v_hi, out);
        }
    }
}

/// Shrinks an isolating interval (lo, hi] exactly until it is narrow and
/// both ends have nonzero sign, then polishes with safeguarded Newton.
fn refine_root(q: &IntPoly, chain: &[IntPoly], mut lo: Dyadic, mut hi: Dyadic, tol: f64) -> f64 {
    let target = tol.clamp(1e-300, 1e-6);
    loop {
        if q.sign_at_dyadic(&hi) == Ordering::Equal {
            return hi.to_f64();
        }
        let narrow = hi.to_f64() - lo.to_f64() <= target;
        if narrow && q.sign_at_dyadic(&lo) != Ordering::Equal {
            break;
        }
        let mid = lo.midpoint(&hi);
        let v_mid = sign_variations(chain, &mid);
        let v_hi = sign_variations(chain, &hi);
        if v_mid - v_hi == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (mut a, mut b) = (lo.to_f64(), hi.to_f64());
    let fa_neg = q.sign_at_dyadic(&lo) == Ordering::Less;
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (f, df) = q.eval_with_derivative(x);
        if f == 0.0 {
            return x;
        }
        if (f < 0.0) == fa_neg {
            a = x;
        } else {
            b = x;
        }
        let newton = x - f / df;
        let next = if df != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let step = (next - x).abs();
        x = next;
        if step <= 1e-16 * x.abs().max(1.0) || b - a <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// A finite set of distinct, squarefree, totally real integer polynomials.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolySet {
    polys: Vec<IntPoly>,
}

impl PolySet {
    pub fn empty() -> Self {
        PolySet { polys: Vec::new() }
    }

    /// Admits `polys` after checking degree, squarefreeness, real-rootedness
    /// and pairwise non-proportionality.
    pub fn new(polys: Vec<IntPoly>) -> Result<Self> {
        for p in &polys {
            if p.degree() == 0 {
                return Err(Error::InvalidPoly(format!("{p} has degree 0")));
            }
            if !is_squarefree(p) {
                return Err(Error::NonSquarefree);
            }
            if count_real_roots(p) != p.degree() {
                return Err(Error::NotTotallyReal(p.to_string()));
            }
        }
        for (i, p) in polys.iter().enumerate() {
            for q in &polys[..i] {
                if p.degree() == q.degree() && p.scale(&q.leading()) == q.scale(&p.leading()) {
                    return Err(Error::DuplicatePoly(p.to_string()));
                }
            }
        }
        Ok(PolySet { polys })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntPoly> {
        self.polys.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.polys.iter().map(IntPoly::degree).sum()
    }

    /// Product of all members.
    pub fn product(&self) -> IntPoly {
        self.polys
            .iter()
            .fold(IntPoly::from_i64(&[1]), |acc, p| acc.mul(p))
    }

    pub fn contains(&self, p: &IntPoly) -> bool {
        self.polys.iter().any(|q| q == p)
    }

    /// Real roots of every member, indexed by member.
    pub fn roots(&self, tol: f64) -> Result<Vec<Vec<f64>>> {
        self.polys.iter().map(|p| real_roots(p, tol)).collect()
    }
}

impl Serialize for PolySet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.polys.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolySet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let polys = Vec::<IntPoly>::deserialize(d)?;
        PolySet::new(polys).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, -3, 1]).eval(0.0), 1.0);
        assert_eq!(p(&[-1, 6, -5, 1]).eval(1.0), 1.0);
        assert_eq!(p(&[-1, 1]).eval(1.0), 0.0);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[0, 1]), &p(&[-1, 1])), BigInt::from(-1));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[1, -3, 1])), BigInt::from(1));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, -3, 1])), BigInt::from(5));
        assert_eq!(discriminant(&p(&[-1, 6, -5, 1])), BigInt::from(49));
        assert_eq!(discriminant(&p(&[-1, 1])), BigInt::from(1));
        // non-monic: Disc(2x^2+3x-1) = 9 + 8 = 17
        assert_eq!(discriminant(&p(&[-1, 3, 2])), BigInt::from(17));
    }

    #[test]
    fn roots_of_golden_quadratic() {
        let r = real_roots(&p(&[1, -3, 1]), 1e-13).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(r.len(), 2);
        assert!((r[0] - (3.0 - s5) / 2.0).abs() < 1e-12);
        assert!((r[1] - (3.0 + s5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn root_of_x_is_zero() {
        assert_eq!(real_roots(&p(&[0, 1]), 1e-13).unwrap(), vec![0.0]);
    }

    #[test]
    fn cubic_roots_bracketed() {
        let r = real_roots(&p(&[-1, 6, -5, 1]), 1e-13).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[0] > 0.0 && r[0] < 1.0);
        assert!(r[1] > 1.0 && r[1] < 2.0);
        assert!(r[2] > 3.0 && r[2] < 4.0);
        for x in r {
            assert!(p(&[-1, 6, -5, 1]).eval(x).abs() < 1e-12);
        }
    }

    #[test]
    fn non_squarefree_rejected() {
        assert!(matches!(
            real_roots(&p(&[1, -2, 1]), 1e-13),
            Err(Error::NonSquarefree)
        ));
    }

    #[test]
    fn avg_trace_examples() {
        assert_eq!(p(&[1, -3, 1]).avg_trace(), 1.5);
        assert_eq!(p(&[0, 1]).avg_trace(), 0.0);
        assert!((p(&[-1, 6, -5, 1]).avg_trace() - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn polyset_admission() {
        assert!(PolySet::new(vec![p(&[0, 1]), p(&[-1, 1])]).is_ok());
        assert!(matches!(
            PolySet::new(vec![p(&[1, 0, 1])]),
            Err(Error::NotTotallyReal(_))
        ));
        assert!(matches!(
            PolySet::new(vec![p(&[-1, 1]), p(&[2, -2])]),
            Err(Error::DuplicatePoly(_))
        ));
    }

    #[test]
    fn display_and_json() {
        let q = p(&[-1, 6, -5, 1]);
        assert_eq!(q.to_string(), "x^3-5x^2+6x-1");
        let js = serde_json::to_string(&p(&[1, -3, 1])).unwrap();
        assert_eq!(js, r#"["1","-3","1"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p(&[1, -3, 1]));
    }

    #[test]
    fn root_count_of_wilkinson_like() {
        // (x-1)(x-2)(x-3)(x-4)(x-5)
        let mut w = p(&[1]);
        for r in 1..=5 {
            w = w.mul(&p(&[-r, 1]));
        }
        assert_eq!(count_real_roots(&w), 5);
        let roots = real_roots(&w, 1e-13).unwrap();
        for (i, r) in roots.iter().enumerate() {
            assert!((r - (i + 1) as f64).abs() < 1e-13);
        }
    }
}
