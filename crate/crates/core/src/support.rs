//! Candidate supports: finite unions of disjoint closed intervals and the
//! endpoint polynomial `H(x) = prod (x - a_j)`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyarith::PolySet;

/// Upper limit for admissible supports; every optimal support lies in [0, 18].
pub const SUPPORT_MAX: f64 = 18.0;

/// Union of `K` disjoint closed intervals `[a_{2i}, a_{2i+1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Support {
    endpoints: Vec<f64>,
}

impl Support {
    /// Validated support inside `[0, 18]`.
    pub fn new(endpoints: Vec<f64>) -> Result<Self> {
        let s = Self::from_raw(endpoints)?;
        let (lo, hi) = (s.endpoints[0], *s.endpoints.last().unwrap());
        if lo < 0.0 || hi > SUPPORT_MAX {
            return Err(Error::InvalidSupport(format!(
                "endpoints must lie in [0, {SUPPORT_MAX}], got [{lo}, {hi}]"
            )));
        }
        Ok(s)
    }

    /// Geometry-only constructor: any strictly increasing list of even
    /// length. Used for auxiliary supports (e.g. images under inversion).
    pub fn from_raw(endpoints: Vec<f64>) -> Result<Self> {
        if endpoints.len() < 2 || endpoints.len() % 2 != 0 {
            return Err(Error::InvalidSupport(format!(
                "need an even number (>= 2) of endpoints, got {}",
                endpoints.len()
            )));
        }
        if let Some(bad) = endpoints.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(*bad));
        }
        for w in endpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::OverlappingIntervals(w[0]));
            }
        }
        Ok(Support { endpoints })
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    /// Number of intervals `K = l + 1`.
    pub fn num_intervals(&self) -> usize {
        self.endpoints.len() / 2
    }

    /// Number of bounded gaps `l`.
    pub fn num_gaps(&self) -> usize {
        self.num_intervals() - 1
    }

    pub fn interval(&self, i: usize) -> (f64, f64) {
        (self.endpoints[2 * i], self.endpoints[2 * i + 1])
    }

    pub fn gap(&self, j: usize) -> (f64, f64) {
        (self.endpoints[2 * j + 1], self.endpoints[2 * j + 2])
    }

    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.endpoints.chunks_exact(2).map(|c| (c[0], c[1]))
    }

    pub fn gaps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.num_gaps()).map(move |j| self.gap(j))
    }

    pub fn lower(&self) -> f64 {
        self.endpoints[0]
    }

    pub fn upper(&self) -> f64 {
        *self.endpoints.last().unwrap()
    }

    /// Midpoint and half-width of the convex hull; used to scale variables.
    pub fn hull_scale(&self) -> (f64, f64) {
        let (a, b) = (self.lower(), self.upper());
        (0.5 * (a + b), 0.5 * (b - a))
    }

    /// Index of the closed interval containing `x`, if any.
    pub fn interval_of(&self, x: f64) -> Option<usize> {
        self.intervals().position(|(a, b)| a <= x && x <= b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.interval_of(x).is_some()
    }

    /// `H(x)` together with its sign; at an endpoint the sign is +1 by
    /// convention.
    pub fn h_eval(&self, x: f64) -> (f64, f64) {
        let v: f64 = self.endpoints.iter().map(|a| x - a).product();
        let sign = if v < 0.0 { -1.0 } else { 1.0 };
        (v, sign)
    }

    pub fn h(&self, x: f64) -> f64 {
        self.h_eval(x).0
    }

    /// `prod (x - a_j)` over endpoints not belonging to interval `i`.
    pub fn h_rest(&self, i: usize, x: f64) -> f64 {
        self.endpoints
            .iter()
            .enumerate()
            .filter(|(j, _)| j / 2 != i)
            .map(|(_, a)| x - a)
            .product()
    }

    /// `prod (x - a_j)` over endpoints not bounding gap `j`.
    pub fn h_rest_gap(&self, j: usize, x: f64) -> f64 {
        self.endpoints
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != 2 * j + 1 && *k != 2 * j + 2)
            .map(|(_, a)| x - a)
            .product()
    }

    /// Sign `s_i` of the boundary branch: on interval `i`,
    /// `sqrt(H(x + i0)) = i * s_i * sqrt|H(x)|` with `s_{K-1} = +1`.
    pub fn branch_sign(&self, i: usize) -> f64 {
        if (self.num_intervals() - 1 - i) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Real value of the branch of `sqrt(H)` that behaves like `x^K` at
    /// `+infinity`, for `x` outside the support.
    pub fn sqrt_h_outside(&self, x: f64) -> f64 {
        let above = self.endpoints.iter().filter(|&&a| a > x).count();
        let mag = self.h(x).abs().sqrt();
        // each interval fully above x flips the sign
        if (above / 2) % 2 == 0 {
            mag
        } else {
            -mag
        }
    }

    /// Maps the support to the JSON representation with decimal strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.endpoints.iter().map(|x| format_real(*x)).collect()
    }

    /// Checks the support against a polynomial set and locates every root.
    pub fn validate(&self, set: &PolySet) -> Result<GapRootMap> {
        let roots = set.roots(1e-13)?;
        self.validate_with_roots(set, &roots)
    }

    /// As [`Support::validate`] with roots precomputed (one list per member).
    pub fn validate_with_roots(&self, set: &PolySet, roots: &[Vec<f64>]) -> Result<GapRootMap> {
        let mut map = GapRootMap {
            gaps: vec![Vec::new(); self.num_gaps()],
            below: Vec::new(),
            above: Vec::new(),
            one_root_per_gap: true,
        };
        for (qi, rs) in roots.iter().enumerate() {
            for &r in rs {
                if self.contains(r) {
                    return Err(Error::RootInsideSupport {
                        poly: set.polys()[qi].to_string(),
                        root: r,
                    });
                }
                if r < self.lower() {
                    map.below.push((qi, r));
                } else if r > self.upper() {
                    map.above.push((qi, r));
                } else {
                    let j = self
                        .gaps()
                        .position(|(a, b)| a < r && r < b)
                        .expect("root outside support must be in a gap");
                    map.gaps[j].push((qi, r));
                }
            }
        }
        for (j, g) in map.gaps.iter_mut().enumerate() {
            if g.is_empty() {
                let (a, b) = self.gap(j);
                return Err(Error::EmptyGap(a, b));
            }
            g.sort_by(|x, y| x.1.total_cmp(&y.1));
        }
        map.one_root_per_gap = map.gaps.iter().all(|g| g.len() == 1);
        Ok(map)
    }
}

/// Location of every root of the polynomial set relative to the support.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRootMap {
    /// Per gap: `(member index, root)` pairs, sorted by root.
    pub gaps: Vec<Vec<(usize, f64)>>,
    pub below: Vec<(usize, f64)>,
    pub above: Vec<(usize, f64)>,
    pub one_root_per_gap: bool,
}

/// Formats a real with 17 significant digits, enough to round-trip `f64`.
pub fn format_real(x: f64) -> String {
    let s = format!("{x:.16e}");
    // normalise to a plain decimal when the exponent is small
    match s.parse::<f64>() {
        Ok(v) if v == x && (1e-4..1e6).contains(&x.abs()) => {
            let plain = format!("{x}");
            if plain.parse::<f64>().ok() == Some(x) {
                plain
            } else {
                s
            }
        }
        _ => s,
    }
}

/// Parses a decimal string (or plain JSON number rendered as text).
pub fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Config(format!("bad real {s:?}: {e}")))
}

impl Serialize for Support {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            endpoints: Vec<String>,
        }
        Repr {
            endpoints: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            endpoints: Vec<RealRepr>,
        }
        let r = Repr::deserialize(d)?;
        let pts = r
            .endpoints
            .into_iter()
            .map(|x| x.value())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Support::new(pts).map_err(serde::de::Error::custom)
    }
}

/// Accepts either a decimal string or a JSON number.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RealRepr {
    Str(String),
    Num(f64),
}

impl RealRepr {
    pub(crate) fn value(&self) -> Result<f64> {
        match self {
            RealRepr::Str(s) => parse_real(s),
            RealRepr::Num(x) => Ok(*x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::IntPoly;

    fn set(polys: &[&[i64]]) -> PolySet {
        PolySet::new(polys.iter().map(|c| IntPoly::from_i64(c)).collect()).unwrap()
    }

    #[test]
    fn h_examples() {
        let s = Support::new(vec![0.0, 4.0]).unwrap();
        assert_eq!(s.h_eval(2.0), (-4.0, -1.0));
        assert_eq!(s.h_eval(0.0), (0.0, 1.0));
        let t = Support::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!((t.h(2.5) + 0.9375).abs() < 1e-15);
    }

    #[test]
    fn pair_support_validates() {
        let s = Support::new(vec![
            0.0706597128759717,
            0.7191192204214787,
            1.337668148298108,
            4.687953934364709,
        ])
        .unwrap();
        let m = s.validate(&set(&[&[0, 1], &[-1, 1]])).unwrap();
        assert!(m.one_root_per_gap);
        assert_eq!(m.gaps[0], vec![(1, 1.0)]);
        assert_eq!(m.below, vec![(0, 0.0)]);
    }

    #[test]
    fn schur_support_has_no_gaps() {
        let s = Support::new(vec![0.0, 4.0]).unwrap();
        let m = s.validate(&PolySet::empty()).unwrap();
        assert!(m.gaps.is_empty());
        assert!(m.one_root_per_gap);
    }

    #[test]
    fn empty_gap_rejected() {
        let s = Support::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(matches!(
            s.validate(&set(&[&[0, 1]])),
            Err(Error::EmptyGap(_, _))
        ));
    }

    #[test]
    fn root_inside_rejected() {
        let s = Support::new(vec![0.5, 2.0]).unwrap();
        assert!(matches!(
            s.validate(&set(&[&[-1, 1]])),
            Err(Error::RootInsideSupport { .. })
        ));
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(Support::new(vec![1.0]).is_err());
        assert!(matches!(
            Support::new(vec![0.0, 1.0, 1.0, 2.0]),
            Err(Error::OverlappingIntervals(_))
        ));
        assert!(Support::new(vec![1.0, 19.0]).is_err());
    }

    #[test]
    fn branch_signs_alternate_from_right() {
        let s = Support::new(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.branch_sign(2), 1.0);
        assert_eq!(s.branch_sign(1), -1.0);
        assert_eq!(s.branch_sign(0), 1.0);
        // outside: positive to the right, sign flips across each interval
        assert!(s.sqrt_h_outside(6.0) > 0.0);
        assert!(s.sqrt_h_outside(3.5) < 0.0);
        assert!(s.sqrt_h_outside(1.5) > 0.0);
        assert!(s.sqrt_h_outside(-1.0) < 0.0);
    }

    #[test]
    fn json_round_trip() {
        let s = Support::new(vec![0.0873528949, 4.41107635]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        let back: Support = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
