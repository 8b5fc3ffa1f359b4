mod common;

use common::{from_integer_roots, sylvester_resultant};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use proptest::prelude::*;
use trace_lp::polyarith::{count_real_roots, discriminant, real_roots, resultant, IntPoly, PolySet};

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    (1usize..=5)
        .prop_flat_map(|d| (prop::collection::vec(-20i64..=20, d), prop_oneof![-9i64..=-1, 1i64..=9]))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64(&c)
        })
}

fn distinct_roots() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-8i64..=8, 1..=5).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn resultant_matches_sylvester_determinant(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(resultant(&p, &q), sylvester_resultant(&p, &q));
    }

    #[test]
    fn resultant_antisymmetry(p in poly_strategy(), q in poly_strategy()) {
        let s = if (p.degree() * q.degree()) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(resultant(&p, &q), s * resultant(&q, &p));
    }

    #[test]
    fn resultant_from_roots(c in 1i64..=4, roots in distinct_roots(), q in poly_strategy()) {
        let p = from_integer_roots(c, &roots);
        // Res(p, q) = lc(p)^deg q * prod q(r).
        let mut want = Pow::pow(BigInt::from(c), q.degree() as u32);
        for &r in &roots {
            let v = q.coeffs().iter().rev().fold(BigInt::from(0), |acc, a| acc * r + a);
            want *= v;
        }
        prop_assert_eq!(resultant(&p, &q), want);
    }

    #[test]
    fn discriminant_of_product(a in distinct_roots(), b in distinct_roots()) {
        prop_assume!(a.iter().all(|r| !b.contains(r)));
        let (p, q) = (from_integer_roots(1, &a), from_integer_roots(1, &b));
        let lhs = discriminant(&p.mul(&q));
        let rhs = discriminant(&p) * discriminant(&q) * Pow::pow(resultant(&p, &q), 2u32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn real_roots_of_split_polynomials(c in 1i64..=5, roots in distinct_roots()) {
        let p = from_integer_roots(c, &roots);
        prop_assert_eq!(count_real_roots(&p), roots.len());
        let found = real_roots(&p, 1e-14).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (x, r) in found.iter().zip(&roots) {
            prop_assert!((x - *r as f64).abs() < 1e-10, "{} vs {}", x, r);
        }
    }

    #[test]
    fn string_round_trip(p in poly_strategy()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn discriminants_of_the_standard_set() {
    let d = |c: &[i64]| discriminant(&IntPoly::from_i64(c));
    assert_eq!(d(&[1, -3, 1]), BigInt::from(5));
    assert_eq!(d(&[-1, 6, -5, 1]), BigInt::from(49));
    assert_eq!(d(&[0, 1]), BigInt::one());
}

#[test]
fn resultant_of_coprime_pair_is_unit() {
    let p = IntPoly::from_i64(&[1, -3, 1]);
    let q = IntPoly::from_i64(&[-1, 6, -5, 1]);
    assert_eq!(resultant(&p, &q), BigInt::from(-1));
    assert_eq!(sylvester_resultant(&p, &q), BigInt::from(-1));
}

#[test]
fn polyset_rejects_bad_members() {
    assert!(PolySet::new(vec![IntPoly::from_i64(&[1, 0, 1])]).is_err());
    assert!(PolySet::new(vec![IntPoly::from_i64(&[0, 0, 1])]).is_err());
    assert!(PolySet::new(vec![IntPoly::from_i64(&[3])]).is_err());
    assert!(PolySet::new(vec![IntPoly::from_i64(&[0, 1]), IntPoly::from_i64(&[0, -2])]).is_err());
}
