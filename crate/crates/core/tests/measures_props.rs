mod common;

use common::brute_log_potential;
use proptest::prelude::*;
use trace_lp::measures::{
    collocation_points, equilibrium, linear_potential_measure, log_potential_measure, MeasureDensity,
};
use trace_lp::polyarith::{real_roots, IntPoly};
use trace_lp::quadrature::{Discretized, Grid};
use trace_lp::support::Support;
use trace_lp::verify::delta_ratios;

/// Ordered endpoints of 1 to 3 intervals inside (0, 18) with gaps of at
/// least 0.05.
fn support_strategy() -> impl Strategy<Value = Support> {
    (1usize..=3)
        .prop_flat_map(|k| prop::collection::vec(0.05f64..1.5, 2 * k))
        .prop_map(|steps| {
            let mut x = 0.0;
            let pts: Vec<f64> = steps.iter().map(|s| { x += s; x }).collect();
            Support::new(pts).unwrap()
        })
}

fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    hi - lo
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn equilibrium_potential_is_constant(sigma in support_strategy()) {
        let eq = equilibrium(&sigma, &Grid::new(128)).unwrap();
        prop_assert!((eq.mass() - 1.0).abs() < 1e-12);
        let u = eq.potentials(&collocation_points(&sigma, 8));
        prop_assert!(spread(&u) < 1e-8, "spread {}", spread(&u));
    }

    #[test]
    fn linear_measure_has_unit_derivative(sigma in support_strategy()) {
        let lin = linear_potential_measure(&sigma, &Grid::new(128)).unwrap();
        for x in collocation_points(&sigma, 5) {
            let d = lin.cauchy(x);
            prop_assert!((d - 1.0).abs() < 1e-8, "PV at {} is {}", x, d);
        }
    }

    #[test]
    fn mixture_potential_is_linear(sigma in support_strategy(), w in -3.0f64..3.0, s in 0.0f64..18.0) {
        let grid = Grid::new(64);
        let eq = equilibrium(&sigma, &grid).unwrap();
        let lin = linear_potential_measure(&sigma, &grid).unwrap();
        let mix = MeasureDensity::mixture(vec![(w, eq.clone()), (1.5, lin.clone())]);
        let want = w * eq.potential(s) + 1.5 * lin.potential(s);
        prop_assert!((mix.potential(s) - want).abs() < 1e-12 * (1.0 + want.abs()));
        prop_assert!((mix.mass() - (w * eq.mass() + 1.5 * lin.mass())).abs() < 1e-12);
    }

    #[test]
    fn cross_energy_is_symmetric(sigma in support_strategy()) {
        let grid = Grid::new(128);
        let eq = equilibrium(&sigma, &grid).unwrap();
        let lin = linear_potential_measure(&sigma, &grid).unwrap();
        let (a, b) = (eq.cross_energy(&lin), lin.cross_energy(&eq));
        prop_assert!((a - b).abs() < 1e-8, "{} vs {}", a, b);
    }

    #[test]
    fn log_kernel_matches_brute_force(
        a in 0.0f64..15.0,
        w in 0.2f64..3.0,
        c in prop::collection::vec(-1.0f64..1.0, 3),
        t in -0.5f64..1.5,
    ) {
        let b = a + w;
        let numer = move |y: f64| 2.0 + c[0] * ((y - a) / w) + c[1] * ((y - a) / w).powi(2) + c[2] * (3.0 * y).sin();
        let sigma = Support::new(vec![a, b]).unwrap();
        let d = Discretized::from_numerator(&Grid::new(256), &sigma, |_, y| numer(y));
        let s = a + t * w;
        prop_assume!((s - a).abs() > 1e-6 && (s - b).abs() > 1e-6);
        let want = brute_log_potential(&numer, a, b, s, 8192);
        prop_assert!((d.potential(s) - want).abs() < 1e-6, "{} vs {}", d.potential(s), want);
    }
}

#[test]
fn root_balayage_potential_tracks_log_q() {
    let grid = Grid::new(256);
    let cases: Vec<(IntPoly, Vec<f64>)> = vec![
        (IntPoly::from_i64(&[-1, 1]), vec![0.1, 0.8, 1.3, 4.0]),
        (IntPoly::from_i64(&[1, -3, 1]), vec![0.07, 0.3, 0.48, 2.33, 2.94, 4.59]),
        (IntPoly::from_i64(&[-1, 6, -5, 1]), vec![0.05, 0.17, 0.25, 1.4, 1.7, 3.1, 3.4, 4.9]),
    ];
    for (q, pts) in cases {
        let sigma = Support::new(pts).unwrap();
        let roots = real_roots(&q, 1e-15).unwrap();
        let mu = log_potential_measure(&sigma, &q, &roots, &grid).unwrap();
        assert!((mu.mass() - 1.0).abs() < 1e-10);
        let deg = q.degree() as f64;
        let diffs: Vec<f64> = collocation_points(&sigma, 8)
            .iter()
            .map(|&x| mu.potential(x) - q.eval(x).abs().ln() / deg)
            .collect();
        assert!(spread(&diffs) < 1e-7, "{q}: spread {}", spread(&diffs));
    }
}

#[test]
fn schur_dual_density_ratios() {
    // nu = sqrt(4 - x) / (pi sqrt(x)) against the arcsine law: the numerator
    // ratio is 4 - x, and nu = 4 mu_eq + mu_lin.
    let grid = Grid::new(128);
    let sigma = Support::new(vec![0.0, 4.0]).unwrap();
    let eq = equilibrium(&sigma, &grid).unwrap();
    let lin = linear_potential_measure(&sigma, &grid).unwrap();
    let nu = MeasureDensity::mixture(vec![(4.0, eq.clone()), (1.0, lin)]);
    assert!((nu.mass() - 2.0).abs() < 1e-10, "mass {}", nu.mass());
    let x: f64 = 1.3;
    let want = (4.0 - x).sqrt() / (std::f64::consts::PI * x.sqrt());
    assert!((nu.density(x) - want).abs() < 1e-10);
    let d = delta_ratios(&nu, 1.0, &eq);
    assert!((d[0] - 4.0).abs() < 1e-12 && d[1].abs() < 1e-12, "{d:?}");
}

#[test]
fn brute_force_oracle_is_self_consistent() {
    // Arcsine law on [0, 4]: potential 0 inside, log|w/2| outside.
    for s in [0.5, 2.0, 3.7] {
        assert!(brute_log_potential(|_| 1.0, 0.0, 4.0, s, 8192).abs() < 1e-8);
    }
    let s: f64 = 6.0;
    let w = s - 2.0 + (s * s - 4.0 * s).sqrt();
    assert!((brute_log_potential(|_| 1.0, 0.0, 4.0, s, 8192) - (w / 2.0).ln()).abs() < 1e-12);
}
