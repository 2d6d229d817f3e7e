use fourier_grid::bounds::{decay_bound_check, phi, psi, tail_sum};
use fourier_grid::calculus::{
    derivative, ftc_residual, parts_residual, product_rule_residual, shift, swapped_product_rule_residual,
};
use fourier_grid::continuous::{m_test_majorant, sup_error};
use fourier_grid::discrete::{alias_fold, discrete_coefficients, discrete_coefficients_fast, invert};
use fourier_grid::functions::{bound_constants, combine, cosine, exp_cos, trig_monomial, SmoothPeriodicFunction};
use fourier_grid::grid::{sample, Grid, GridFunction};
use fourier_grid::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..=1.0f64, -1.0..=1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn grid_function(max_n: usize) -> impl Strategy<Value = GridFunction> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(complex(), 2 * n)
            .prop_map(move |values| GridFunction::from_values(Grid::new(n).unwrap(), values).unwrap())
    })
}

fn grid_pair(max_n: usize) -> impl Strategy<Value = (GridFunction, GridFunction)> {
    (1..=max_n).prop_flat_map(|n| {
        let side = move || {
            prop::collection::vec(complex(), 2 * n)
                .prop_map(move |values| GridFunction::from_values(Grid::new(n).unwrap(), values).unwrap())
        };
        (side(), side())
    })
}

/// A trigonometric polynomial of degree at most `max_degree`.
fn trig_polynomial(max_degree: i64) -> impl Strategy<Value = (i64, SmoothPeriodicFunction)> {
    (0..=max_degree).prop_flat_map(|d| {
        prop::collection::vec(complex(), (2 * d + 1) as usize).prop_map(move |cs| {
            let terms: Vec<_> = (-d..=d).zip(cs).map(|(k, c)| (c, trig_monomial(k))).collect();
            (d, combine(&terms).unwrap())
        })
    })
}

/// A mixture of catalog functions with random weights.
fn smooth_mixture() -> impl Strategy<Value = SmoothPeriodicFunction> {
    (complex(), complex(), complex(), -4i64..=4, 1u32..=4)
        .prop_map(|(a, b, c, k, j)| combine(&[(a, trig_monomial(k)), (b, cosine(j)), (c, exp_cos())]).unwrap())
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn integration_is_linear((u, v) in grid_pair(32), a in complex(), b in complex()) {
        let combo = u.scaled(a).add(&v.scaled(b)).unwrap();
        let lhs = combo.integrate();
        let rhs = a * u.integrate() + b * v.integrate();
        let scale = 1.0 + a.norm() * u.max_abs() + b.norm() * v.max_abs();
        prop_assert!((lhs - rhs).norm() <= 1e-14 * scale * 4.0);
    }

    #[test]
    fn constants_integrate_to_twice_their_value(n in 1usize..200, c in complex()) {
        let gf = GridFunction::constant(Grid::new(n).unwrap(), c);
        prop_assert!((gf.integrate() - 2.0 * c).norm() <= 1e-14 * (1.0 + c.norm()) * 4.0);
    }

    #[test]
    fn step_semantics(gf in grid_function(16), t in 0.0..1.0f64) {
        let grid = gf.grid();
        for j in grid.indices() {
            let x = (j as f64 + t) / grid.n() as f64;
            prop_assert_eq!(gf.eval(x), Some(gf.at(j)));
        }
    }

    #[test]
    fn inversion_round_trips(gf in grid_function(64)) {
        let back = invert(&discrete_coefficients(&gf));
        prop_assert!(max_gap(back.values(), gf.values()) <= 1e-10 * (1.0 + gf.max_abs()));
    }

    #[test]
    fn transform_is_linear((u, v) in grid_pair(32), a in complex(), b in complex()) {
        let combined = discrete_coefficients(&u.scaled(a).add(&v.scaled(b)).unwrap());
        let (su, sv) = (discrete_coefficients(&u), discrete_coefficients(&v));
        let expected: Vec<Complex64> =
            su.coefficients().iter().zip(sv.coefficients()).map(|(x, y)| a * x + b * y).collect();
        let scale = 1.0 + a.norm() * u.max_abs() + b.norm() * v.max_abs();
        prop_assert!(max_gap(combined.coefficients(), &expected) <= 1e-13 * scale);
    }

    #[test]
    fn coefficients_bounded_by_l1_norm(gf in grid_function(32)) {
        let l1 = gf.values().iter().map(|v| v.norm()).sum::<f64>() / gf.n() as f64;
        for (_, c) in discrete_coefficients(&gf).iter() {
            prop_assert!(c.norm() <= l1 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn fast_transform_agrees(gf in grid_function(64)) {
        let (direct, fast) = (discrete_coefficients(&gf), discrete_coefficients_fast(&gf));
        prop_assert!(max_gap(direct.coefficients(), fast.coefficients()) <= 1e-12 * (1.0 + gf.max_abs()));
    }

    #[test]
    fn aliasing_matches_folded_coefficients((_, f) in trig_polynomial(12), n in prop::sample::select(vec![4usize, 8, 16])) {
        let spectrum = discrete_coefficients(&sample(&f, Grid::new(n).unwrap()).unwrap());
        for (m, c) in spectrum.iter() {
            prop_assert!((c - alias_fold(&f, n, m, 32).unwrap()).norm() <= 1e-12);
        }
    }

    #[test]
    fn calculus_residuals_vanish((u, v) in grid_pair(64)) {
        let n = u.n() as f64;
        let scale = n * u.max_abs().max(1e-300) * v.max_abs().max(1e-300);
        prop_assert!(ftc_residual(&u).norm() <= 1e-11 * n * u.max_abs().max(1e-300));
        prop_assert!(product_rule_residual(&u, &v).unwrap().max_abs() <= 1e-11 * scale);
        prop_assert!(swapped_product_rule_residual(&u, &v).unwrap().max_abs() <= 1e-11 * scale);
        prop_assert!(parts_residual(&u, &v).unwrap().norm() <= 1e-11 * scale);
    }

    #[test]
    fn difference_operators_are_linear((u, v) in grid_pair(32), a in complex(), b in complex()) {
        let combo = u.scaled(a).add(&v.scaled(b)).unwrap();
        let n = u.n() as f64;
        let scale = 1.0 + a.norm() * u.max_abs() + b.norm() * v.max_abs();
        let d = derivative(&u).scaled(a).add(&derivative(&v).scaled(b)).unwrap();
        prop_assert!(max_gap(derivative(&combo).values(), d.values()) <= 1e-13 * n * scale);
        let s = shift(&u).scaled(a).add(&shift(&v).scaled(b)).unwrap();
        prop_assert!(max_gap(shift(&combo).values(), s.values()) <= 1e-14 * scale);
    }

    #[test]
    fn symbols_are_conjugate(n in 1usize..2048, t in 0.0..1.0f64) {
        let m = (t * 2.0 * n as f64) as i64 - n as i64;
        let (ph, ps) = (phi(n, m), psi(n, m));
        prop_assert!((ps - ph.conj()).norm() <= 1e-12 * n as f64);
        prop_assert!((ph.norm() - ps.norm()).abs() <= 1e-12 * n as f64);
        prop_assert!(ps.norm() <= 2.0 * n as f64 * (1.0 + 1e-15));
        prop_assert!(ps.norm_sqr() >= 4.0 * (m * m) as f64 * (1.0 - 1e-9));
    }

    #[test]
    fn tails_shrink_as_they_start_later(gf in grid_function(32), hi_offset in 0i64..8) {
        prop_assume!(gf.n() >= 2);
        let spectrum = discrete_coefficients(&gf);
        let n = gf.n() as i64;
        let hi = (n - 1 - hi_offset).max(1);
        let tails: Vec<f64> = (1..=hi).map(|lo| tail_sum(&spectrum, lo, hi).unwrap()).collect();
        prop_assert!(tails.windows(2).all(|w| w[1] <= w[0]));
        let negative: Vec<f64> = (1..=hi).map(|lo| tail_sum(&spectrum, -hi, -lo).unwrap()).collect();
        prop_assert!(negative.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn sampled_mixtures_are_finite(f in smooth_mixture(), n in 1usize..64) {
        let gf = sample(&f, Grid::new(n).unwrap()).unwrap();
        prop_assert!(gf.values().iter().all(|v| v.re.is_finite() && v.im.is_finite()));
    }

    #[test]
    fn mixtures_have_consistent_derivatives(f in smooth_mixture(), x in -0.99..0.99f64) {
        let h = 1e-5;
        let d1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        let d2 = (f.d1(x + h) - f.d1(x - h)) / (2.0 * h);
        let scale = 1.0 + f.d2(x).norm() + 100.0;
        prop_assert!((d1 - f.d1(x)).norm() <= 1e-6 * scale * 10.0);
        prop_assert!((d2 - f.d2(x)).norm() <= 1e-5 * scale * 10.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trig_polynomials_are_reproduced((d, f) in trig_polynomial(6), extra in 0usize..4) {
        let order = d as usize + extra;
        prop_assert!(sup_error(&f, order.max(1), 1024).unwrap() <= 1e-11);
    }

    #[test]
    fn bound_constants_are_homogeneous(f in smooth_mixture(), s in 0.01..100.0f64) {
        let base = bound_constants(&f).unwrap();
        let scaled = bound_constants(&f.scaled(Complex64::new(s, 0.0))).unwrap();
        let pairs = [
            (base.sup_norm, scaled.sup_norm),
            (base.slope_sup_norm, scaled.slope_sup_norm),
            (base.curvature_l1_norm, scaled.curvature_l1_norm),
            (base.combined, scaled.combined),
            (base.decay, scaled.decay),
        ];
        for (b, sc) in pairs {
            prop_assert!((sc - s * b).abs() <= 1e-12 * s * b.abs().max(1e-300));
        }
    }

    #[test]
    fn decay_bound_controls_tails(f in smooth_mixture(), n in prop::sample::select(vec![8usize, 32, 128])) {
        let h = bound_constants(&f).unwrap().decay;
        let spectrum = discrete_coefficients(&sample(&f, Grid::new(n).unwrap()).unwrap());
        prop_assert!(decay_bound_check(&spectrum, h).holds());
        let last = n as i64 - 1;
        for lo in 2..=last {
            let tail = tail_sum(&spectrum, lo, last).unwrap();
            let series: f64 = (lo..=last).map(|m| h / (m * m) as f64).sum();
            prop_assert!(tail <= series * (1.0 + 1e-12));
            prop_assert!(series <= h / (lo - 1) as f64);
        }
    }
}

#[test]
fn majorant_decreases_to_zero() {
    for h in [0.5, 8.0, 57.0] {
        let mut previous = f64::INFINITY;
        let orders = (1..=64).chain((7..=14).flat_map(|k| [(1usize << k) - 1, 1 << k, (1 << k) + 1, 3 << (k - 1)]));
        let mut orders: Vec<usize> = orders.collect();
        orders.sort_unstable();
        orders.dedup();
        for order in orders {
            let bound = m_test_majorant(h, order).unwrap();
            assert!(bound < previous, "H={h} N={order}");
            previous = bound;
            if order.is_power_of_two() {
                assert!(bound <= 2.0 * h / order as f64, "H={h} N={order}");
            }
        }
    }
}
