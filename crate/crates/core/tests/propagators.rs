use std::f64::consts::PI;

use num_traits::Zero;
use proptest::prelude::*;
use wavop::opalgebra::coefficients::{imag, rational};
use wavop::opalgebra::HamiltonianSpec;
use wavop::oracle::{recursive_polynomial_oracle, split_step_evolve, PotentialGrid};
use wavop::propagators::{
    evolve_by_operator_series, evolve_constant_force_fourier, evolve_free_fourier,
    evolve_harmonic_fourier, evolve_polynomial_by_operator_series, evolve_polynomial_state,
    free_polynomial, free_polynomial_exact, group_velocity, DispersionRelation, HarmonicTruncation,
    PolynomialState,
};
use wavop::wavefield::{compare, make_gaussian, observables, Grid1D, PlateauWindow, WaveFunction};
use wavop::C64;

fn free(mass: f64) -> DispersionRelation {
    DispersionRelation::NonRelativistic { mass }
}

#[test]
fn closed_forms_agree_with_split_step() {
    let g = Grid1D::symmetric(512, 20.0).unwrap();
    let psi = make_gaussian(&g, 1.0, 1.0, 0.5, 1.0).unwrap();
    let harmonic = PotentialGrid::from_fn(&g, |q| 0.5 * q * q).unwrap();
    let force = PotentialGrid::from_fn(&g, |q| -0.5 * q).unwrap();
    for t in [0.4, 1.3] {
        let pairs = [
            (
                evolve_free_fourier(&psi, t, &free(1.0)).unwrap().state,
                split_step_evolve(&psi, &PotentialGrid::zero(&g), t, 1024, 1.0).unwrap(),
            ),
            (
                evolve_constant_force_fourier(&psi, t, 0.5, 1.0).unwrap().state,
                split_step_evolve(&psi, &force, t, 1024, 1.0).unwrap(),
            ),
            (
                evolve_harmonic_fourier(&psi, t, 1.0, 1.0).unwrap().state,
                split_step_evolve(&psi, &harmonic, t, 1024, 1.0).unwrap(),
            ),
        ];
        for (a, b) in pairs {
            assert!(compare(&a, &b).unwrap().l2_distance < 1e-6);
        }
    }
}

// Polynomial states are not normalisable, so the grid routes see them
// through a smooth window and are compared only well inside its plateau,
// before the edges have had time to reach it.
#[test]
fn polynomial_and_grid_routes_agree_inside_window() {
    let g = Grid1D::symmetric(1024, 20.0).unwrap();
    let window = PlateauWindow::new(0.0, 8.0, 16.0).unwrap();
    let p = PolynomialState::new(
        vec![C64::new(1.0, 0.0), C64::new(0.5, 0.2), C64::new(0.3, 0.0), C64::new(0.0, 0.1)],
        1.0,
        1.0,
    )
    .unwrap();
    let psi = p.windowed(&g, &window).unwrap();
    let interior = window.interior_indices(&g, 0.5);
    let t = 0.15;
    let cases = [
        (
            HamiltonianSpec::free(1.0, 1.0).unwrap(),
            evolve_free_fourier(&psi, t, &free(1.0)).unwrap().state,
        ),
        (
            HamiltonianSpec::constant_force(1.0, 0.8, 1.0).unwrap(),
            evolve_constant_force_fourier(&psi, t, 0.8, 1.0).unwrap().state,
        ),
        (
            HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap(),
            evolve_harmonic_fourier(&psi, t, 1.0, 1.0).unwrap().state,
        ),
    ];
    let truncation = HarmonicTruncation {
        window: 4.0,
        k_max: None,
        tolerance: 1e-10,
    };
    for (h, grid_state) in cases {
        let closed = evolve_polynomial_state(&p, &h, t, &truncation).unwrap();
        let series = evolve_polynomial_by_operator_series(&p, &h, t, 14).unwrap();
        for &j in &interior {
            let q = g.position(j);
            let reference = closed.evaluate(q);
            assert!((grid_state.amplitudes()[j] - reference).norm() < 1e-6, "{h} q={q}");
            assert!((series.polynomial.evaluate(q) - reference).norm() < 1e-6, "{h} q={q}");
        }
    }
}

#[test]
fn evolution_composes() {
    let g = Grid1D::symmetric(512, 25.0).unwrap();
    let psi = make_gaussian(&g, -1.0, 0.9, 1.0, 1.0).unwrap();
    let (t1, t2) = (0.6, 1.1);
    type Step = Box<dyn Fn(&WaveFunction, f64) -> WaveFunction>;
    let steps: Vec<Step> = vec![
        Box::new(|s, t| evolve_free_fourier(s, t, &free(1.5)).unwrap().state),
        Box::new(|s, t| evolve_constant_force_fourier(s, t, -0.7, 1.5).unwrap().state),
        Box::new(|s, t| evolve_harmonic_fourier(s, t, 0.8, 1.5).unwrap().state),
        Box::new(|s, t| {
            evolve_free_fourier(s, t, &DispersionRelation::Relativistic { mass: 1.0, c: 2.0 })
                .unwrap()
                .state
        }),
    ];
    for step in steps {
        let once = step(&psi, t1 + t2);
        let twice = step(&step(&psi, t1), t2);
        assert!(compare(&once, &twice).unwrap().l2_distance < 1e-9);
    }
}

#[test]
fn free_polynomials_match_repeated_operator_application() {
    for c in [imag(rational(3, 7)), imag(rational(-5, 2))] {
        for n in 0..=12 {
            assert_eq!(free_polynomial_exact(n, &c), recursive_polynomial_oracle(n, &c).unwrap());
        }
    }
    // numeric version agrees with the exact one
    let exact = free_polynomial_exact(9, &imag(rational(1, 2))).to_state(1.0, 1.0).unwrap();
    let numeric = free_polynomial(9, 0.5, 1.0, 1.0).unwrap();
    for (a, b) in exact.coefficients().iter().zip(numeric.coefficients()) {
        assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }
}

#[test]
fn constant_force_obeys_ehrenfest() {
    let g = Grid1D::symmetric(1024, 40.0).unwrap();
    let (q0, k0, m, f) = (-2.0, 0.8, 2.0, 1.5);
    let psi = make_gaussian(&g, q0, 1.0, k0, 1.0).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let obs = observables(&evolve_constant_force_fourier(&psi, t, f, m).unwrap().state).unwrap();
        assert!((obs.mean_p - (k0 + f * t)).abs() < 1e-8);
        assert!((obs.mean_q - (q0 + k0 * t / m + f * t * t / (2.0 * m))).abs() < 1e-8);
    }
}

#[test]
fn massless_packet_translates_rigidly() {
    let g = Grid1D::symmetric(2048, 60.0).unwrap();
    let (k0, c, t) = (6.0, 1.5, 8.0);
    // Gaussian in k centred far from zero: negative components are
    // negligible, so every component moves with +c
    let psi = make_gaussian(&g, -10.0, 2.0, k0, 1.0).unwrap();
    let moved = evolve_free_fourier(&psi, t, &DispersionRelation::Massless { c }).unwrap().state;
    let shifted = make_gaussian(&g, -10.0 + c * t, 2.0, k0, 1.0).unwrap();
    assert!(compare(&moved, &shifted).unwrap().fidelity > 1.0 - 1e-8);
    assert_eq!(group_velocity(&DispersionRelation::Massless { c }, -k0, 1.0).unwrap(), -c);
}

#[test]
fn relativistic_packet_moves_at_group_velocity() {
    let g = Grid1D::symmetric(2048, 80.0).unwrap();
    let d = DispersionRelation::Relativistic { mass: 1.0, c: 1.0 };
    let k0 = 1.0;
    let psi = make_gaussian(&g, 0.0, 4.0, k0, 1.0).unwrap();
    let t = 10.0;
    let obs = observables(&evolve_free_fourier(&psi, t, &d).unwrap().state).unwrap();
    let v = group_velocity(&d, k0, 1.0).unwrap();
    assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-14);
    // the mean velocity is the average of v over the momentum spread
    assert!((obs.mean_q - v * t).abs() < 0.05 * v * t);
}

#[test]
fn harmonic_operator_series_improves_with_order() {
    let g = Grid1D::symmetric(256, 12.8).unwrap();
    let psi = make_gaussian(&g, 0.5, 1.0, 0.3, 1.0).unwrap();
    let h = HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap();
    let exact = evolve_harmonic_fourier(&psi, 0.1, 1.0, 1.0).unwrap().state;
    let errors: Vec<f64> = [2, 4, 6]
        .iter()
        .map(|&n| {
            let out = evolve_by_operator_series(&psi, &h, 0.1, n).unwrap();
            compare(&out.state, &exact).unwrap().l2_distance
        })
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(errors[2] < 1e-4);
}

#[test]
fn harmonic_period_revives() {
    let g = Grid1D::symmetric(512, 16.0).unwrap();
    let psi = make_gaussian(&g, 2.0, 0.7, -1.0, 1.0).unwrap();
    let w = 1.3;
    let out = evolve_harmonic_fourier(&psi, 2.0 * PI / w, w, 1.0).unwrap().state;
    let report = compare(&out, &psi).unwrap();
    assert!(report.fidelity > 1.0 - 1e-10);
    // a full period leaves the global phase e^{−iπ} = −1
    let flipped = psi.with_amplitudes(psi.amplitudes().iter().map(|a| -a).collect()).unwrap();
    assert!(compare(&out, &flipped).unwrap().l2_distance < 1e-9);
}

#[test]
fn zero_polynomial_stays_zero() {
    let zero = PolynomialState::new(vec![], 1.0, 1.0).unwrap();
    let out = evolve_polynomial_state(
        &zero,
        &HamiltonianSpec::free(1.0, 1.0).unwrap(),
        1.0,
        &HarmonicTruncation::default(),
    )
    .unwrap();
    assert!(out.evaluate(0.3).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolutions_are_unitary(
        center in -3.0f64..3.0,
        width in 0.6f64..2.0,
        k0 in -2.0f64..2.0,
        t in -2.0f64..2.0,
        param in 0.3f64..2.0,
    ) {
        let g = Grid1D::symmetric(512, 30.0).unwrap();
        let psi = make_gaussian(&g, center, width, k0, 1.0).unwrap();
        let norm = psi.norm();
        let states = [
            evolve_free_fourier(&psi, t, &free(param)).unwrap().state,
            evolve_free_fourier(&psi, t, &DispersionRelation::Relativistic { mass: param, c: 1.0 }).unwrap().state,
            evolve_constant_force_fourier(&psi, t, param, 1.0).unwrap().state,
        ];
        for s in states {
            prop_assert!((s.norm() - norm).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonic_evolution_is_unitary_and_reversible(
        center in -2.0f64..2.0,
        k0 in -1.5f64..1.5,
        t in -4.0f64..4.0,
        omega in 0.5f64..1.5,
    ) {
        let g = Grid1D::symmetric(256, 20.0).unwrap();
        let psi = make_gaussian(&g, center, 1.0, k0, 1.0).unwrap();
        let forward = evolve_harmonic_fourier(&psi, t, omega, 1.0).unwrap().state;
        prop_assert!((forward.norm() - psi.norm()).abs() < 1e-9);
        let back = evolve_harmonic_fourier(&forward, -t, omega, 1.0).unwrap().state;
        prop_assert!(compare(&back, &psi).unwrap().l2_distance < 1e-9);
    }
}
