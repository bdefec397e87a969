//! One test per acceptance criterion. Each prints `criterion N: PASS` or
//! `criterion N: FAIL` with the measured numbers before asserting.

use std::f64::consts::PI;
use std::time::Instant;

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wavop::opalgebra::coefficients::{exact, imag, rational, real};
use wavop::opalgebra::{
    classical_flow, heisenberg_series, poisson_series, quantize_flow, ClassicalPolynomial, Component, FlowForm,
    HamiltonianSpec, Monomial, OperatorPolynomial, QuantizationOrdering,
};
use wavop::oracle::{
    kernel_from_spectrum, recursive_polynomial_oracle, schrodinger_residual, split_step_evolve,
    PotentialGrid, SpectralDecomposition, Stencil, TimeSamples, RESIDUAL_DT,
};
use wavop::propagators::{
    evolve_by_operator_series, evolve_constant_force_fourier, evolve_free_fourier,
    evolve_harmonic_fourier, free_polynomial_exact, kernel_equivalence_free, make_kernel,
    DispersionRelation,
};
use wavop::wavefield::{compare, make_gaussian, observables, Grid1D, PlateauWindow};
use wavop::C64;
use wavop_cli::{chaos_demo, plane_wave_packet, ChaosOptions};

fn verdict(n: u32, pass: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_closed_forms_match_split_step() {
    let start = Instant::now();
    let steps = 4096;
    let g = Grid1D::symmetric(1024, 40.0).unwrap();
    let psi = make_gaussian(&g, 1.0, 1.0, 0.5, 1.0).unwrap();
    let (m, f, w) = (1.0, 0.5, 1.0);
    let zero = PotentialGrid::zero(&g);
    let force = PotentialGrid::from_fn(&g, |q| -f * q).unwrap();
    let harmonic = PotentialGrid::from_fn(&g, |q| 0.5 * m * w * w * q * q).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..=8 {
        let t = 2.0 * i as f64 / 8.0;
        let free = evolve_free_fourier(&psi, t, &DispersionRelation::NonRelativistic { mass: m }).unwrap();
        let oracle = split_step_evolve(&psi, &zero, t, steps, m).unwrap();
        worst = worst.max(compare(&free.state, &oracle).unwrap().l2_distance);
        let cf = evolve_constant_force_fourier(&psi, t, f, m).unwrap();
        let oracle = split_step_evolve(&psi, &force, t, steps, m).unwrap();
        worst = worst.max(compare(&cf.state, &oracle).unwrap().l2_distance);
    }
    for i in 0..=8 {
        let t = 2.0 * PI / w * i as f64 / 8.0;
        let ho = evolve_harmonic_fourier(&psi, t, w, m).unwrap();
        let oracle = split_step_evolve(&psi, &harmonic, t, steps, m).unwrap();
        worst = worst.max(compare(&ho.state, &oracle).unwrap().l2_distance);
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        1,
        worst <= 1e-6 && elapsed < 30.0,
        format!("max l2 {worst:.3e}, {elapsed:.1} s"),
    );
}

#[test]
fn criterion_02_free_and_constant_force_series_terminate() {
    let order = 10;
    let free = heisenberg_series(&OperatorPolynomial::q(), &HamiltonianSpec::free(1.5, 1.0).unwrap(), order)
        .unwrap();
    let cf = heisenberg_series(
        &OperatorPolynomial::q(),
        &HamiltonianSpec::constant_force(1.5, 0.75, 1.0).unwrap(),
        order,
    )
    .unwrap();
    let free_tail_zero = (2..=order).all(|n| free.coefficient(n).is_zero());
    let cf_tail_zero = (3..=order).all(|n| cf.coefficient(n).is_zero());
    verdict(
        2,
        free.terminates_at() == 1 && cf.terminates_at() == 2 && free_tail_zero && cf_tail_zero,
        format!(
            "free ends at {}, constant force ends at {}",
            free.terminates_at(),
            cf.terminates_at()
        ),
    );
}

#[test]
fn criterion_03_harmonic_series_is_trig_expansion() {
    let (m, w) = (2.0, 0.75);
    let s = heisenberg_series(&OperatorPolynomial::q(), &HamiltonianSpec::harmonic(m, w, 0.6).unwrap(), 11)
        .unwrap();
    // q(t) = q cos ωt + p sin(ωt)/(mω): even orders (−ω²)^k q, odd (−ω²)^k p/m
    let minus_w2 = -(exact(w) * exact(w));
    let mut all = true;
    for n in 0..12usize {
        let k = (n / 2) as u32;
        let factor = (0..k).fold(BigRational::from_integer(1.into()), |acc, _| acc * minus_w2.clone());
        let expected = if n % 2 == 0 {
            OperatorPolynomial::term(Monomial::new(1, 0, 0), real(factor))
        } else {
            OperatorPolynomial::term(Monomial::new(0, 1, 0), real(factor / exact(m)))
        };
        all &= s.coefficient(n) == &expected;
    }
    verdict(
        3,
        all && s.is_hbar_free(),
        format!("12 coefficients exact: {all}, free of hbar: {}", s.is_hbar_free()),
    );
}

#[test]
fn criterion_04_classical_limit_of_quartic() {
    let h = HamiltonianSpec::custom(
        OperatorPolynomial::term(Monomial::new(0, 2, 0), real(rational(1, 2)))
            + OperatorPolynomial::term(Monomial::new(4, 0, 0), real(rational(1, 1))),
        1.0,
    )
    .unwrap();
    let symbol = ClassicalPolynomial::from_normal_ordered(&h.operator().classical_part().unwrap());
    let flow = classical_flow(&h, FlowForm::TaylorSeries { order: 6 }).unwrap();
    let mut mismatches = 0;
    for (seed_op, seed, component) in [
        (OperatorPolynomial::q(), ClassicalPolynomial::q(), Component::Position),
        (OperatorPolynomial::p(), ClassicalPolynomial::p(), Component::Momentum),
    ] {
        let limit = heisenberg_series(&seed_op, &h, 6).unwrap().classical_limit().unwrap();
        let poisson = poisson_series(&seed, &symbol, 6);
        for n in 0..=6 {
            if limit[n] != flow.taylor_coefficient(component, n) || limit[n] != poisson[n] {
                mismatches += 1;
            }
        }
    }
    verdict(4, mismatches == 0, format!("{mismatches} mismatching coefficients of 14"));
}

#[test]
fn criterion_05_quantized_flow_equals_heisenberg_series() {
    let family = [
        HamiltonianSpec::free(1.0, 1.0).unwrap(),
        HamiltonianSpec::constant_force(2.0, -1.5, 1.0).unwrap(),
        HamiltonianSpec::harmonic(0.5, 2.0, 1.0).unwrap(),
        HamiltonianSpec::inverted_harmonic(1.5, 0.5, 1.0).unwrap(),
    ];
    let mut failures = Vec::new();
    for h in &family {
        let flow = classical_flow(h, FlowForm::ClosedForm).unwrap();
        for (seed, component) in [
            (OperatorPolynomial::q(), Component::Position),
            (OperatorPolynomial::p(), Component::Momentum),
        ] {
            let quantized = quantize_flow(&flow, component, 8, QuantizationOrdering::Weyl).unwrap();
            if quantized != heisenberg_series(&seed, h, 8).unwrap() {
                failures.push(format!("{} {component:?}", h.name()));
            }
        }
    }
    verdict(5, failures.is_empty(), format!("mismatches: {failures:?}"));
}

#[test]
fn criterion_06_free_polynomials_match_recursive_oracle() {
    // c = iħt/m with ħ = 1, t = 3/4, m = 2
    let c = imag(rational(3, 8));
    let bad: Vec<u32> = (0..=12)
        .filter(|&n| free_polynomial_exact(n, &c) != recursive_polynomial_oracle(n, &c).unwrap())
        .collect();
    verdict(6, bad.is_empty(), format!("orders differing: {bad:?}"));
}

#[test]
fn criterion_07_constant_force_kernel_residual() {
    let (m, f, t) = (1.0, 1.0, 1.0);
    let g = Grid1D::symmetric(1024, 16.0).unwrap();
    let window = PlateauWindow::new(0.0, 5.0, 14.0).unwrap();
    let h = HamiltonianSpec::constant_force(m, f, 1.0).unwrap();
    let implemented = TimeSamples::around(&g, t, RESIDUAL_DT, Stencil::Richardson, |q, t| {
        make_kernel(&h, t).unwrap().evaluate(q)
    })
    .unwrap();
    let good = schrodinger_residual(&implemented, &h, &window, Stencil::Richardson).unwrap();
    // the same kernel with the linear phase missing its factor t
    let without_t = TimeSamples::around(&g, t, RESIDUAL_DT, Stencil::Richardson, |q, t| {
        C64::from_polar(1.0, -f * f * t.powi(3) / (6.0 * m) + f * q)
    })
    .unwrap();
    let bad = schrodinger_residual(&without_t, &h, &window, Stencil::Richardson).unwrap();
    verdict(
        7,
        good <= 1e-6 && bad > 0.1,
        format!("implemented {good:.3e}, without t {bad:.3e}"),
    );
}

#[test]
fn criterion_08_kernel_equivalence_and_spectral_kernel() {
    let mut rng = StdRng::seed_from_u64(8);
    let g = Grid1D::symmetric(256, 20.0).unwrap();
    let mut free_dev: f64 = 0.0;
    for _ in 0..10 {
        let k = rng.random_range(-5.0..5.0);
        let t = rng.random_range(-3.0..3.0);
        for v in kernel_equivalence_free(&g, k, t, 1.0, 1.0) {
            free_dev = free_dev.max((v - 1.0).norm());
        }
    }

    let h = HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap();
    let g = Grid1D::symmetric(1024, 16.0).unwrap();
    let (mass, v) = PotentialGrid::from_hamiltonian(&h, &g).unwrap();
    let spectrum = SpectralDecomposition::compute(&v, mass, 1.0).unwrap();
    let window = PlateauWindow::new(0.0, 6.0, 14.0).unwrap();
    let t = 0.3;
    let numeric = kernel_from_spectrum(&spectrum, &window, t, spectrum.count()).unwrap();
    let exact = make_kernel(&h, t).unwrap();
    let harmonic_dev = g
        .positions()
        .iter()
        .zip(&numeric.values)
        .filter(|(q, _)| q.abs() <= 3.0)
        .map(|(q, v)| (v - exact.evaluate(*q)).norm())
        .fold(0.0, f64::max);
    verdict(
        8,
        free_dev <= 1e-12 && harmonic_dev <= 1e-4,
        format!("free kernel deviation {free_dev:.3e}, harmonic interior deviation {harmonic_dev:.3e}"),
    );
}

#[test]
fn criterion_09_coherent_state_and_revival() {
    let (m, w, a): (f64, f64, f64) = (1.0, 1.0, 2.0);
    let q0 = (1.0 / (m * w)).sqrt();
    let g = Grid1D::symmetric(512, 20.0).unwrap();
    let psi = make_gaussian(&g, a, q0, 0.0, 1.0).unwrap();
    let v = PotentialGrid::from_fn(&g, |q| 0.5 * m * w * w * q * q).unwrap();
    let period = 2.0 * PI / w;
    let mut centre_dev: f64 = 0.0;
    let mut oracle_state = psi.clone();
    let segments = 16;
    for i in 1..=segments {
        let t = period * i as f64 / segments as f64;
        let closed = evolve_harmonic_fourier(&psi, t, w, m).unwrap().state;
        centre_dev = centre_dev.max((observables(&closed).unwrap().mean_q - a * (w * t).cos()).abs());
        oracle_state = split_step_evolve(&oracle_state, &v, period / segments as f64, 512, m).unwrap();
        centre_dev = centre_dev.max((observables(&oracle_state).unwrap().mean_q - a * (w * t).cos()).abs());
    }
    let revived = evolve_harmonic_fourier(&psi, period, w, m).unwrap().state;
    let fidelity_closed = compare(&revived, &psi).unwrap().fidelity;
    let fidelity_oracle = compare(&oracle_state, &psi).unwrap().fidelity;
    verdict(
        9,
        centre_dev <= 1e-6 && fidelity_closed >= 1.0 - 1e-6 && fidelity_oracle >= 1.0 - 1e-6,
        format!(
            "centre deviation {centre_dev:.3e}, revival fidelity {fidelity_closed:.12} (closed) {fidelity_oracle:.12} (oracle)"
        ),
    );
}

#[test]
fn criterion_10_massless_transport() {
    let g = Grid1D::symmetric(2048, 60.0).unwrap();
    let (c, t) = (1.5, 12.0);
    let psi = plane_wave_packet(&g, -15.0, 4.0, 0.6, 1.0).unwrap();
    let moved = evolve_free_fourier(&psi, t, &DispersionRelation::Massless { c }).unwrap().state;
    let shifted = plane_wave_packet(&g, -15.0 + c * t, 4.0, 0.6, 1.0).unwrap();
    let fidelity = compare(&moved, &shifted).unwrap().fidelity;
    verdict(10, fidelity >= 1.0 - 1e-8, format!("fidelity {fidelity:.15}"));
}

#[test]
fn criterion_11_inverted_oscillator_splits_packet() {
    let run = chaos_demo(ChaosOptions::new(1.0, 0.5, 3.0, 61)).unwrap();
    let r = &run.report;
    let split_ok = r
        .split_at_bimodal
        .is_some_and(|[left, right]| (left - 0.5).abs() <= 1e-6 && (right - 0.5).abs() <= 1e-6);
    verdict(
        11,
        r.bimodal_at.is_some() && split_ok && r.max_asymmetry <= 1e-8,
        format!(
            "bimodal at {:?}, split {:?}, max parity asymmetry {:.3e}, final left mass {:.12}",
            r.bimodal_at,
            r.split_at_bimodal,
            r.max_asymmetry,
            r.samples.last().map_or(f64::NAN, |s| s.left_mass)
        ),
    );
}

#[test]
fn criterion_12_operator_series_converges_for_harmonic() {
    let (m, w) = (1.0, 1.0);
    let t = 0.1 / w;
    let g = Grid1D::symmetric(256, 12.8).unwrap();
    let psi = make_gaussian(&g, 1.0, 1.0, 0.5, 1.0).unwrap();
    let v = PotentialGrid::from_fn(&g, |q| 0.5 * m * w * w * q * q).unwrap();
    let oracle = split_step_evolve(&psi, &v, t, 4096, m).unwrap();
    let h = HamiltonianSpec::harmonic(m, w, 1.0).unwrap();
    let errors: Vec<f64> = [2, 4, 6]
        .iter()
        .map(|&order| {
            let out = evolve_by_operator_series(&psi, &h, t, order).unwrap();
            compare(&out.state, &oracle).unwrap().l2_distance
        })
        .collect();
    let decreasing = errors.windows(2).all(|e| e[1] < e[0]);
    verdict(
        12,
        decreasing && errors[2] <= 1e-4,
        format!(
            "l2 at orders 2, 4, 6: {:.3e}, {:.3e}, {:.3e}",
            errors[0], errors[1], errors[2]
        ),
    );
}
