mod common;

use common::{distance, oracle_hamiltonian, oracle_propagate, oracle_steps, random_state};
use qsnn_core::neuron::{neuron_hamiltonian, FinalLayerParams, FinalVariant};
use qsnn_core::quantum::integrator::{evolve_fixed_step, evolve_piecewise_exponential};
use qsnn_core::quantum::{evolve, propagator};
use qsnn_core::{ExcNeuronParams, NeuronParams, PhaseNeuronParams};

fn cases() -> Vec<(&'static str, NeuronParams)> {
    vec![
        ("excitation 8/17", ExcNeuronParams::new(8.0, 17.0).into()),
        ("phase 3/82", PhaseNeuronParams::new(3.0, 82.0).into()),
        ("final upup", FinalLayerParams::new(FinalVariant::DetectUpUp, 17, 5, 0).into()),
        ("final downdown local field", FinalLayerParams::new(FinalVariant::DetectDownDown, 17, 5, 0).with_local_field(50.0).into()),
    ]
}

#[test]
fn hamiltonian_matches_kronecker_construction() {
    for (name, params) in cases() {
        let h = neuron_hamiltonian(&params, 3, [0, 1, 2]).unwrap();
        let oracle = oracle_hamiltonian(&params);
        for i in 0..100 {
            let t = oracle.tau * i as f64 / 99.0;
            let lib = h.matrix_at(t);
            let brute = oracle.at(t);
            let dev = lib.entries().iter().zip(&brute.e).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(dev < 1e-12, "{name} at t = {t}: {dev:e}");
            assert!(lib.hermiticity_error() < 1e-12);
        }
    }
}

#[test]
fn adaptive_integrator_matches_oracle() {
    for (name, params) in cases() {
        let h = neuron_hamiltonian(&params, 3, [0, 1, 2]).unwrap();
        let oracle = oracle_hamiltonian(&params);
        for seed in 0..2 {
            let psi = random_state(3, seed);
            let got = evolve(&psi, &h, oracle.tau, 1e-9).unwrap();
            let want = oracle_propagate(&oracle, psi.amplitudes(), oracle.tau, oracle_steps(oracle.tau));
            let err = distance(got.amplitudes(), &want);
            assert!(err < 1e-7, "{name}, seed {seed}: {err:e}");
            assert!((got.norm() - 1.0).abs() < 1e-9, "{name}: norm drift {:e}", got.norm() - 1.0);
        }
    }
}

#[test]
fn piecewise_exponential_fallback_matches_oracle() {
    let params: NeuronParams = ExcNeuronParams::new(8.0, 17.0).into();
    let h = neuron_hamiltonian(&params, 3, [0, 1, 2]).unwrap();
    let oracle = oracle_hamiltonian(&params);
    let psi = random_state(3, 11);
    let want = oracle_propagate(&oracle, psi.amplitudes(), oracle.tau, oracle_steps(oracle.tau));
    let got = evolve_piecewise_exponential(&psi, &h, 0.0, oracle.tau, 20_000).unwrap();
    assert!(distance(got.amplitudes(), &want) < 1e-5);
}

#[test]
fn fixed_step_convergence_order() {
    // eighth-order tableau: halving the step should shrink the error by about 2^8
    for (name, params) in cases().into_iter().take(2) {
        let h = neuron_hamiltonian(&params, 3, [0, 1, 2]).unwrap();
        let oracle = oracle_hamiltonian(&params);
        let psi = random_state(3, 5);
        let want = oracle_propagate(&oracle, psi.amplitudes(), oracle.tau, oracle_steps(oracle.tau));
        let base = match params {
            NeuronParams::Phase(_) => 320,
            _ => 40,
        };
        let errs: Vec<f64> = [base, 2 * base, 4 * base]
            .iter()
            .map(|&n| distance(evolve_fixed_step(&psi, &h, 0.0, oracle.tau, n).unwrap().amplitudes(), &want))
            .collect();
        let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
        println!("{name}: errors {errs:?}, observed orders {orders:.2?}");
        assert!(errs[2] > 1e-12, "{name}: finest error {:e} is at the oracle floor", errs[2]);
        for o in orders {
            assert!(o >= 7.5, "{name}: observed order {o:.2}");
        }
    }
}

#[test]
fn propagator_columns_are_evolved_basis_states() {
    let params: NeuronParams = FinalLayerParams::new(FinalVariant::DetectUpUp, 17, 5, 0).into();
    let h = neuron_hamiltonian(&params, 3, [0, 1, 2]).unwrap();
    let tau = params.tau();
    let u = propagator(&h, tau, 1e-10).unwrap();
    assert!(u.unitarity_error() < 1e-8);
    for col in [0, 3, 6] {
        let e = qsnn_core::StateVector::basis(3, col).unwrap();
        let evolved = evolve(&e, &h, tau, 1e-10).unwrap();
        assert!(distance(&u.column(col), evolved.amplitudes()) < 1e-8);
    }
}
