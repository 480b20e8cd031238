//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod common;

use std::time::Instant;

use common::{distance, oracle_hamiltonian, oracle_propagate, oracle_steps, random_state};
use qsnn_core::fidelity::{average_fidelity, mc_average_fidelity};
use qsnn_core::network::{
    back_action, bell_kernel, template, NetworkInput, NetworkParams, Outcome, PreparedNetwork, TemplateKind,
};
use qsnn_core::neuron::{
    apply_neuron, evaluate_neuron, ideal_unitary, neuron_hamiltonian, protocol_subspace, spectrum_report,
    ExchangeScale, FinalVariant, NeuronKind,
};
use qsnn_core::params::tune;
use qsnn_core::quantum::{evolve, measure};
use qsnn_core::scalar::C;
use qsnn_core::{
    BellAmplitudes, BellLabel, DenseOperator, ExcNeuronParams, FinalLayerParams, NeuronParams, NeuronSpec,
    PhaseNeuronParams, StateVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

struct Ledger {
    lines: Vec<(usize, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: usize, pass: bool, detail: String) {
        println!("[{}] criterion {id:>2}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((id, pass, detail));
    }
}

fn exc() -> NeuronParams {
    ExcNeuronParams::new(8.0, 17.0).into()
}

fn phase(m: f64, n: f64) -> NeuronParams {
    PhaseNeuronParams::new(m, n).into()
}

fn criterion_1_2(ledger: &mut Ledger) {
    let start = Instant::now();
    let r = evaluate_neuron(&exc(), TOL).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ledger.record(
        1,
        (r.f_avg - 0.9998).abs() <= 0.0005 && secs < 30.0,
        format!("excitation (8, 17) fidelity {:.6} (target 0.9998 ± 0.0005), {secs:.3} s (< 30 s)", r.f_avg),
    );
    ledger.record(2, r.leakage <= 5e-4, format!("excitation leakage {:.2e} (≤ 5e-4)", r.leakage));
}

fn criterion_3(ledger: &mut Ledger) {
    let a = evaluate_neuron(&phase(3.0, 82.0), TOL).unwrap().f_avg;
    let b = evaluate_neuron(&phase(5.0, 80.0), TOL).unwrap().f_avg;
    ledger.record(
        3,
        (a - 0.9907).abs() <= 0.003 && (b - 0.9638).abs() <= 0.005,
        format!("phase (3, 82) {a:.5} (0.9907 ± 0.003), (5, 80) {b:.5} (0.9638 ± 0.005)"),
    );
}

fn criterion_4(ledger: &mut Ledger) {
    let start = Instant::now();
    let a = tune(&phase(3.0, 82.0), 300, 0, TOL).unwrap();
    let b = tune(&phase(5.0, 80.0), 300, 0, TOL).unwrap();
    let secs = start.elapsed().as_secs_f64();
    ledger.record(
        4,
        a.final_fidelity >= 0.9955
            && b.final_fidelity >= 0.9905
            && a.evaluations <= 300
            && b.evaluations <= 300
            && secs < 600.0,
        format!(
            "tuned from (3, 82): {:.5} in {} evaluations (≥ 0.9955); from (5, 80): {:.5} in {} (≥ 0.9905); {secs:.1} s",
            a.final_fidelity, a.evaluations, b.final_fidelity, b.evaluations
        ),
    );
}

fn criterion_5(ledger: &mut Ledger) {
    let e = evaluate_neuron(&exc(), TOL).unwrap();
    let p = evaluate_neuron(&phase(3.0, 82.0), TOL).unwrap();
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let (me, mp) = (min(&e.per_state), min(&p.per_state));
    ledger.record(
        5,
        me >= 0.999 && mp >= 0.985,
        format!("worst per-state fidelity: excitation {me:.5} (≥ 0.999), phase {mp:.5} (≥ 0.985)"),
    );
}

fn criterion_6(ledger: &mut Ledger) {
    let sets: Vec<NeuronParams> = vec![
        exc(),
        ExcNeuronParams::new(20.0, 29.0).into(),
        ExcNeuronParams { j_sign: -1, ..ExcNeuronParams::new(8.0, 17.0) }.into(),
        ExcNeuronParams::new(12.0, 37.0).into(),
        phase(3.0, 82.0),
        PhaseNeuronParams::new(3.0, 82.0).with_exchange(ExchangeScale::Standard).into(),
        phase(5.0, 80.0),
    ];
    let worst = sets
        .iter()
        .map(|p| spectrum_report(p).unwrap().max_exact_deviation)
        .fold(0.0, f64::max);
    ledger.record(6, worst < 1e-10, format!("largest closed-form eigenvalue deviation {worst:.2e} (< 1e-10)"));
}

fn truth_table(kind: TemplateKind) -> (f64, f64) {
    let net = PreparedNetwork::new(template(kind, &NetworkParams::default()).unwrap(), TOL).unwrap();
    let (mut diag, mut off) = (f64::INFINITY, 0.0f64);
    for a in BellLabel::ALL {
        for b in BellLabel::ALL {
            let p = net.output_probability(&NetworkInput::pure(a, b)).unwrap();
            if a == b {
                diag = diag.min(p);
            } else {
                off = off.max(p);
            }
        }
    }
    (diag, off)
}

fn criterion_7(ledger: &mut Ledger) {
    let start = Instant::now();
    let (rd, ro) = truth_table(TemplateKind::Reduced);
    let (fd, fo) = truth_table(TemplateKind::Full);
    let secs = start.elapsed().as_secs_f64();
    ledger.record(
        7,
        rd >= 0.97 && ro <= 0.03 && fd >= 0.95 && fo <= 0.05 && secs < 300.0,
        format!(
            "reduced diagonal ≥ {rd:.4}, off-diagonal ≤ {ro:.4}; full {fd:.4} / {fo:.4}; {secs:.1} s"
        ),
    );
}

fn criterion_8(ledger: &mut Ledger) {
    let spec = template(TemplateKind::Reduced, &NetworkParams::default()).unwrap();
    let net = PreparedNetwork::new(spec.clone(), TOL).unwrap();
    let a = BellAmplitudes::superposition(&[BellLabel::PsiPlus, BellLabel::PhiMinus]).unwrap();
    let psi = net.run(&NetworkInput::Bell(a, a)).unwrap();
    let p_up = measure(&psi, spec.output_qubit).unwrap().p_up;
    let overlaps: Vec<f64> = [Outcome::Up, Outcome::Down]
        .iter()
        .map(|&o| back_action(&psi, &spec, o, Some((&a, &a))).unwrap().branch_overlap.unwrap_or(0.0))
        .collect();
    ledger.record(
        8,
        (p_up - 0.5).abs() <= 0.03 && overlaps.iter().all(|&o| o >= 0.97),
        format!(
            "½(Ψ⁺+Φ⁻)⊗(Ψ⁺+Φ⁻) on the reduced network: p_up {p_up:.4} (0.5 ± 0.03), branch overlaps up {:.4} / down {:.4} (≥ 0.97)",
            overlaps[0], overlaps[1]
        ),
    );
}

fn criterion_9(ledger: &mut Ledger) {
    let net = PreparedNetwork::new(template(TemplateKind::Reduced, &NetworkParams::default()).unwrap(), TOL).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut exact_dev, mut sim_dev) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (a, b) = (BellAmplitudes::random(&mut rng), BellAmplitudes::random(&mut rng));
        let k = bell_kernel(&a, &b).unwrap();
        // Σ_i |⟨i|a⟩|²|⟨i|b⟩|² from the two-qubit states themselves
        let direct: f64 = BellLabel::ALL
            .iter()
            .map(|l| {
                let s = l.state::<f64>();
                s.inner(&a.state()).unwrap().norm_sqr() * s.inner(&b.state()).unwrap().norm_sqr()
            })
            .sum();
        exact_dev = exact_dev.max((k - direct).abs());
        let sim = net.output_probability(&NetworkInput::Bell(a, b)).unwrap();
        sim_dev = sim_dev.max((sim - k).abs());
    }
    ledger.record(
        9,
        exact_dev < 1e-14 && sim_dev <= 0.03,
        format!("100 random pairs: closed form deviation {exact_dev:.1e}, simulated kernel deviation {sim_dev:.4} (≤ 0.03)"),
    );
}

fn perturbed(ideal: &DenseOperator, eps: f64, seed: u64) -> DenseOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = DenseOperator::zeros(8);
    for r in 0..8 {
        for c in r..8 {
            let v = if r == c {
                C::new(rng.random_range(-1.0..1.0), 0.0)
            } else {
                C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            };
            h.set(r, c, v);
            h.set(c, r, v.conj());
        }
    }
    ideal.matmul(&h.evolution(eps)).unwrap()
}

fn criterion_10(ledger: &mut Ledger) {
    let sets: Vec<NeuronParams> = vec![
        exc(),
        phase(3.0, 82.0),
        FinalLayerParams::new(FinalVariant::DetectUpUp, 17, 5, 0).into(),
        FinalLayerParams::new(FinalVariant::DetectDownDown, 17, 5, 0).with_local_field(50.0).into(),
    ];
    let (mut drift, mut oracle_err) = (0.0f64, 0.0f64);
    for (i, p) in sets.iter().enumerate() {
        let h = neuron_hamiltonian(p, 3, [0, 1, 2]).unwrap();
        let oracle = oracle_hamiltonian(p);
        let psi = random_state(3, 100 + i as u64);
        let got = evolve(&psi, &h, p.tau(), TOL).unwrap();
        drift = drift.max((got.norm() - 1.0).abs());
        let want = oracle_propagate(&oracle, psi.amplitudes(), oracle.tau, oracle_steps(oracle.tau));
        oracle_err = oracle_err.max(distance(got.amplitudes(), &want));
    }
    let ideal = ideal_unitary(&exc()).unwrap();
    let subspace = protocol_subspace(NeuronKind::Excitation);
    let mut worst_sigma = 0.0f64;
    for case in 0..20u64 {
        let u = perturbed(&ideal, 0.05 + 0.02 * case as f64, 500 + case);
        let closed = average_fidelity(&u, &ideal, &subspace).unwrap().f_avg;
        let mc = mc_average_fidelity(&u, &ideal, &subspace, 20_000, case).unwrap();
        worst_sigma = worst_sigma.max((mc.mean - closed).abs() / mc.std_error);
    }
    ledger.record(
        10,
        drift < 1e-9 && oracle_err < 1e-7 && worst_sigma < 3.0,
        format!(
            "norm drift {drift:.1e} (< 1e-9), oracle deviation {oracle_err:.1e} (< 1e-7), Monte-Carlo worst {worst_sigma:.2}σ on 20 cases (< 3σ)"
        ),
    );
}

fn criterion_11(ledger: &mut Ledger) {
    let mut worst = 1.0f64;
    for variant in [FinalVariant::DetectUpUp, FinalVariant::DetectDownDown] {
        let rotating = NeuronSpec::local(FinalLayerParams::new(variant, 17, 5, 0)).unwrap();
        let local = NeuronSpec::local(FinalLayerParams::new(variant, 17, 5, 0).with_local_field(50.0)).unwrap();
        for bits in [[false, false], [false, true], [true, false], [true, true]] {
            let input = StateVector::from_bits(&[bits[0], bits[1], false]).unwrap();
            let a = apply_neuron(&input, &rotating, TOL).unwrap();
            let b = apply_neuron(&input, &local, TOL).unwrap();
            worst = worst.min(a.fidelity(&b).unwrap());
        }
    }
    ledger.record(
        11,
        worst >= 0.99,
        format!("rotating vs local field (Ω = 50A), both detectors, four inputs: worst state fidelity {worst:.5} (≥ 0.99)"),
    );
}

#[test]
fn acceptance_criteria() {
    let mut ledger = Ledger { lines: Vec::new() };
    criterion_1_2(&mut ledger);
    criterion_3(&mut ledger);
    criterion_4(&mut ledger);
    criterion_5(&mut ledger);
    criterion_6(&mut ledger);
    criterion_7(&mut ledger);
    criterion_8(&mut ledger);
    criterion_9(&mut ledger);
    criterion_10(&mut ledger);
    criterion_11(&mut ledger);
    let failed: Vec<usize> = ledger.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    println!("{} of {} criteria passed", ledger.lines.len() - failed.len(), ledger.lines.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
