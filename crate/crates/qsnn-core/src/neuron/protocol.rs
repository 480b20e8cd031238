use num_traits::{One, Zero};

use super::{
    neuron_hamiltonian, parity_sign, Corrections, DriveMode, ExcNeuronParams, FinalLayerParams, FinalVariant,
    NeuronKind, NeuronParams, NeuronSpec, PhaseNeuronParams,
};
use crate::fidelity::{average_fidelity, FidelityReport};
use crate::quantum::{
    apply_gate_with, evolve, propagator, tensor_embed, BellLabel, DenseOperator, Gate, GateMode, StateVector,
};
use crate::scalar::{cis, cr, i_unit, Real, C};
use crate::Result;

/// Correction gates on the output qubit. Excitation and final layers: a phase gate
/// cancelling the flip phase. Phase neuron: Hadamard, evolve, Hadamard, then i(−1)^m on |↑⟩.
pub fn corrections_for<T: Real>(params: &NeuronParams<T>) -> Result<Corrections<T>> {
    params.validate()?;
    Ok(match params {
        NeuronParams::Excitation(p) => Corrections { before: vec![], after: vec![Gate::Phase(p.correction_phase())] },
        NeuronParams::Phase(p) => Corrections {
            before: vec![Gate::Hadamard],
            after: vec![Gate::Hadamard, Gate::Phase(p.correction_phase())],
        },
        NeuronParams::Final(p) => {
            Corrections { before: vec![], after: vec![Gate::Phase(final_layer_phases(p)?.correction)] }
        }
    })
}

/// Propagator of the evolution step alone on local qubits (a, b, out).
pub fn bare_propagator<T: Real>(params: &NeuronParams<T>, tol: T) -> Result<DenseOperator<T>> {
    let h = neuron_hamiltonian(params, 3, [0, 1, 2])?;
    propagator(&h, params.tau(), tol)
}

/// Full protocol operator (corrections included) on local qubits (a, b, out).
pub fn neuron_unitary<T: Real>(params: &NeuronParams<T>, tol: T) -> Result<DenseOperator<T>> {
    let c = corrections_for(params)?;
    let mut u = bare_propagator(params, tol)?;
    for g in c.before.iter().rev() {
        u = u.matmul(&output_gate(g)?)?;
    }
    for g in &c.after {
        u = output_gate(g)?.matmul(&u)?;
    }
    Ok(u)
}

fn output_gate<T: Real>(g: &Gate<T>) -> Result<DenseOperator<T>> {
    tensor_embed(&g.matrix(), &[2], 3)
}

/// Ordered 6-state protocol subspace on local qubits (a, b, out).
pub fn protocol_subspace<T: Real>(kind: NeuronKind) -> Vec<StateVector<T>> {
    use BellLabel::*;
    let bell = |label: BellLabel, up: bool| {
        label.state::<T>().kron(&StateVector::from_bits(&[up]).expect("one qubit"))
    };
    let comp = |a, b, o| StateVector::from_bits(&[a, b, o]).expect("three qubits");
    match kind {
        NeuronKind::Excitation => vec![
            bell(PsiPlus, false),
            bell(PsiMinus, false),
            bell(PhiPlus, false),
            bell(PhiMinus, false),
            bell(PhiPlus, true),
            bell(PhiMinus, true),
        ],
        NeuronKind::Phase => vec![
            bell(PhiPlus, false),
            bell(PsiPlus, false),
            bell(PhiMinus, false),
            bell(PsiMinus, false),
            bell(PhiMinus, true),
            bell(PsiMinus, true),
        ],
        NeuronKind::FinalUpUp | NeuronKind::FinalDownDown => vec![
            comp(false, false, false),
            comp(false, true, false),
            comp(true, false, false),
            comp(true, true, false),
            comp(true, true, true),
            comp(false, false, true),
        ],
    }
}

/// Target operation on local qubits (a, b, out), defined on all eight basis states.
pub fn ideal_unitary<T: Real>(params: &NeuronParams<T>) -> Result<DenseOperator<T>> {
    params.validate()?;
    match params {
        NeuronParams::Excitation(p) => Ok(exc_ideal(p)),
        NeuronParams::Phase(p) => Ok(phase_ideal(p)),
        NeuronParams::Final(p) => final_ideal(p),
    }
}

/// Average fidelity of the full protocol against its target on the protocol subspace.
pub fn evaluate_neuron<T: Real>(params: &NeuronParams<T>, tol: T) -> Result<FidelityReport<T>> {
    let actual = neuron_unitary(params, tol)?;
    let ideal = ideal_unitary(params)?;
    average_fidelity(&actual, &ideal, &protocol_subspace(params.kind()))
}

pub fn apply_neuron<T: Real>(state: &StateVector<T>, spec: &NeuronSpec<T>, tol: T) -> Result<StateVector<T>> {
    apply_neuron_with(state, spec, tol, GateMode::Exact)
}

/// Correction gates, evolution for τ with only this neuron's couplings active, then the
/// trailing corrections. Qubits outside its targets are untouched.
pub fn apply_neuron_with<T: Real>(
    state: &StateVector<T>,
    spec: &NeuronSpec<T>,
    tol: T,
    gate_mode: GateMode<T>,
) -> Result<StateVector<T>> {
    spec.validate()?;
    let h = neuron_hamiltonian(&spec.params, state.num_qubits(), spec.targets())?;
    let mut psi = state.clone();
    for g in &spec.corrections.before {
        psi = apply_gate_with(&psi, *g, spec.output, gate_mode)?;
    }
    psi = evolve(&psi, &h, spec.params.tau(), tol)?;
    for g in &spec.corrections.after {
        psi = apply_gate_with(&psi, *g, spec.output, gate_mode)?;
    }
    Ok(psi)
}

/// Σ |out⟩⟨in| over an orthonormal input basis.
fn from_mapping<T: Real>(pairs: &[(StateVector<T>, StateVector<T>)]) -> DenseOperator<T> {
    let mut u = DenseOperator::zeros(8);
    for (input, output) in pairs {
        u = u.add(&DenseOperator::outer(output, input).expect("same size")).expect("same size");
    }
    u
}

fn scaled<T: Real>(s: &StateVector<T>, f: C<T>) -> StateVector<T> {
    let amps = s.amplitudes().iter().map(|a| a * f).collect();
    StateVector::from_raw(s.num_qubits(), amps)
}

fn bell_out<T: Real>(label: BellLabel, up: bool) -> StateVector<T> {
    label.state::<T>().kron(&StateVector::from_bits(&[up]).expect("one qubit"))
}

/// Ψ±|↓⟩ unchanged, Φ±|↓⟩ → Φ±|↑⟩, Φ±|↑⟩ → r·Φ±|↓⟩ with r = −i(−1)^{k+l}e^{−iγJτ};
/// Ψ±|↑⟩ (outside the protocol) only picks up the output correction phase.
fn exc_ideal<T: Real>(p: &ExcNeuronParams<T>) -> DenseOperator<T> {
    let r = p.flip_back_factor();
    let corr = cis(p.correction_phase());
    let mut pairs = Vec::new();
    for label in BellLabel::ALL {
        let down = bell_out::<T>(label, false);
        let up = bell_out::<T>(label, true);
        if label.is_phi() {
            pairs.push((down.clone(), up.clone()));
            pairs.push((up, scaled(&down, r)));
        } else {
            pairs.push((down.clone(), down));
            pairs.push((up.clone(), scaled(&up, corr)));
        }
    }
    from_mapping(&pairs)
}

/// plus|·⟩ → plus|·⟩ with i(−1)^m on |↑⟩; minus|↓⟩ → minus|↑⟩; minus|↑⟩ → i(−1)^{m+1}·minus|↓⟩.
fn phase_ideal<T: Real>(p: &PhaseNeuronParams<T>) -> DenseOperator<T> {
    let back = p.flip_back_factor();
    let plus_up = cis(p.correction_phase());
    let mut pairs = Vec::new();
    for label in BellLabel::ALL {
        let down = bell_out::<T>(label, false);
        let up = bell_out::<T>(label, true);
        if label.is_minus() {
            pairs.push((down.clone(), up.clone()));
            pairs.push((up, scaled(&down, back)));
        } else {
            pairs.push((down.clone(), down));
            pairs.push((up.clone(), scaled(&up, plus_up)));
        }
    }
    from_mapping(&pairs)
}

pub(crate) struct FinalPhases<T: Real> {
    /// amplitude of basis state (a, b, o) → its image, before the output correction
    pub amplitude: [C<T>; 8],
    /// image index of each basis state
    pub image: [usize; 8],
    pub correction: T,
}

/// Phases of the resonant π-pulse picture relative to the undriven even reference state
/// (↓↓↓ for up-up, ↑↑↓ for down-down). Even states are eigenstates with energy
/// γJ/2 + β z_b z_o + (Ω/2) z_o; the odd block contributes (−1)^l e^{iγJτ/2} e^{−i(Ω/2) z_o τ}.
pub(crate) fn final_layer_phases<T: Real>(p: &FinalLayerParams<T>) -> Result<FinalPhases<T>> {
    let beta = p.beta()?;
    let j = p.j()?;
    let tau = p.tau();
    let omega = match p.drive_mode {
        DriveMode::Rotating => T::zero(),
        DriveMode::LocalField => p.omega,
    };
    let half = T::of(0.5);
    let z = |bit: usize| if bit == 1 { T::one() } else { -T::one() };
    let energy = |b: usize, o: usize| p.gamma * j * half + beta * z(b) * z(o) + omega * half * z(o);
    let driven_input = match p.variant {
        FinalVariant::DetectUpUp => 1,
        FinalVariant::DetectDownDown => 0,
    };
    let reference = cis(-energy(1 - driven_input, 0) * tau);
    let odd = |o: usize| {
        cr(parity_sign::<T>(T::of(p.l as f64))) * cis(p.gamma * j * half * tau - omega * half * z(o) * tau)
    };
    let mut amplitude = [C::zero(); 8];
    let mut image = [0usize; 8];
    for idx in 0..8 {
        let (a, b, o) = (idx >> 2, (idx >> 1) & 1, idx & 1);
        let (img, amp) = if a != b {
            (idx, odd(o))
        } else if a == driven_input {
            let flipped = 1 - o;
            (idx ^ 1, -i_unit::<T>() * cis(-energy(b, flipped) * tau))
        } else {
            (idx, cis(-energy(b, o) * tau))
        };
        image[idx] = img;
        amplitude[idx] = amp / reference;
    }
    let forward = (driven_input << 2) | (driven_input << 1);
    let correction = -amplitude[forward].arg();
    Ok(FinalPhases { amplitude, image, correction })
}

fn final_ideal<T: Real>(p: &FinalLayerParams<T>) -> Result<DenseOperator<T>> {
    let ph = final_layer_phases(p)?;
    let corr = cis(ph.correction);
    let mut u = DenseOperator::zeros(8);
    for idx in 0..8 {
        let img = ph.image[idx];
        let f = if img & 1 == 1 { corr } else { C::one() };
        u.set(img, idx, ph.amplitude[idx] * f);
    }
    Ok(u)
}
