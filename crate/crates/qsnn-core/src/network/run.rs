use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{distinct_params, validate, BellAmplitudes, NetworkSpec, RunMode};
use crate::neuron::{apply_neuron, ideal_unitary, neuron_unitary};
use crate::quantum::{measure, project, BellLabel, DenseOperator, StateVector};
use crate::scalar::{Real, C};
use crate::{Error, Result};

/// What is loaded into the four input qubits.
#[derive(Clone, Debug, PartialEq)]
pub enum NetworkInput<T: Real> {
    /// pair a on input qubits 0–1, pair b on 2–3
    Bell(BellAmplitudes<T>, BellAmplitudes<T>),
    /// arbitrary 4-qubit state, in input-qubit order
    State(StateVector<T>),
}

impl<T: Real> NetworkInput<T> {
    pub fn pure(a: BellLabel, b: BellLabel) -> Self {
        NetworkInput::Bell(BellAmplitudes::pure(a), BellAmplitudes::pure(b))
    }

    fn register_state(&self) -> Result<StateVector<T>> {
        match self {
            NetworkInput::Bell(a, b) => Ok(a.state().kron(&b.state())),
            NetworkInput::State(s) => {
                if s.num_qubits() != 4 {
                    return Err(Error::DimensionMismatch { expected: 4, found: s.num_qubits() });
                }
                Ok(s.clone())
            }
        }
    }
}

/// Full register with the inputs loaded and every other qubit in |↓⟩.
pub fn initial_state<T: Real>(spec: &NetworkSpec<T>, input: &NetworkInput<T>) -> Result<StateVector<T>> {
    let inputs = input.register_state()?;
    let n = spec.num_qubits;
    let mut amps = vec![C::zero(); 1 << n];
    for (s, a) in inputs.amplitudes().iter().enumerate() {
        amps[crate::quantum::scatter(s, &spec.input_qubits, n)] = *a;
    }
    StateVector::new(n, amps)
}

/// A validated network with its per-neuron operators precomputed.
#[derive(Clone, Debug)]
pub struct PreparedNetwork<T: Real> {
    spec: NetworkSpec<T>,
    operators: Vec<DenseOperator<T>>,
    step_operator: Vec<usize>,
    tol: T,
}

impl<T: Real> PreparedNetwork<T> {
    pub fn new(spec: NetworkSpec<T>, tol: T) -> Result<Self> {
        validate(&spec).map_err(Error::InvalidNetwork)?;
        let (distinct, step_operator) = distinct_params(&spec);
        let operators = match spec.run_mode {
            RunMode::EmbeddedUnitary => distinct.iter().map(|p| neuron_unitary(p, tol)).collect::<Result<_>>()?,
            RunMode::IdealUnitary => distinct.iter().map(ideal_unitary).collect::<Result<_>>()?,
            RunMode::FullDynamics => Vec::new(),
        };
        Ok(Self { spec, operators, step_operator, tol })
    }

    pub fn spec(&self) -> &NetworkSpec<T> {
        &self.spec
    }

    /// Applies every scheduled neuron in order.
    pub fn run(&self, input: &NetworkInput<T>) -> Result<StateVector<T>> {
        let mut psi = initial_state(&self.spec, input)?;
        for (step, neuron) in self.spec.schedule.iter().enumerate() {
            psi = match self.spec.run_mode {
                RunMode::FullDynamics => apply_neuron(&psi, neuron, self.tol)?,
                _ => psi.apply_local(&self.operators[self.step_operator[step]], &neuron.targets())?,
            };
        }
        Ok(psi)
    }

    /// Probability of finding the output qubit in |↑⟩.
    pub fn output_probability(&self, input: &NetworkInput<T>) -> Result<T> {
        Ok(measure(&self.run(input)?, self.spec.output_qubit)?.p_up)
    }
}

pub fn run<T: Real>(spec: &NetworkSpec<T>, input: &NetworkInput<T>, tol: T) -> Result<StateVector<T>> {
    PreparedNetwork::new(spec.clone(), tol)?.run(input)
}

/// Probability that the network reports "same Bell state" for independently prepared pairs.
pub fn simulated_kernel<T: Real>(
    network: &PreparedNetwork<T>,
    a: &BellAmplitudes<T>,
    b: &BellAmplitudes<T>,
) -> Result<T> {
    network.output_probability(&NetworkInput::Bell(*a, *b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Up,
    Down,
}

/// Post-measurement description of the input register.
#[derive(Clone, Debug, PartialEq)]
pub struct BackAction<T: Real> {
    pub outcome: Outcome,
    pub probability: T,
    /// reduced state of the four input qubits after projection
    pub reduced: DenseOperator<T>,
    /// ⟨branch|ρ|branch⟩ for the normalized branch state (up: Σ a_i b_i |i,i⟩, down:
    /// Σ_{i≠j} a_i b_j |i,j⟩); `None` when the branch vanishes or no Bell input is given
    pub branch_overlap: Option<T>,
    /// weight of ρ on span{|i,i⟩} (up) or span{|i,j⟩, i≠j} (down)
    pub branch_support: T,
}

/// Projects the output qubit onto `outcome` and describes the input register.
/// Fails with [`Error::DegenerateOutcome`] when the outcome has probability below 1e-14.
pub fn back_action<T: Real>(
    final_state: &StateVector<T>,
    spec: &NetworkSpec<T>,
    outcome: Outcome,
    input: Option<(&BellAmplitudes<T>, &BellAmplitudes<T>)>,
) -> Result<BackAction<T>> {
    let (probability, post) = project(final_state, spec.output_qubit, outcome == Outcome::Up)?;
    let reduced = post.reduced_density(&spec.input_qubits)?;
    let pair_basis = |i: BellLabel, j: BellLabel| i.state::<T>().kron(&j.state::<T>());
    let in_branch = |i: BellLabel, j: BellLabel| (i == j) == (outcome == Outcome::Up);
    let mut branch_support = T::zero();
    for i in BellLabel::ALL {
        for j in BellLabel::ALL {
            if in_branch(i, j) {
                branch_support += expectation_in(&reduced, &pair_basis(i, j))?;
            }
        }
    }
    let branch_overlap = match input {
        None => None,
        Some((a, b)) => {
            let mut amps = vec![C::zero(); 16];
            for i in BellLabel::ALL {
                for j in BellLabel::ALL {
                    if in_branch(i, j) {
                        let w = a.get(i) * b.get(j);
                        for (dst, src) in amps.iter_mut().zip(pair_basis(i, j).amplitudes()) {
                            *dst += w * src;
                        }
                    }
                }
            }
            match StateVector::normalized(4, amps) {
                Ok(branch) => Some(expectation_in(&reduced, &branch)?),
                Err(_) => None,
            }
        }
    };
    Ok(BackAction { outcome, probability, reduced, branch_overlap, branch_support })
}

fn expectation_in<T: Real>(rho: &DenseOperator<T>, psi: &StateVector<T>) -> Result<T> {
    let v = rho.apply_vec(psi.amplitudes())?;
    Ok(psi.amplitudes().iter().zip(&v).fold(C::zero(), |acc, (a, b)| acc + a.conj() * b).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{template, NetworkParams, TemplateKind};

    #[test]
    fn inputs_are_loaded_on_input_qubits() {
        let spec = template(TemplateKind::Reduced, &NetworkParams::<f64>::default()).unwrap();
        let psi = initial_state(&spec, &NetworkInput::pure(BellLabel::PhiPlus, BellLabel::PsiMinus)).unwrap();
        let rho = psi.reduced_density(&[4, 5, 6]).unwrap();
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-14);
        let pair_b = psi.reduced_density(&[2, 3]).unwrap();
        let target = BellLabel::PsiMinus.state::<f64>();
        let f = expectation_in(&pair_b, &target).unwrap();
        assert!((f - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ideal_reduced_network_separates_identical_pairs() {
        let mut spec = template(TemplateKind::Reduced, &NetworkParams::<f64>::default()).unwrap();
        spec.run_mode = RunMode::IdealUnitary;
        let net = PreparedNetwork::new(spec, 1e-9).unwrap();
        for a in BellLabel::ALL {
            for b in BellLabel::ALL {
                let p = net.output_probability(&NetworkInput::pure(a, b)).unwrap();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((p - expected).abs() < 1e-12, "{a} {b}: {p}");
            }
        }
    }
}
