use serde::{Deserialize, Serialize};

use super::integrator::evolve;
use super::{check_targets, Axis, DenseOperator, StateVector, TimeDependentHamiltonian};
use crate::scalar::{cis, cr, Real};
use crate::Result;

/// Single-qubit correction gates. Matrices are in the (↓, ↑) basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "gate", content = "angle")]
pub enum Gate<T> {
    /// (σ^x + σ^z)/√2
    Hadamard,
    /// diag(1, e^{iφ})
    Phase(T),
    NotX,
    /// exp(−iθσ^z/2)
    ZRotation(T),
}

/// How a gate is realized: as an exact matrix, or by evolving the generating
/// single-qubit Hamiltonian with field strength `strength` (equal up to global phase).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum GateMode<T> {
    #[default]
    Exact,
    Dynamics { strength: T, tol: T },
}

impl<T: Real> Gate<T> {
    pub fn matrix(&self) -> DenseOperator<T> {
        match *self {
            Gate::Hadamard => DenseOperator::pauli(Axis::X)
                .add(&DenseOperator::pauli(Axis::Z))
                .expect("2x2")
                .scale(cr(T::one() / T::of(2.0).sqrt())),
            Gate::Phase(phi) => {
                let mut m = DenseOperator::identity(2);
                m.set(1, 1, cis(phi));
                m
            }
            Gate::NotX => DenseOperator::pauli(Axis::X),
            Gate::ZRotation(theta) => {
                let mut m = DenseOperator::zeros(2);
                let h = theta * T::of(0.5);
                m.set(0, 0, cis(h));
                m.set(1, 1, cis(-h));
                m
            }
        }
    }

    /// Generating Hamiltonian on `target` and its duration at field strength `b`.
    ///
    /// Hadamard: √2·b(σ^x+σ^z) for π/(4b); phase(φ): ∓b·σ^z for |φ|/(2b);
    /// not: b·σ^x for π/(2b); z-rotation(θ): ±b·σ^z for |θ|/(2b).
    pub fn generator(&self, target: usize, num_qubits: usize, b: T) -> Result<(TimeDependentHamiltonian<T>, T)> {
        let mut h = TimeDependentHamiltonian::new(num_qubits);
        let pi = T::PI();
        let two = T::of(2.0);
        let duration = match *self {
            Gate::Hadamard => {
                let s = two.sqrt() * b;
                h.add_static(s, &[(target, Axis::X)])?;
                h.add_static(s, &[(target, Axis::Z)])?;
                pi / (T::of(4.0) * b)
            }
            Gate::Phase(phi) => {
                h.add_static(-b * phi.signum(), &[(target, Axis::Z)])?;
                phi.abs() / (two * b)
            }
            Gate::NotX => {
                h.add_static(b, &[(target, Axis::X)])?;
                pi / (two * b)
            }
            Gate::ZRotation(theta) => {
                h.add_static(b * theta.signum(), &[(target, Axis::Z)])?;
                theta.abs() / (two * b)
            }
        };
        Ok((h, duration))
    }
}

pub fn apply_gate<T: Real>(state: &StateVector<T>, gate: Gate<T>, target: usize) -> Result<StateVector<T>> {
    apply_gate_with(state, gate, target, GateMode::Exact)
}

pub fn apply_gate_with<T: Real>(
    state: &StateVector<T>,
    gate: Gate<T>,
    target: usize,
    mode: GateMode<T>,
) -> Result<StateVector<T>> {
    check_targets(&[target], state.num_qubits())?;
    match mode {
        GateMode::Exact => state.apply_local(&gate.matrix(), &[target]),
        GateMode::Dynamics { strength, tol } => {
            let (h, tau) = gate.generator(target, state.num_qubits(), strength)?;
            evolve(state, &h, tau, tol)
        }
    }
}
