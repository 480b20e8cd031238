//! State vectors, operators, Hamiltonians and their time evolution.

mod bell;
mod dop853;
pub mod eigen;
mod gates;
mod hamiltonian;
pub mod integrator;
mod measure;
mod operator;
mod pauli;
mod state;

pub use bell::BellLabel;
pub use gates::{apply_gate, apply_gate_with, Gate, GateMode};
pub use hamiltonian::{DriveForm, DriveTerm, StaticTerm, TimeDependentHamiltonian};
pub use integrator::{evolve, propagator, IntegratorOptions};
pub use measure::{expectation, measure, project, Measurement, DEGENERATE_PROBABILITY};
pub use operator::{tensor_embed, DenseOperator};
pub use pauli::Axis;
pub use state::StateVector;

pub(crate) use hamiltonian::CompiledHamiltonian;
pub(crate) use state::scatter;

/// Bit position of `qubit` inside a basis index; qubit 0 is the most significant bit.
#[inline]
pub(crate) fn bit_position(num_qubits: usize, qubit: usize) -> usize {
    num_qubits - 1 - qubit
}

pub(crate) fn check_targets(targets: &[usize], num_qubits: usize) -> crate::Result<()> {
    for (i, &q) in targets.iter().enumerate() {
        if q >= num_qubits {
            return Err(crate::Error::QubitOutOfBounds { qubit: q, num_qubits });
        }
        if targets[..i].contains(&q) {
            return Err(crate::Error::DuplicateTarget(q));
        }
    }
    Ok(())
}
