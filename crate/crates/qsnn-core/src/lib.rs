//! Spiking quantum neurons as driven three-qubit spin systems.
//!
//! The crate simulates the excitation-parity neuron, the phase neuron and the
//! final-layer detectors, evaluates their average gate fidelity on the protocol
//! subspace, and composes them into Bell-state comparison networks.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for `f32` and
//! `f64`); the aliases at the crate root fix it to `f64`.
//!
//! Units: ħ = 1 and energies are measured in units of the neuron's drive amplitude.
//! Basis: |↓⟩ = |0⟩, |↑⟩ = |1⟩, and qubit 0 is the most significant bit.

pub mod error;
pub mod fidelity;
pub mod network;
pub mod neuron;
pub mod params;
pub mod quantum;
pub mod scalar;

pub use error::{Error, ParamError, Result};
pub use scalar::Real;

pub use quantum::{Axis, BellLabel, DriveForm, Gate, GateMode};

pub type StateVector = quantum::StateVector<f64>;
pub type DenseOperator = quantum::DenseOperator<f64>;
pub type TimeDependentHamiltonian = quantum::TimeDependentHamiltonian<f64>;
pub type ExcNeuronParams = neuron::ExcNeuronParams<f64>;
pub type PhaseNeuronParams = neuron::PhaseNeuronParams<f64>;
pub type FinalLayerParams = neuron::FinalLayerParams<f64>;
pub type NeuronParams = neuron::NeuronParams<f64>;
pub type NeuronSpec = neuron::NeuronSpec<f64>;
pub type Trajectory = neuron::Trajectory<f64>;
pub type FidelityReport = fidelity::FidelityReport<f64>;
pub type NetworkSpec = network::NetworkSpec<f64>;
pub type BellAmplitudes = network::BellAmplitudes<f64>;

/// Default integration tolerance (global 2-norm error).
pub const DEFAULT_TOL: f64 = 1e-9;
