//! The excitation-parity neuron, the phase neuron and the final-layer detectors:
//! Hamiltonians, full protocols with correction gates, ideal target operations,
//! trajectories and static spectra.

mod build;
mod params;
mod protocol;
mod spectrum;
mod trajectory;

use serde::{Deserialize, Serialize};

pub use build::{
    build_exc_hamiltonian, build_final_hamiltonian, build_phase_hamiltonian, neuron_hamiltonian,
};
pub use params::{
    DriveMode, ExcNeuronParams, ExchangeScale, FinalLayerParams, FinalVariant, HierarchyFloors, ParamMode,
    PhaseNeuronParams,
};
pub use protocol::{
    apply_neuron, apply_neuron_with, bare_propagator, corrections_for, evaluate_neuron, ideal_unitary,
    neuron_unitary, protocol_subspace,
};
pub use spectrum::{spectrum_report, SpectrumEntry, SpectrumReport};
pub use trajectory::{record_trajectory, Trajectory, DEFAULT_SAMPLES};

pub(crate) use params::parity_sign;

use crate::quantum::Gate;
use crate::scalar::Real;
use crate::{Error, ParamError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NeuronKind {
    #[serde(rename = "excitation")]
    Excitation,
    #[serde(rename = "phase")]
    Phase,
    #[serde(rename = "final_upup")]
    FinalUpUp,
    #[serde(rename = "final_downdown")]
    FinalDownDown,
}

impl NeuronKind {
    pub fn slug(self) -> &'static str {
        match self {
            NeuronKind::Excitation => "excitation",
            NeuronKind::Phase => "phase",
            NeuronKind::FinalUpUp => "final_upup",
            NeuronKind::FinalDownDown => "final_downdown",
        }
    }
}

impl std::fmt::Display for NeuronKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound(deserialize = "T: Real + Deserialize<'de>"))]
pub enum NeuronParams<T> {
    Excitation(ExcNeuronParams<T>),
    Phase(PhaseNeuronParams<T>),
    Final(FinalLayerParams<T>),
}

impl<T: Real> NeuronParams<T> {
    pub fn kind(&self) -> NeuronKind {
        match self {
            NeuronParams::Excitation(_) => NeuronKind::Excitation,
            NeuronParams::Phase(_) => NeuronKind::Phase,
            NeuronParams::Final(p) => match p.variant {
                FinalVariant::DetectUpUp => NeuronKind::FinalUpUp,
                FinalVariant::DetectDownDown => NeuronKind::FinalDownDown,
            },
        }
    }

    pub fn validate(&self) -> std::result::Result<(), ParamError> {
        match self {
            NeuronParams::Excitation(p) => p.validate(),
            NeuronParams::Phase(p) => p.validate(),
            NeuronParams::Final(p) => p.validate(),
        }
    }

    /// Duration of the evolution step.
    pub fn tau(&self) -> T {
        match self {
            NeuronParams::Excitation(p) => p.tau(),
            NeuronParams::Phase(p) => p.tau(),
            NeuronParams::Final(p) => p.tau(),
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        match self {
            NeuronParams::Phase(p) => p.warnings(),
            _ => Vec::new(),
        }
    }
}

impl<T: Real> From<ExcNeuronParams<T>> for NeuronParams<T> {
    fn from(p: ExcNeuronParams<T>) -> Self {
        NeuronParams::Excitation(p)
    }
}

impl<T: Real> From<PhaseNeuronParams<T>> for NeuronParams<T> {
    fn from(p: PhaseNeuronParams<T>) -> Self {
        NeuronParams::Phase(p)
    }
}

impl<T: Real> From<FinalLayerParams<T>> for NeuronParams<T> {
    fn from(p: FinalLayerParams<T>) -> Self {
        NeuronParams::Final(p)
    }
}

/// Single-qubit gates on the output qubit around the evolution step.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Corrections<T> {
    pub before: Vec<Gate<T>>,
    pub after: Vec<Gate<T>>,
}

/// A neuron placed on a register: inputs (a, b) and output o.
#[derive(Clone, Debug, PartialEq)]
pub struct NeuronSpec<T> {
    pub params: NeuronParams<T>,
    pub inputs: [usize; 2],
    pub output: usize,
    pub corrections: Corrections<T>,
}

impl<T: Real> NeuronSpec<T> {
    /// Builds a spec with the analytically computed correction gates.
    pub fn new(params: impl Into<NeuronParams<T>>, inputs: [usize; 2], output: usize) -> Result<Self> {
        let params = params.into();
        let corrections = corrections_for(&params)?;
        let spec = Self { params, inputs, output, corrections };
        spec.validate()?;
        Ok(spec)
    }

    /// Same neuron acting on qubits (0, 1) → 2 of a three-qubit register.
    pub fn local(params: impl Into<NeuronParams<T>>) -> Result<Self> {
        Self::new(params, [0, 1], 2)
    }

    pub fn kind(&self) -> NeuronKind {
        self.params.kind()
    }

    /// (input a, input b, output)
    pub fn targets(&self) -> [usize; 3] {
        [self.inputs[0], self.inputs[1], self.output]
    }

    pub fn validate(&self) -> Result<()> {
        crate::quantum::check_targets(&self.targets(), usize::MAX)?;
        self.params.validate()?;
        let c = &self.corrections;
        let ok = match self.kind() {
            NeuronKind::Phase => {
                c.before == [Gate::Hadamard]
                    && c.after.len() == 2
                    && c.after[0] == Gate::Hadamard
                    && matches!(c.after[1], Gate::Phase(_))
            }
            _ => c.before.is_empty() && c.after.len() == 1 && matches!(c.after[0], Gate::Phase(_)),
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "correction sequence is inconsistent with a {} neuron",
                self.kind()
            )));
        }
        Ok(())
    }
}
