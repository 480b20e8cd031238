//! Bell-state comparison networks built from scheduled neurons.

mod bell;
mod io;
mod run;

use serde::{Deserialize, Serialize};

pub use bell::{bell_kernel, BellAmplitudes};
pub use run::{
    back_action, initial_state, run, simulated_kernel, BackAction, NetworkInput, Outcome, PreparedNetwork,
};

use crate::neuron::{
    ExcNeuronParams, FinalLayerParams, FinalVariant, NeuronParams, NeuronSpec, PhaseNeuronParams,
};
use crate::scalar::Real;
use crate::Result;

/// How scheduled neurons are applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunMode {
    /// each neuron's simulated 8×8 protocol operator, computed once and embedded
    #[default]
    EmbeddedUnitary,
    /// evolve the whole register under each neuron's Hamiltonian in turn
    FullDynamics,
    /// each neuron's ideal target operation
    IdealUnitary,
}

/// Register size, neuron schedule, the four input qubits (pair a, pair b) and the output.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkSpec<T> {
    pub num_qubits: usize,
    pub schedule: Vec<NeuronSpec<T>>,
    pub input_qubits: [usize; 4],
    pub output_qubit: usize,
    pub run_mode: RunMode,
}

/// A structural problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptySchedule,
    RegisterSize { num_qubits: usize },
    InputOutOfBounds { qubit: usize },
    DuplicateInput { qubit: usize },
    OutputOutOfBounds { qubit: usize },
    StepOutOfBounds { step: usize, qubit: usize },
    DuplicateIndexInStep { step: usize, qubit: usize },
    /// a neuron writes onto one of the network's input qubits, which are not fresh ancillas
    WritesInput { step: usize, qubit: usize },
    /// a neuron reads a qubit that only a later neuron writes
    ReadsLaterTarget { step: usize, qubit: usize, writer: usize },
    /// a neuron reads a qubit that is neither an input nor written earlier
    ReadsUninitialized { step: usize, qubit: usize },
    OutputNotWrittenLast { output_qubit: usize, last_written: Option<usize> },
    InvalidNeuron { step: usize, message: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EmptySchedule => write!(f, "schedule is empty"),
            Violation::RegisterSize { num_qubits } => write!(f, "unsupported register size {num_qubits}"),
            Violation::InputOutOfBounds { qubit } => write!(f, "input qubit {qubit} out of bounds"),
            Violation::DuplicateInput { qubit } => write!(f, "input qubit {qubit} listed twice"),
            Violation::OutputOutOfBounds { qubit } => write!(f, "output qubit {qubit} out of bounds"),
            Violation::StepOutOfBounds { step, qubit } => write!(f, "step {step}: qubit {qubit} out of bounds"),
            Violation::DuplicateIndexInStep { step, qubit } => {
                write!(f, "step {step}: qubit {qubit} used twice within one neuron")
            }
            Violation::WritesInput { step, qubit } => write!(f, "step {step}: writes input qubit {qubit}"),
            Violation::ReadsLaterTarget { step, qubit, writer } => {
                write!(f, "step {step}: reads qubit {qubit} before step {writer} writes it")
            }
            Violation::ReadsUninitialized { step, qubit } => {
                write!(f, "step {step}: reads qubit {qubit}, which is never prepared")
            }
            Violation::OutputNotWrittenLast { output_qubit, last_written } => match last_written {
                Some(q) => write!(f, "output qubit {output_qubit} is not written by the final step (it writes {q})"),
                None => write!(f, "output qubit {output_qubit} is not written by the final step"),
            },
            Violation::InvalidNeuron { step, message } => write!(f, "step {step}: {message}"),
        }
    }
}

/// Checks index bounds, fresh-ancilla assumptions and schedule causality.
pub fn validate<T: Real>(spec: &NetworkSpec<T>) -> std::result::Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let n = spec.num_qubits;
    if n == 0 || n > 24 {
        v.push(Violation::RegisterSize { num_qubits: n });
    }
    for (i, &q) in spec.input_qubits.iter().enumerate() {
        if q >= n {
            v.push(Violation::InputOutOfBounds { qubit: q });
        } else if spec.input_qubits[..i].contains(&q) {
            v.push(Violation::DuplicateInput { qubit: q });
        }
    }
    if spec.output_qubit >= n {
        v.push(Violation::OutputOutOfBounds { qubit: spec.output_qubit });
    }
    if spec.schedule.is_empty() {
        v.push(Violation::EmptySchedule);
    }
    for (step, neuron) in spec.schedule.iter().enumerate() {
        let targets = neuron.targets();
        let mut indices_ok = true;
        for (i, &q) in targets.iter().enumerate() {
            if q >= n {
                v.push(Violation::StepOutOfBounds { step, qubit: q });
                indices_ok = false;
            } else if targets[..i].contains(&q) {
                v.push(Violation::DuplicateIndexInStep { step, qubit: q });
                indices_ok = false;
            }
        }
        if indices_ok {
            if let Err(e) = neuron.validate() {
                v.push(Violation::InvalidNeuron { step, message: e.to_string() });
            }
        }
        if spec.input_qubits.contains(&neuron.output) {
            v.push(Violation::WritesInput { step, qubit: neuron.output });
        }
        for &q in &neuron.inputs {
            if spec.input_qubits.contains(&q) || spec.schedule[..step].iter().any(|s| s.output == q) {
                continue;
            }
            match spec.schedule[step + 1..].iter().position(|s| s.output == q) {
                Some(off) => v.push(Violation::ReadsLaterTarget { step, qubit: q, writer: step + 1 + off }),
                None => v.push(Violation::ReadsUninitialized { step, qubit: q }),
            }
        }
    }
    if let Some(last) = spec.schedule.last() {
        if last.output != spec.output_qubit {
            v.push(Violation::OutputNotWrittenLast {
                output_qubit: spec.output_qubit,
                last_written: Some(last.output),
            });
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

impl<T: Real> NetworkSpec<T> {
    /// [`validate`] as a `Result` carrying [`crate::Error::InvalidNetwork`].
    pub fn validated(self) -> Result<Self> {
        validate(&self).map_err(crate::Error::InvalidNetwork)?;
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateKind {
    /// 11 qubits: a phase and an excitation neuron per pair, two comparators, an up-up detector
    Full,
    /// 7 qubits: shared middle targets and a down-down detector
    Reduced,
}

/// Neuron parameters used by the templates. The final layer's variant is set by the template.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetworkParams<T> {
    pub excitation: ExcNeuronParams<T>,
    pub phase: PhaseNeuronParams<T>,
    pub final_layer: FinalLayerParams<T>,
}

impl<T: Real> Default for NetworkParams<T> {
    /// Excitation (8, 17); tuned phase (2.958, 81.99); final layer (γ = 1, l = 17, s = 5,
    /// even k) with a rotating drive, which gives β = 8 and J = −15.
    fn default() -> Self {
        Self {
            excitation: ExcNeuronParams::new(T::of(8.0), T::of(17.0)),
            phase: PhaseNeuronParams::new(T::of(2.958), T::of(81.99)).relaxed(),
            final_layer: FinalLayerParams::new(FinalVariant::DetectUpUp, 17, 5, 0),
        }
    }
}

pub fn template<T: Real>(kind: TemplateKind, params: &NetworkParams<T>) -> Result<NetworkSpec<T>> {
    let exc = |a, b, o| NeuronSpec::new(params.excitation, [a, b], o);
    let phase = |a, b, o| NeuronSpec::new(params.phase, [a, b], o);
    let fin = |variant, a, b, o| NeuronSpec::new(FinalLayerParams { variant, ..params.final_layer }, [a, b], o);
    let spec = match kind {
        TemplateKind::Full => NetworkSpec {
            num_qubits: 11,
            schedule: vec![
                phase(0, 1, 4)?,
                exc(0, 1, 5)?,
                phase(2, 3, 6)?,
                exc(2, 3, 7)?,
                exc(4, 6, 8)?,
                exc(5, 7, 9)?,
                fin(FinalVariant::DetectUpUp, 8, 9, 10)?,
            ],
            input_qubits: [0, 1, 2, 3],
            output_qubit: 10,
            run_mode: RunMode::default(),
        },
        TemplateKind::Reduced => NetworkSpec {
            num_qubits: 7,
            schedule: vec![
                phase(0, 1, 4)?,
                phase(2, 3, 4)?,
                exc(0, 1, 5)?,
                exc(2, 3, 5)?,
                fin(FinalVariant::DetectDownDown, 4, 5, 6)?,
            ],
            input_qubits: [0, 1, 2, 3],
            output_qubit: 6,
            run_mode: RunMode::default(),
        },
    };
    spec.validated()
}

/// Distinct neuron parameter sets in schedule order, with the step → set mapping.
pub(crate) fn distinct_params<T: Real>(spec: &NetworkSpec<T>) -> (Vec<NeuronParams<T>>, Vec<usize>) {
    let mut distinct: Vec<NeuronParams<T>> = Vec::new();
    let mut map = Vec::with_capacity(spec.schedule.len());
    for s in &spec.schedule {
        match distinct.iter().position(|p| *p == s.params) {
            Some(i) => map.push(i),
            None => {
                map.push(distinct.len());
                distinct.push(s.params);
            }
        }
    }
    (distinct, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_shapes() {
        let p = NetworkParams::<f64>::default();
        let full = template(TemplateKind::Full, &p).unwrap();
        assert_eq!((full.num_qubits, full.schedule.len()), (11, 7));
        let reduced = template(TemplateKind::Reduced, &p).unwrap();
        assert_eq!((reduced.num_qubits, reduced.schedule.len()), (7, 5));
        assert!(validate(&full).is_ok() && validate(&reduced).is_ok());
    }

    #[test]
    fn duplicated_index_within_neuron_is_reported() {
        let mut spec = template(TemplateKind::Reduced, &NetworkParams::<f64>::default()).unwrap();
        spec.schedule[2].output = spec.schedule[2].inputs[0];
        let errs = validate(&spec).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, Violation::DuplicateIndexInStep { step: 2, .. })));
    }

    #[test]
    fn causality_is_checked() {
        let mut spec = template(TemplateKind::Full, &NetworkParams::<f64>::default()).unwrap();
        spec.schedule.swap(0, 4);
        let errs = validate(&spec).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, Violation::ReadsLaterTarget { step: 0, qubit: 4, writer: 4 })));
    }

    #[test]
    fn out_of_range_index_is_reported() {
        let mut spec = template(TemplateKind::Reduced, &NetworkParams::<f64>::default()).unwrap();
        spec.schedule[0].inputs[1] = 9;
        let errs = validate(&spec).unwrap_err();
        assert!(errs.contains(&Violation::StepOutOfBounds { step: 0, qubit: 9 }));
    }
}
