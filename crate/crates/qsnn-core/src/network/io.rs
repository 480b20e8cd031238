//! JSON form of [`NetworkSpec`]: `num_qubits`, `schedule` (objects with `kind`, `params`,
//! `inputs`, `output`), `input_qubits`, `output_qubit`, `run_mode`. Unknown fields are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{NetworkSpec, RunMode};
use crate::neuron::{
    corrections_for, ExcNeuronParams, FinalLayerParams, FinalVariant, NeuronKind, NeuronParams, NeuronSpec,
    PhaseNeuronParams,
};
use crate::scalar::Real;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNeuron {
    kind: NeuronKind,
    #[serde(default)]
    params: Value,
    inputs: [usize; 2],
    output: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    num_qubits: usize,
    schedule: Vec<RawNeuron>,
    input_qubits: [usize; 4],
    output_qubit: usize,
    #[serde(default)]
    run_mode: RunMode,
}

fn params_from_value<T: Real + for<'de> Deserialize<'de>>(kind: NeuronKind, value: Value) -> Result<NeuronParams<T>> {
    let value = if value.is_null() { Value::Object(Default::default()) } else { value };
    let parse_err = |e: serde_json::Error| Error::Format(format!("{kind} params: {e}"));
    Ok(match kind {
        NeuronKind::Excitation => {
            NeuronParams::Excitation(serde_json::from_value::<ExcNeuronParams<T>>(value).map_err(parse_err)?)
        }
        NeuronKind::Phase => NeuronParams::Phase(serde_json::from_value::<PhaseNeuronParams<T>>(value).map_err(parse_err)?),
        NeuronKind::FinalUpUp | NeuronKind::FinalDownDown => {
            let variant =
                if kind == NeuronKind::FinalUpUp { FinalVariant::DetectUpUp } else { FinalVariant::DetectDownDown };
            let explicit = value.get("variant").cloned();
            let mut p = serde_json::from_value::<FinalLayerParams<T>>(value).map_err(parse_err)?;
            if explicit.is_some() && p.variant != variant {
                return Err(Error::Format(format!("{kind} params declare a conflicting variant")));
            }
            p.variant = variant;
            NeuronParams::Final(p)
        }
    })
}

fn params_to_value<T: Real + Serialize>(p: &NeuronParams<T>) -> Result<Value> {
    Ok(match p {
        NeuronParams::Excitation(e) => serde_json::to_value(e)?,
        NeuronParams::Phase(ph) => serde_json::to_value(ph)?,
        NeuronParams::Final(f) => serde_json::to_value(f)?,
    })
}

impl<T: Real + Serialize + for<'de> Deserialize<'de>> NetworkSpec<T> {
    /// Parses and validates a network document. Malformed JSON or parameters give
    /// [`Error::Format`] / [`Error::InvalidParams`]; structural problems give
    /// [`Error::InvalidNetwork`] with every violation.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawNetwork = serde_json::from_str(text)?;
        let mut schedule = Vec::with_capacity(raw.schedule.len());
        for n in raw.schedule {
            let params = params_from_value::<T>(n.kind, n.params)?;
            let corrections = corrections_for(&params)?;
            schedule.push(NeuronSpec { params, inputs: n.inputs, output: n.output, corrections });
        }
        NetworkSpec {
            num_qubits: raw.num_qubits,
            schedule,
            input_qubits: raw.input_qubits,
            output_qubit: raw.output_qubit,
            run_mode: raw.run_mode,
        }
        .validated()
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawNetwork {
            num_qubits: self.num_qubits,
            schedule: self
                .schedule
                .iter()
                .map(|s| {
                    Ok(RawNeuron { kind: s.kind(), params: params_to_value(&s.params)?, inputs: s.inputs, output: s.output })
                })
                .collect::<Result<_>>()?,
            input_qubits: self.input_qubits,
            output_qubit: self.output_qubit,
            run_mode: self.run_mode,
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}
