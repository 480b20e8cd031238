use std::io::{Read, Write};
use std::path::Path;

use super::{neuron_hamiltonian, NeuronSpec};
use crate::quantum::integrator::evolve_samples;
use crate::quantum::{expectation, Axis, BellLabel, DenseOperator, StateVector};
use crate::scalar::Real;
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 1000;

const HEADER: [&str; 4] = ["t", "out_x", "out_z", "input_fidelity"];

/// Output-qubit observables and input preservation sampled during the bare evolution.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub output_x: Vec<T>,
    pub output_z: Vec<T>,
    /// ⟨Ψ(t)|(|Ψ₀⟩⟨Ψ₀| + σ₃^x|Ψ₀⟩⟨Ψ₀|σ₃^x)|Ψ(t)⟩
    pub input_fidelity: Vec<T>,
}

/// Evolves |input⟩|↓⟩ under the neuron's Hamiltonian alone (no correction gates) and
/// samples at `samples` uniform times in [0, τ].
pub fn record_trajectory<T: Real>(
    spec: &NeuronSpec<T>,
    input: BellLabel,
    samples: usize,
    tol: T,
) -> Result<Trajectory<T>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    spec.validate()?;
    let h = neuron_hamiltonian(&spec.params, 3, [0, 1, 2])?;
    let tau = spec.params.tau();
    let last = T::of((samples - 1) as f64);
    let times: Vec<T> = (0..samples).map(|i| tau * T::of(i as f64) / last).collect();
    let psi0 = input.state::<T>().kron(&StateVector::ground(1)?);
    let flipped0 = psi0.apply_local(&DenseOperator::pauli(Axis::X), &[2])?;
    let states = evolve_samples(&psi0, &h, &times, tol)?;
    let mut traj = Trajectory {
        times,
        output_x: Vec::with_capacity(samples),
        output_z: Vec::with_capacity(samples),
        input_fidelity: Vec::with_capacity(samples),
    };
    for s in &states {
        traj.output_x.push(expectation(s, Axis::X, 2)?);
        traj.output_z.push(expectation(s, Axis::Z, 2)?);
        traj.input_fidelity.push(psi0.fidelity(s)? + flipped0.fidelity(s)?);
    }
    Ok(traj)
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,out_x,out_z,input_fidelity`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(HEADER)?;
        for i in 0..self.len() {
            let row = [self.times[i], self.output_x[i], self.output_z[i], self.input_fidelity[i]];
            w.write_record(row.iter().map(|v| format!("{:.16e}", v.as_f64())))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let header = r.headers()?.clone();
        if header.iter().ne(HEADER) {
            return Err(Error::Format(format!("unexpected trajectory header {header:?}")));
        }
        let mut traj =
            Trajectory { times: vec![], output_x: vec![], output_z: vec![], input_fidelity: vec![] };
        for record in r.records() {
            let record = record?;
            if record.len() != 4 {
                return Err(Error::Format(format!("expected 4 columns, found {}", record.len())));
            }
            let mut vals = [T::zero(); 4];
            for (slot, field) in vals.iter_mut().zip(record.iter()) {
                let v: f64 = field.trim().parse().map_err(|_| Error::Format(format!("bad number {field:?}")))?;
                *slot = T::of(v);
            }
            traj.times.push(vals[0]);
            traj.output_x.push(vals[1]);
            traj.output_z.push(vals[2]);
            traj.input_fidelity.push(vals[3]);
        }
        Ok(traj)
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    pub fn read_csv_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neuron::ExcNeuronParams;

    #[test]
    fn starts_from_down_output_with_full_input_fidelity() {
        let spec = NeuronSpec::<f64>::local(ExcNeuronParams::new(8.0, 17.0)).unwrap();
        let t = record_trajectory(&spec, BellLabel::PhiMinus, 50, 1e-9).unwrap();
        assert_eq!(t.len(), 50);
        assert!((t.output_z[0] + 1.0).abs() < 1e-12);
        assert!((t.input_fidelity[0] - 1.0).abs() < 1e-12);
        assert!(*t.output_z.last().unwrap() > 0.99);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let spec = NeuronSpec::<f64>::local(ExcNeuronParams::new(8.0, 17.0)).unwrap();
        let t = record_trajectory(&spec, BellLabel::PsiPlus, 20, 1e-8).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"t,out_x,out_z,input_fidelity\n"));
        let back = Trajectory::<f64>::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }
}
