use serde::{Deserialize, Serialize};

use super::{neuron_hamiltonian, NeuronParams};
use crate::quantum::eigen::hermitian_eigenvalues;
use crate::scalar::Real;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry<T> {
    pub predicted: T,
    pub numerical: T,
    pub deviation: T,
    /// false for perturbative predictions
    pub exact: bool,
}

/// Static (drive-free) eigenvalues paired with their closed-form predictions, ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport<T> {
    pub entries: Vec<SpectrumEntry<T>>,
    pub max_exact_deviation: T,
    pub max_approx_deviation: Option<T>,
    /// allowed deviation of the perturbative predictions, δ²/J for the phase neuron
    pub approx_bound: Option<T>,
}

/// Diagonalizes the static couplings of the neuron on its three qubits (fields and drives
/// omitted) and compares them with the closed forms.
///
/// Excitation and final layers: ±√(J²+β²) − γJ/2, β + γJ/2, −β + γJ/2, each twice.
/// Phase neuron: J/2 ± δ twice each (γ = 1) from the {Φ⁺, Ψ⁺} block, plus the
/// perturbative γJ/2 and −J − γJ/2 from the {Φ⁻, Ψ⁻} block.
pub fn spectrum_report<T: Real>(params: &NeuronParams<T>) -> Result<SpectrumReport<T>> {
    let h = neuron_hamiltonian(params, 3, [0, 1, 2])?;
    let numerical = hermitian_eigenvalues(&h.static_matrix());
    let half = T::of(0.5);
    let (mut predicted, bound): (Vec<(T, bool)>, Option<T>) = match params {
        NeuronParams::Excitation(p) => (heisenberg_zz(p.j(), p.beta(), p.gamma), None),
        NeuronParams::Final(p) => (heisenberg_zz(p.j()?, p.beta()?, p.gamma), None),
        NeuronParams::Phase(p) => {
            let (j, d, g) = (p.j(), p.delta(), p.gamma);
            let split = (j * j * (g - T::one()).powi(2) * T::of(0.25) + d * d).sqrt();
            let mut v = Vec::new();
            for e in [j * half + split, j * half - split, g * j * half, -j - g * j * half] {
                let exact = v.len() < 4;
                v.push((e, exact));
                v.push((e, exact));
            }
            (v, Some(d * d / j.abs()))
        }
    };
    predicted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let entries: Vec<SpectrumEntry<T>> = predicted
        .iter()
        .zip(&numerical)
        .map(|(&(p, exact), &n)| SpectrumEntry { predicted: p, numerical: n, deviation: (n - p).abs(), exact })
        .collect();
    let max_of = |exact: bool| {
        entries.iter().filter(|e| e.exact == exact).map(|e| e.deviation).fold(None, |acc: Option<T>, d| {
            Some(acc.map_or(d, |a| a.max(d)))
        })
    };
    Ok(SpectrumReport {
        max_exact_deviation: max_of(true).unwrap_or(T::zero()),
        max_approx_deviation: max_of(false),
        approx_bound: bound,
        entries,
    })
}

fn heisenberg_zz<T: Real>(j: T, beta: T, gamma: T) -> Vec<(T, bool)> {
    let e = (j * j + beta * beta).sqrt();
    let g = gamma * j * T::of(0.5);
    [e - g, -e - g, beta + g, -beta + g].iter().flat_map(|&v| [(v, true), (v, true)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neuron::{ExcNeuronParams, ExchangeScale, PhaseNeuronParams};

    #[test]
    fn exc_spectrum_values() {
        let r = spectrum_report(&ExcNeuronParams::new(8.0, 17.0).into()).unwrap();
        let p: Vec<f64> = r.entries.iter().map(|e| e.predicted).collect();
        assert_eq!(p, vec![-24.5, -24.5, -0.5, -0.5, 9.5, 9.5, 15.5, 15.5]);
        assert!(r.max_exact_deviation < 1e-10);
    }

    #[test]
    fn phase_spectrum_blocks() {
        let params = PhaseNeuronParams::new(3.0, 82.0).with_exchange(ExchangeScale::Standard);
        let r = spectrum_report(&params.into()).unwrap();
        let exact: Vec<f64> = r.entries.iter().filter(|e| e.exact).map(|e| e.predicted).collect();
        assert_eq!(exact, vec![76.0, 76.0, 88.0, 88.0]);
        assert!(r.max_exact_deviation < 1e-10);
        let approx: Vec<f64> = r.entries.iter().filter(|e| !e.exact).map(|e| e.predicted).collect();
        assert_eq!(approx, vec![-246.0, -246.0, 82.0, 82.0]);
        assert!(r.max_approx_deviation.unwrap() <= r.approx_bound.unwrap());
    }
}
