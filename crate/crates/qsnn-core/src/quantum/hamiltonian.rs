use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{bit_position, check_targets, Axis, DenseOperator};
use crate::scalar::{c, cr, Real, C};
use crate::{Error, Result};

/// Coefficient times a product of Pauli factors, at most one per qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct StaticTerm<T: Real> {
    pub coefficient: T,
    pub factors: Vec<(usize, Axis)>,
}

/// Shape of a single-qubit drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveForm {
    /// A·cos(ωt)·σ^x
    CosineX,
    /// (A/2)(e^{−iωt}σ^+ + e^{+iωt}σ^−)
    RotatingPlus,
    /// (A/2)(e^{+iωt}σ^+ + e^{−iωt}σ^−)
    RotatingMinus,
    /// A·σ^z, frequency ignored
    StaticZ,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveTerm<T: Real> {
    pub amplitude: T,
    pub angular_frequency: T,
    pub target: usize,
    pub form: DriveForm,
}

impl<T: Real> DriveTerm<T> {
    /// Pauli components (axis, coefficient at time t).
    fn components(&self, t: T) -> Vec<(Axis, T)> {
        let a = self.amplitude;
        let half = a * T::of(0.5);
        let (cos, sin) = ((self.angular_frequency * t).cos(), (self.angular_frequency * t).sin());
        match self.form {
            DriveForm::CosineX => vec![(Axis::X, a * cos)],
            DriveForm::RotatingPlus => vec![(Axis::X, half * cos), (Axis::Y, half * sin)],
            DriveForm::RotatingMinus => vec![(Axis::X, half * cos), (Axis::Y, -half * sin)],
            DriveForm::StaticZ => vec![(Axis::Z, a)],
        }
    }
}

/// Static Pauli couplings plus single-qubit drives, H(t) = Σ static + Σ drives(t).
#[derive(Clone, Debug, PartialEq)]
pub struct TimeDependentHamiltonian<T: Real> {
    num_qubits: usize,
    static_terms: Vec<StaticTerm<T>>,
    drive_terms: Vec<DriveTerm<T>>,
}

impl<T: Real> TimeDependentHamiltonian<T> {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, static_terms: Vec::new(), drive_terms: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn static_terms(&self) -> &[StaticTerm<T>] {
        &self.static_terms
    }

    pub fn drive_terms(&self) -> &[DriveTerm<T>] {
        &self.drive_terms
    }

    pub fn add_static(&mut self, coefficient: T, factors: &[(usize, Axis)]) -> Result<&mut Self> {
        if !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient {coefficient}")));
        }
        let qubits: Vec<usize> = factors.iter().map(|f| f.0).collect();
        check_targets(&qubits, self.num_qubits)?;
        self.static_terms.push(StaticTerm { coefficient, factors: factors.to_vec() });
        Ok(self)
    }

    pub fn add_drive(&mut self, drive: DriveTerm<T>) -> Result<&mut Self> {
        check_targets(&[drive.target], self.num_qubits)?;
        if !drive.amplitude.is_finite() || !drive.angular_frequency.is_finite() {
            return Err(Error::InvalidArgument("non-finite drive parameters".into()));
        }
        self.drive_terms.push(drive);
        Ok(self)
    }

    /// True when H does not depend on time.
    pub fn is_static(&self) -> bool {
        self.drive_terms.iter().all(|d| d.form == DriveForm::StaticZ)
    }

    /// Relabels local qubit i as `targets[i]` inside a register of `num_qubits`.
    pub fn remap(&self, targets: &[usize], num_qubits: usize) -> Result<Self> {
        if targets.len() != self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: targets.len() });
        }
        check_targets(targets, num_qubits)?;
        let static_terms = self
            .static_terms
            .iter()
            .map(|s| StaticTerm {
                coefficient: s.coefficient,
                factors: s.factors.iter().map(|&(q, a)| (targets[q], a)).collect(),
            })
            .collect();
        let drive_terms = self
            .drive_terms
            .iter()
            .map(|d| DriveTerm { target: targets[d.target], ..*d })
            .collect();
        Ok(Self { num_qubits, static_terms, drive_terms })
    }

    /// Matrix of the static couplings alone (drives, including static_z fields, omitted).
    pub fn static_matrix(&self) -> DenseOperator<T> {
        let mut m = DenseOperator::zeros(1 << self.num_qubits);
        for s in &self.static_terms {
            self.accumulate(&mut m, &s.factors, s.coefficient);
        }
        m
    }

    /// Full matrix H(t).
    pub fn matrix_at(&self, t: T) -> DenseOperator<T> {
        let mut m = self.static_matrix();
        for d in &self.drive_terms {
            for (axis, coef) in d.components(t) {
                self.accumulate(&mut m, &[(d.target, axis)], coef);
            }
        }
        m
    }

    /// max |H(t) − H(t)†|
    pub fn hermiticity_error(&self, t: T) -> T {
        self.matrix_at(t).hermiticity_error()
    }

    /// Upper bound on the operator norm over all times.
    pub fn norm_bound(&self) -> T {
        let s: T = self.static_terms.iter().map(|s| s.coefficient.abs()).sum();
        let d: T = self.drive_terms.iter().map(|d| d.amplitude.abs()).sum();
        s + d
    }

    fn accumulate(&self, m: &mut DenseOperator<T>, factors: &[(usize, Axis)], coef: T) {
        let op = PauliString::new(factors, self.num_qubits);
        for b in 0..(1usize << self.num_qubits) {
            let (target, f) = op.act(b);
            let v = m.get(target, b) + f * coef;
            m.set(target, b, v);
        }
    }

    pub(crate) fn compile(&self) -> CompiledHamiltonian<T> {
        let dim = 1usize << self.num_qubits;
        let mut constant: Vec<(usize, Vec<C<T>>)> = Vec::new();
        let mut modulated: Vec<CompiledOp<T>> = Vec::new();
        let mut push_constant = |factors: &[(usize, Axis)], coef: T| {
            let op = PauliString::new(factors, self.num_qubits);
            let w: Vec<C<T>> = (0..dim).map(|b| op.act(b).1 * coef).collect();
            match constant.iter_mut().find(|(mask, _)| *mask == op.mask) {
                Some((_, acc)) => acc.iter_mut().zip(&w).for_each(|(a, b)| *a += b),
                None => constant.push((op.mask, w)),
            }
        };
        for s in &self.static_terms {
            push_constant(&s.factors, s.coefficient);
        }
        for d in &self.drive_terms {
            let half = d.amplitude * T::of(0.5);
            let parts: Vec<(Axis, T, Modulation<T>)> = match d.form {
                DriveForm::StaticZ => {
                    push_constant(&[(d.target, Axis::Z)], d.amplitude);
                    continue;
                }
                DriveForm::CosineX => vec![(Axis::X, d.amplitude, Modulation::Cos(d.angular_frequency))],
                DriveForm::RotatingPlus => vec![
                    (Axis::X, half, Modulation::Cos(d.angular_frequency)),
                    (Axis::Y, half, Modulation::Sin(d.angular_frequency)),
                ],
                DriveForm::RotatingMinus => vec![
                    (Axis::X, half, Modulation::Cos(d.angular_frequency)),
                    (Axis::Y, -half, Modulation::Sin(d.angular_frequency)),
                ],
            };
            for (axis, coef, modulation) in parts {
                let op = PauliString::new(&[(d.target, axis)], self.num_qubits);
                let weights = (0..dim).map(|b| op.act(b).1 * coef * c(T::zero(), -T::one())).collect();
                modulated.push(CompiledOp { mask: op.mask, weights, modulation });
            }
        }
        let mut ops: Vec<CompiledOp<T>> = constant
            .into_iter()
            .map(|(mask, w)| CompiledOp {
                mask,
                weights: w.into_iter().map(|x| x * c(T::zero(), -T::one())).collect(),
                modulation: Modulation::Constant,
            })
            .collect();
        ops.extend(modulated);
        CompiledHamiltonian { dim, ops }
    }
}

/// Pauli product acting on basis indices: P|b⟩ = factor(b)·|b xor mask⟩.
struct PauliString {
    mask: usize,
    factors: Vec<(usize, Axis)>,
}

impl PauliString {
    fn new(factors: &[(usize, Axis)], num_qubits: usize) -> Self {
        let factors: Vec<(usize, Axis)> =
            factors.iter().map(|&(q, a)| (bit_position(num_qubits, q), a)).collect();
        let mask = factors.iter().filter(|f| f.1.flips()).fold(0, |m, f| m | (1 << f.0));
        Self { mask, factors }
    }

    fn act<T: Real>(&self, b: usize) -> (usize, C<T>) {
        let f = self
            .factors
            .iter()
            .fold(cr(T::one()), |acc, &(pos, axis)| acc * axis.action::<T>((b >> pos) & 1 == 1).1);
        (b ^ self.mask, f)
    }
}

#[derive(Clone, Copy, Debug)]
enum Modulation<T> {
    Constant,
    Cos(T),
    Sin(T),
}

#[derive(Clone, Debug)]
struct CompiledOp<T: Real> {
    mask: usize,
    /// −i times the Pauli weights, indexed by source basis state
    weights: Vec<C<T>>,
    modulation: Modulation<T>,
}

/// H(t) flattened into per-mask weight tables for fast application of −iH(t).
#[derive(Clone, Debug)]
pub(crate) struct CompiledHamiltonian<T: Real> {
    dim: usize,
    ops: Vec<CompiledOp<T>>,
}

impl<T: Real> CompiledHamiltonian<T> {
    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    /// out = −i H(t) psi for every column of a column-major block.
    pub(crate) fn derivative(&self, t: T, psi: &[C<T>], out: &mut [C<T>]) {
        out.iter_mut().for_each(|x| *x = C::zero());
        let dim = self.dim;
        for op in &self.ops {
            let s = match op.modulation {
                Modulation::Constant => T::one(),
                Modulation::Cos(w) => (w * t).cos(),
                Modulation::Sin(w) => (w * t).sin(),
            };
            if s.is_zero() {
                continue;
            }
            for (col_in, col_out) in psi.chunks_exact(dim).zip(out.chunks_exact_mut(dim)) {
                for (b, (w, x)) in op.weights.iter().zip(col_in).enumerate() {
                    col_out[b ^ op.mask] += w * x * s;
                }
            }
        }
    }
}
