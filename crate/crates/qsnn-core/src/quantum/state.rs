use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{bit_position, check_targets, DenseOperator};
use crate::scalar::{Real, C};
use crate::{Error, Result};

/// Pure state of an n-qubit register. Qubit 0 is the most significant bit of the
/// basis index, and |↓⟩ = |0⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    /// Builds a state from amplitudes that must already be normalized.
    pub fn new(num_qubits: usize, amplitudes: Vec<C<T>>) -> Result<Self> {
        check_len(num_qubits, amplitudes.len())?;
        let s = Self { num_qubits, amplitudes };
        let dev = (s.norm() - T::one()).abs();
        if dev > T::norm_tolerance() {
            return Err(Error::NotNormalized(dev.as_f64()));
        }
        Ok(s)
    }

    /// Builds a state by rescaling arbitrary nonzero amplitudes.
    pub fn normalized(num_qubits: usize, mut amplitudes: Vec<C<T>>) -> Result<Self> {
        check_len(num_qubits, amplitudes.len())?;
        let n = norm_of(&amplitudes);
        if !n.is_finite() || n <= T::zero() {
            return Err(Error::NotNormalized(1.0));
        }
        for a in amplitudes.iter_mut() {
            *a /= n;
        }
        Ok(Self { num_qubits, amplitudes })
    }

    pub(crate) fn from_raw(num_qubits: usize, amplitudes: Vec<C<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self { num_qubits, amplitudes }
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > 30 {
            return Err(Error::InvalidArgument(format!("unsupported register size {num_qubits}")));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amps = vec![C::zero(); dim];
        amps[index] = C::one();
        Ok(Self { num_qubits, amplitudes: amps })
    }

    /// All qubits in |↓⟩.
    pub fn ground(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Product state from per-qubit values; `true` is |↑⟩.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let n = bits.len();
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Self::basis(n, index)
    }

    /// Haar-random pure state from normalized complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        let dim = 1usize << num_qubits;
        let amps = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C::new(T::of(re), T::of(im))
            })
            .collect();
        Self::normalized(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn norm(&self) -> T {
        norm_of(&self.amplitudes)
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// |⟨self|other⟩|², insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Tensor product with `other` appended as the less significant qubits.
    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        Self { num_qubits: self.num_qubits + other.num_qubits, amplitudes: amps }
    }

    /// Reduced density matrix of `keep`, in the given order (first listed = most significant).
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DenseOperator<T>> {
        check_targets(keep, self.num_qubits)?;
        let k = keep.len();
        let n = self.num_qubits;
        let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let sub_dim = 1usize << k;
        let env_dim = 1usize << rest.len();
        // columns of psi reshaped as (sub, env)
        let mut blocks = vec![C::zero(); sub_dim * env_dim];
        for (b, amp) in self.amplitudes.iter().enumerate() {
            let s = gather(b, keep, n);
            let e = gather(b, &rest, n);
            blocks[s * env_dim + e] = *amp;
        }
        let mut rho = DenseOperator::zeros(sub_dim);
        for i in 0..sub_dim {
            for j in 0..sub_dim {
                let mut acc = C::zero();
                for e in 0..env_dim {
                    acc += blocks[i * env_dim + e] * blocks[j * env_dim + e].conj();
                }
                rho.set(i, j, acc);
            }
        }
        Ok(rho)
    }

    /// Applies a 2^k-dimensional operator to the listed qubits (first listed = most
    /// significant bit of the operator index), identity elsewhere.
    pub fn apply_local(&self, op: &DenseOperator<T>, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        apply_local_in_place(&mut out.amplitudes, self.num_qubits, op, targets)?;
        Ok(out)
    }
}

pub(crate) fn apply_local_in_place<T: Real>(
    amps: &mut [C<T>],
    num_qubits: usize,
    op: &DenseOperator<T>,
    targets: &[usize],
) -> Result<()> {
    check_targets(targets, num_qubits)?;
    let k = targets.len();
    if op.dim() != 1 << k {
        return Err(Error::DimensionMismatch { expected: 1 << k, found: op.dim() });
    }
    let sub_dim = 1usize << k;
    let offsets: Vec<usize> = (0..sub_dim).map(|s| scatter(s, targets, num_qubits)).collect();
    let tmask = offsets[sub_dim - 1];
    let mut buf = vec![C::zero(); sub_dim];
    for base in 0..amps.len() {
        if base & tmask != 0 {
            continue;
        }
        for (s, off) in offsets.iter().enumerate() {
            buf[s] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let row = op.row(r);
            amps[base | off] = row.iter().zip(&buf).fold(C::zero(), |acc, (m, v)| acc + m * v);
        }
    }
    Ok(())
}

/// Sub-index formed by the bits of `qubits` inside basis index `b`.
pub(crate) fn gather(b: usize, qubits: &[usize], num_qubits: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | ((b >> bit_position(num_qubits, q)) & 1))
}

/// Basis-index offset that places the bits of sub-index `s` onto `qubits`.
pub(crate) fn scatter(s: usize, qubits: &[usize], num_qubits: usize) -> usize {
    let k = qubits.len();
    qubits.iter().enumerate().fold(0, |acc, (j, &q)| {
        let bit = (s >> (k - 1 - j)) & 1;
        acc | (bit << bit_position(num_qubits, q))
    })
}

fn check_len(num_qubits: usize, len: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > 30 {
        return Err(Error::InvalidArgument(format!("unsupported register size {num_qubits}")));
    }
    let dim = 1usize << num_qubits;
    if len != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: len });
    }
    Ok(())
}

pub(crate) fn norm_of<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}

impl<T: Real> std::ops::Index<usize> for StateVector<T> {
    type Output = C<T>;
    fn index(&self, i: usize) -> &C<T> {
        &self.amplitudes[i]
    }
}
