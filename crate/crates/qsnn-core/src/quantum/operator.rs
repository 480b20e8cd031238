use num_traits::{One, Zero};

use super::state::{gather, scatter};
use super::{check_targets, Axis, StateVector};
use crate::scalar::{cr, Real, C};
use crate::{Error, Result};

/// Square complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: Real> {
    dim: usize,
    entries: Vec<C<T>>,
}

impl<T: Real> DenseOperator<T> {
    pub fn new(dim: usize, entries: Vec<C<T>>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![C::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = C::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                entries.push(f(r, col));
            }
        }
        Self { dim, entries }
    }

    /// Operator whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<C<T>>]) -> Result<Self> {
        let dim = columns.len();
        if columns.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: columns[0].len() });
        }
        Ok(Self::from_fn(dim, |r, col| columns[col][r]))
    }

    /// Outer product |a⟩⟨b|.
    pub fn outer(a: &StateVector<T>, b: &StateVector<T>) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        let (x, y) = (a.amplitudes(), b.amplitudes());
        Ok(Self::from_fn(a.dim(), |r, col| x[r] * y[col].conj()))
    }

    pub fn pauli(axis: Axis) -> Self {
        let m = axis.matrix::<T>();
        Self::from_fn(2, |r, col| m[r][col])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, col: usize) -> C<T> {
        self.entries[r * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, r: usize, col: usize, v: C<T>) {
        self.entries[r * self.dim + col] = v;
    }

    pub fn row(&self, r: usize) -> &[C<T>] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<C<T>> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self.get(col, r).conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out.entries[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |r, col| self.get(r / m, col / m) * other.get(r % m, col % m))
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(C::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn apply_vec(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Applies the operator to a state of matching dimension. The result is not renormalized.
    pub fn apply(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        let amps = self.apply_vec(state.amplitudes())?;
        Ok(StateVector::from_raw(state.num_qubits(), amps))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    /// max |U†U − I|
    pub fn unitarity_error(&self) -> T {
        let p = self.adjoint().matmul(self).expect("same dimension");
        p.max_abs_diff(&Self::identity(self.dim)).expect("same dimension")
    }

    /// Fails with [`Error::NotUnitary`] when the unitarity error exceeds `tol`.
    pub fn ensure_unitary(&self, tol: T) -> Result<()> {
        let e = self.unitarity_error();
        if e > tol || !e.is_finite() {
            return Err(Error::NotUnitary(e.as_f64()));
        }
        Ok(())
    }

    /// max |H − H†|
    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    fn one_norm(&self) -> T {
        (0..self.dim)
            .map(|col| (0..self.dim).map(|r| self.get(r, col).norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn expm(&self) -> Self {
        let norm = self.one_norm();
        let mut squarings = 0i32;
        let half = T::of(0.5);
        let mut scaled_norm = norm;
        while scaled_norm > half {
            scaled_norm *= half;
            squarings += 1;
        }
        let a = self.scale(cr(T::one() / T::of(2.0).powi(squarings)));
        let mut result = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=30 {
            term = term.matmul(&a).expect("same dimension").scale(cr(T::one() / T::of(k as f64)));
            result = result.add(&term).expect("same dimension");
            if term.one_norm() <= T::epsilon() * T::of(0.01) {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.matmul(&result).expect("same dimension");
        }
        result
    }

    /// exp(−i·t·self), the propagator of a static Hamiltonian.
    pub fn evolution(&self, t: T) -> Self {
        self.scale(C::new(T::zero(), -t)).expm()
    }

    /// Restriction ⟨b_i|self|b_j⟩ onto an ordered basis.
    pub fn restrict(&self, basis: &[StateVector<T>]) -> Result<Self> {
        let images: Vec<Vec<C<T>>> =
            basis.iter().map(|b| self.apply_vec(b.amplitudes())).collect::<Result<_>>()?;
        let d = basis.len();
        let mut out = Self::zeros(d);
        for (i, bi) in basis.iter().enumerate() {
            for (j, img) in images.iter().enumerate() {
                let v = bi.amplitudes().iter().zip(img).fold(C::zero(), |acc, (a, b)| acc + a.conj() * b);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

/// Lifts a 2^k-dimensional operator acting on `targets` (first listed = most significant
/// bit of the operator index) to the full `num_qubits` register.
pub fn tensor_embed<T: Real>(
    op: &DenseOperator<T>,
    targets: &[usize],
    num_qubits: usize,
) -> Result<DenseOperator<T>> {
    check_targets(targets, num_qubits)?;
    let k = targets.len();
    if op.dim() != 1 << k {
        return Err(Error::DimensionMismatch { expected: 1 << k, found: op.dim() });
    }
    let dim = 1usize << num_qubits;
    let tmask = scatter((1 << k) - 1, targets, num_qubits);
    let mut out = DenseOperator::zeros(dim);
    for r in 0..dim {
        let env = r & !tmask;
        let sr = gather(r, targets, num_qubits);
        for sc in 0..(1 << k) {
            let col = env | scatter(sc, targets, num_qubits);
            out.set(r, col, op.get(sr, sc));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_pauli_rotation() {
        let x = DenseOperator::<f64>::pauli(Axis::X);
        let u = x.evolution(std::f64::consts::FRAC_PI_2);
        // exp(−iπ/2 σx) = −iσx
        let expected = x.scale(C::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn embed_single_qubit_on_middle() {
        let x = DenseOperator::<f64>::pauli(Axis::X);
        let e = tensor_embed(&x, &[1], 3).unwrap();
        let i2 = DenseOperator::identity(2);
        let brute = i2.kron(&x).kron(&i2);
        assert!(e.max_abs_diff(&brute).unwrap() < 1e-15);
    }

    #[test]
    fn embed_rejects_duplicates() {
        let op = DenseOperator::<f64>::identity(4);
        assert_eq!(tensor_embed(&op, &[1, 1], 3), Err(Error::DuplicateTarget(1)));
    }
}
