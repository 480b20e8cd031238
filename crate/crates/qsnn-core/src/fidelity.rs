//! Average gate fidelity and leakage on a protocol subspace.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::quantum::{DenseOperator, StateVector};
use crate::scalar::{Real, C};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport<T> {
    pub f_avg: T,
    pub leakage: T,
    /// |⟨b_i|U_ideal† U_actual|b_i⟩| for each subspace basis state
    pub per_state: Vec<T>,
    pub subspace_dim: usize,
}

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate<T> {
    pub mean: T,
    pub std_error: T,
    pub samples: usize,
}

/// With M = P·U_ideal†·U_actual·P on the d-dimensional subspace,
/// F = (Tr MM† + |Tr M|²) / (d(d+1)); leakage = 1 − Tr(M̃M̃†)/d for M̃ = P·U_actual·P.
pub fn average_fidelity<T: Real>(
    u_actual: &DenseOperator<T>,
    u_ideal: &DenseOperator<T>,
    subspace: &[StateVector<T>],
) -> Result<FidelityReport<T>> {
    let m = overlap_matrix(u_actual, u_ideal, subspace)?;
    let m_tilde = u_actual.restrict(subspace)?;
    let d = subspace.len();
    let df = T::of(d as f64);
    let frob = |x: &DenseOperator<T>| x.entries().iter().map(|z| z.norm_sqr()).sum::<T>();
    let f_avg = (frob(&m) + m.trace().norm_sqr()) / (df * (df + T::one()));
    let leakage = T::one() - frob(&m_tilde) / df;
    let per_state = (0..d).map(|i| m.get(i, i).norm().min(T::one())).collect();
    Ok(FidelityReport {
        f_avg: f_avg.min(T::one()).max(T::zero()),
        leakage: leakage.max(T::zero()).min(T::one()),
        per_state,
        subspace_dim: d,
    })
}

/// Mean of |⟨ψ|U_ideal†U_actual|ψ⟩|² over Haar-random ψ in the subspace.
pub fn mc_average_fidelity<T: Real>(
    u_actual: &DenseOperator<T>,
    u_ideal: &DenseOperator<T>,
    subspace: &[StateVector<T>],
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate<T>> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let m = overlap_matrix(u_actual, u_ideal, subspace)?;
    let d = subspace.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    let mut coeffs = vec![C::<T>::zero(); d];
    for _ in 0..n_samples {
        let mut norm = T::zero();
        for z in coeffs.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *z = C::new(T::of(re), T::of(im));
            norm += z.norm_sqr();
        }
        let norm = norm.sqrt();
        coeffs.iter_mut().for_each(|z| *z /= norm);
        let mut amp = C::<T>::zero();
        for i in 0..d {
            for j in 0..d {
                amp += coeffs[i].conj() * m.get(i, j) * coeffs[j];
            }
        }
        let f = amp.norm_sqr().as_f64();
        sum += f;
        sum_sq += f * f;
    }
    let n = n_samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(McEstimate { mean: T::of(mean), std_error: T::of((var / n).sqrt()), samples: n_samples })
}

fn overlap_matrix<T: Real>(
    u_actual: &DenseOperator<T>,
    u_ideal: &DenseOperator<T>,
    subspace: &[StateVector<T>],
) -> Result<DenseOperator<T>> {
    if u_actual.dim() != u_ideal.dim() {
        return Err(Error::DimensionMismatch { expected: u_ideal.dim(), found: u_actual.dim() });
    }
    check_orthonormal(subspace, u_actual.dim())?;
    u_ideal.adjoint().matmul(u_actual)?.restrict(subspace)
}

fn check_orthonormal<T: Real>(basis: &[StateVector<T>], dim: usize) -> Result<()> {
    if basis.is_empty() {
        return Err(Error::InvalidArgument("empty subspace".into()));
    }
    let mut worst = T::zero();
    for (i, a) in basis.iter().enumerate() {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
        }
        for b in &basis[i..] {
            let o = a.inner(b)?;
            let target = if std::ptr::eq(a, b) { T::one() } else { T::zero() };
            worst = worst.max((o - C::new(target, T::zero())).norm());
        }
    }
    if worst > T::of(1e-10).max(T::epsilon() * T::of(100.0)) {
        return Err(Error::NonOrthonormalSubspace(worst.as_f64()));
    }
    Ok(())
}
