use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::quantum::{BellLabel, StateVector};
use crate::scalar::{Real, C};
use crate::{Error, Result};

/// Coefficients of a two-qubit state in the Bell basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellAmplitudes<T> {
    pub psi_plus: C<T>,
    pub psi_minus: C<T>,
    pub phi_plus: C<T>,
    pub phi_minus: C<T>,
}

impl<T: Real> BellAmplitudes<T> {
    /// Fails with [`Error::Normalization`] unless Σ|a_i|² = 1 within 1e-9.
    pub fn new(psi_plus: C<T>, psi_minus: C<T>, phi_plus: C<T>, phi_minus: C<T>) -> Result<Self> {
        let a = Self { psi_plus, psi_minus, phi_plus, phi_minus };
        let dev = (a.norm_sqr() - T::one()).abs();
        if dev > T::of(1e-9).max(T::norm_tolerance()) {
            return Err(Error::Normalization(dev.as_f64()));
        }
        Ok(a)
    }

    /// Rescales arbitrary nonzero coefficients.
    pub fn normalized(psi_plus: C<T>, psi_minus: C<T>, phi_plus: C<T>, phi_minus: C<T>) -> Result<Self> {
        let raw = Self { psi_plus, psi_minus, phi_plus, phi_minus };
        let n = raw.norm_sqr().sqrt();
        if !n.is_finite() || n <= T::zero() {
            return Err(Error::Normalization(1.0));
        }
        let s = T::one() / n;
        Ok(Self {
            psi_plus: psi_plus * s,
            psi_minus: psi_minus * s,
            phi_plus: phi_plus * s,
            phi_minus: phi_minus * s,
        })
    }

    pub fn pure(label: BellLabel) -> Self {
        let mut a = Self::zero();
        *a.get_mut(label) = C::new(T::one(), T::zero());
        a
    }

    /// Equal-weight superposition of the listed Bell states.
    pub fn superposition(labels: &[BellLabel]) -> Result<Self> {
        let mut a = Self::zero();
        for &l in labels {
            *a.get_mut(l) += C::new(T::one(), T::zero());
        }
        Self::normalized(a.psi_plus, a.psi_minus, a.phi_plus, a.phi_minus)
    }

    /// Normalized complex Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C::new(T::of(re), T::of(im))
        };
        let (a, b, c, d) = (draw(), draw(), draw(), draw());
        Self::normalized(a, b, c, d).expect("gaussian draw is nonzero")
    }

    fn zero() -> Self {
        Self { psi_plus: C::zero(), psi_minus: C::zero(), phi_plus: C::zero(), phi_minus: C::zero() }
    }

    pub fn get(&self, label: BellLabel) -> C<T> {
        match label {
            BellLabel::PsiPlus => self.psi_plus,
            BellLabel::PsiMinus => self.psi_minus,
            BellLabel::PhiPlus => self.phi_plus,
            BellLabel::PhiMinus => self.phi_minus,
        }
    }

    fn get_mut(&mut self, label: BellLabel) -> &mut C<T> {
        match label {
            BellLabel::PsiPlus => &mut self.psi_plus,
            BellLabel::PsiMinus => &mut self.psi_minus,
            BellLabel::PhiPlus => &mut self.phi_plus,
            BellLabel::PhiMinus => &mut self.phi_minus,
        }
    }

    pub fn norm_sqr(&self) -> T {
        BellLabel::ALL.iter().map(|&l| self.get(l).norm_sqr()).sum()
    }

    /// Σ a_i |Bell_i⟩ as a two-qubit state.
    pub fn state(&self) -> StateVector<T> {
        let mut amps = vec![C::zero(); 4];
        for l in BellLabel::ALL {
            let b = l.state::<T>();
            for (dst, src) in amps.iter_mut().zip(b.amplitudes()) {
                *dst += self.get(l) * src;
            }
        }
        StateVector::normalized(2, amps).expect("normalized amplitudes")
    }
}

/// Σ_i |a_i|²|b_i|², the probability that two independently prepared states are found
/// in the same Bell state.
pub fn bell_kernel<T: Real>(a: &BellAmplitudes<T>, b: &BellAmplitudes<T>) -> Result<T> {
    for x in [a, b] {
        let dev = (x.norm_sqr() - T::one()).abs();
        if dev > T::of(1e-9).max(T::norm_tolerance()) {
            return Err(Error::Normalization(dev.as_f64()));
        }
    }
    Ok(BellLabel::ALL.iter().map(|&l| a.get(l).norm_sqr() * b.get(l).norm_sqr()).sum())
}
