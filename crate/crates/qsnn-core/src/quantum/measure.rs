use num_traits::Zero;

use super::{bit_position, check_targets, Axis, StateVector};
use crate::scalar::{Real, C};
use crate::{Error, Result};

/// Outcome probability below which a post-measurement state is undefined.
pub const DEGENERATE_PROBABILITY: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement<T: Real> {
    pub p_down: T,
    pub p_up: T,
    /// `None` when `p_down` is below [`DEGENERATE_PROBABILITY`].
    pub post_down: Option<StateVector<T>>,
    pub post_up: Option<StateVector<T>>,
}

/// Projective σ^z measurement of one qubit.
pub fn measure<T: Real>(state: &StateVector<T>, qubit: usize) -> Result<Measurement<T>> {
    let (down, up, pd, pu) = split(state, qubit)?;
    let total = pd + pu;
    let (p_down, p_up) = (pd / total, pu / total);
    let threshold = T::of(DEGENERATE_PROBABILITY);
    let post = |v: Vec<C<T>>, p: T| {
        (p >= threshold).then(|| StateVector::normalized(state.num_qubits(), v).expect("nonzero projection"))
    };
    Ok(Measurement { p_down, p_up, post_down: post(down, p_down), post_up: post(up, p_up) })
}

/// Probability of the outcome and the normalized post-measurement state, or
/// [`Error::DegenerateOutcome`] below the threshold.
pub fn project<T: Real>(state: &StateVector<T>, qubit: usize, up: bool) -> Result<(T, StateVector<T>)> {
    let m = measure(state, qubit)?;
    let (p, post) = if up { (m.p_up, m.post_up) } else { (m.p_down, m.post_down) };
    post.map(|s| (p, s)).ok_or(Error::DegenerateOutcome(p.as_f64()))
}

/// ⟨ψ|σ^axis_qubit|ψ⟩
pub fn expectation<T: Real>(state: &StateVector<T>, axis: Axis, qubit: usize) -> Result<T> {
    check_targets(&[qubit], state.num_qubits())?;
    let pos = bit_position(state.num_qubits(), qubit);
    let amps = state.amplitudes();
    let mut acc = C::<T>::zero();
    for (b, a) in amps.iter().enumerate() {
        let (flip, f) = axis.action::<T>((b >> pos) & 1 == 1);
        let target = if flip { b ^ (1 << pos) } else { b };
        acc += amps[target].conj() * f * a;
    }
    Ok(acc.re / state.norm().powi(2))
}

/// (down part, up part, weight of each)
type Split<T> = (Vec<C<T>>, Vec<C<T>>, T, T);

fn split<T: Real>(state: &StateVector<T>, qubit: usize) -> Result<Split<T>> {
    check_targets(&[qubit], state.num_qubits())?;
    let pos = bit_position(state.num_qubits(), qubit);
    let mut down = state.amplitudes().to_vec();
    let mut up = down.clone();
    let (mut pd, mut pu) = (T::zero(), T::zero());
    for (b, (d, u)) in down.iter_mut().zip(up.iter_mut()).enumerate() {
        if (b >> pos) & 1 == 1 {
            pu += u.norm_sqr();
            *d = C::zero();
        } else {
            pd += d.norm_sqr();
            *u = C::zero();
        }
    }
    Ok((down, up, pd, pu))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_state_expectations() {
        let s = StateVector::<f64>::ground(1).unwrap();
        assert_eq!(expectation(&s, Axis::Z, 0).unwrap(), -1.0);
        assert_eq!(expectation(&s, Axis::X, 0).unwrap(), 0.0);
    }

    #[test]
    fn plus_state_has_unit_x() {
        let s = StateVector::<f64>::normalized(1, vec![C::new(1.0, 0.0), C::new(1.0, 0.0)]).unwrap();
        assert!((expectation(&s, Axis::X, 0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn measuring_down_state() {
        let s = StateVector::<f64>::ground(1).unwrap();
        let m = measure(&s, 0).unwrap();
        assert_eq!((m.p_down, m.p_up), (1.0, 0.0));
        assert_eq!(m.post_down, Some(s.clone()));
        assert!(m.post_up.is_none());
        assert!(matches!(project(&s, 0, true), Err(Error::DegenerateOutcome(_))));
    }

    #[test]
    fn measuring_equal_superposition() {
        let s = StateVector::<f64>::normalized(1, vec![C::new(1.0, 0.0), C::new(1.0, 0.0)]).unwrap();
        let m = measure(&s, 0).unwrap();
        assert!((m.p_down - 0.5).abs() < 1e-15 && (m.p_up - 0.5).abs() < 1e-15);
        assert_eq!(m.post_up.unwrap(), StateVector::basis(1, 1).unwrap());
    }
}
