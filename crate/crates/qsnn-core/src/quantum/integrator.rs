//! Schrödinger-equation propagation: an adaptive Dormand–Prince 8(5,3) integrator,
//! a fixed-step variant of the same tableau, and a piecewise-constant exponential
//! fallback.

use num_traits::{One, Zero};

use super::dop853::{A, B, C as NODES, E3, E5, STAGES};
use super::{CompiledHamiltonian, DenseOperator, StateVector, TimeDependentHamiltonian};
use crate::scalar::{Real, C};
use crate::{Error, Result};

/// Error control for the adaptive integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
}

impl<T: Real> IntegratorOptions<T> {
    /// Local tolerances two orders below the requested global 2-norm error `tol`.
    pub fn from_tol(tol: T) -> Self {
        let floor = T::epsilon() * T::of(100.0);
        let local = (tol * T::of(0.01)).max(floor);
        Self { rtol: local, atol: local, max_steps: 5_000_000 }
    }
}

pub fn evolve<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    duration: T,
    tol: T,
) -> Result<StateVector<T>> {
    evolve_between(state, h, T::zero(), duration, tol)
}

/// Evolves from absolute time `t0` to `t1`; drive phases refer to t = 0.
pub fn evolve_between<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    t0: T,
    t1: T,
    tol: T,
) -> Result<StateVector<T>> {
    check_tol(tol)?;
    evolve_with_options(state, h, t0, t1, &IntegratorOptions::from_tol(tol))
}

pub fn evolve_with_options<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    t0: T,
    t1: T,
    opts: &IntegratorOptions<T>,
) -> Result<StateVector<T>> {
    check_inputs(state, h, t0, t1)?;
    let compiled = h.compile();
    let mut y = state.amplitudes().to_vec();
    integrate_adaptive(&compiled, &mut y, t0, t1, opts)?;
    check_drift(&y, compiled.dim(), &[state.norm()])?;
    Ok(StateVector::from_raw(state.num_qubits(), y))
}

/// States at each of the increasing absolute `times`, starting from `state` at `times[0]`.
pub fn evolve_samples<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    times: &[T],
    tol: T,
) -> Result<Vec<StateVector<T>>> {
    check_tol(tol)?;
    let opts = IntegratorOptions::from_tol(tol);
    let compiled = h.compile();
    let mut out = Vec::with_capacity(times.len());
    let mut y = state.amplitudes().to_vec();
    for (i, &t) in times.iter().enumerate() {
        if i > 0 {
            check_inputs(state, h, times[i - 1], t)?;
            integrate_adaptive(&compiled, &mut y, times[i - 1], t, &opts)?;
            check_drift(&y, compiled.dim(), &[state.norm()])?;
        }
        out.push(StateVector::from_raw(state.num_qubits(), y.clone()));
    }
    Ok(out)
}

pub fn propagator<T: Real>(h: &TimeDependentHamiltonian<T>, duration: T, tol: T) -> Result<DenseOperator<T>> {
    propagator_between(h, T::zero(), duration, tol)
}

/// U(t1, t0), built by evolving every computational basis state as one block.
pub fn propagator_between<T: Real>(
    h: &TimeDependentHamiltonian<T>,
    t0: T,
    t1: T,
    tol: T,
) -> Result<DenseOperator<T>> {
    check_tol(tol)?;
    let probe = StateVector::ground(h.num_qubits())?;
    check_inputs(&probe, h, t0, t1)?;
    let compiled = h.compile();
    let dim = compiled.dim();
    let mut y = vec![C::zero(); dim * dim];
    for j in 0..dim {
        y[j * dim + j] = C::one();
    }
    integrate_adaptive(&compiled, &mut y, t0, t1, &IntegratorOptions::from_tol(tol))?;
    check_drift(&y, dim, &vec![T::one(); dim])?;
    let u = DenseOperator::from_fn(dim, |r, col| y[col * dim + r]);
    u.ensure_unitary(T::of(1e-8).max(T::epsilon() * T::of(1e4)))?;
    Ok(u)
}

/// Same tableau with `steps` equal steps and no error control; no drift check.
pub fn evolve_fixed_step<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    t0: T,
    t1: T,
    steps: usize,
) -> Result<StateVector<T>> {
    check_inputs(state, h, t0, t1)?;
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let compiled = h.compile();
    let mut y = state.amplitudes().to_vec();
    let n = y.len();
    let mut k = vec![vec![C::zero(); n]; STAGES];
    let mut tmp = vec![C::zero(); n];
    let dt = (t1 - t0) / T::of(steps as f64);
    for s in 0..steps {
        let t = t0 + dt * T::of(s as f64);
        compiled.derivative(t, &y, &mut k[0]);
        let y_new = rk_step(&compiled, &y, t, dt, &mut k, &mut tmp);
        y = y_new;
    }
    Ok(StateVector::from_raw(state.num_qubits(), y))
}

/// Piecewise-constant propagation: each of `steps` slices applies exp(−i·dt·H(t_mid))
/// through its Taylor series.
pub fn evolve_piecewise_exponential<T: Real>(
    state: &StateVector<T>,
    h: &TimeDependentHamiltonian<T>,
    t0: T,
    t1: T,
    steps: usize,
) -> Result<StateVector<T>> {
    check_inputs(state, h, t0, t1)?;
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let compiled = h.compile();
    let dt = (t1 - t0) / T::of(steps as f64);
    let sub = (h.norm_bound() * dt.abs()).ceil().to_usize().unwrap_or(1).max(1);
    let sub_dt = dt / T::of(sub as f64);
    let mut y = state.amplitudes().to_vec();
    let mut term = vec![C::zero(); y.len()];
    let mut next = vec![C::zero(); y.len()];
    for s in 0..steps {
        let tm = t0 + dt * (T::of(s as f64) + T::of(0.5));
        for _ in 0..sub {
            term.copy_from_slice(&y);
            for order in 1..=40 {
                compiled.derivative(tm, &term, &mut next);
                let f = sub_dt / T::of(order as f64);
                let mut size = T::zero();
                for (tv, nv) in term.iter_mut().zip(&next) {
                    *tv = nv * f;
                    size += tv.norm_sqr();
                }
                for (yv, tv) in y.iter_mut().zip(&term) {
                    *yv += tv;
                }
                if size.sqrt() < T::epsilon() * T::of(1e-2) {
                    break;
                }
            }
        }
    }
    Ok(StateVector::from_raw(state.num_qubits(), y))
}

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if !tol.is_finite() || tol <= T::zero() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn check_inputs<T: Real>(state: &StateVector<T>, h: &TimeDependentHamiltonian<T>, t0: T, t1: T) -> Result<()> {
    if state.num_qubits() != h.num_qubits() {
        return Err(Error::DimensionMismatch { expected: h.num_qubits(), found: state.num_qubits() });
    }
    if !t0.is_finite() || !t1.is_finite() || t1 < t0 {
        return Err(Error::InvalidArgument(format!("require finite t1 >= t0 (got {t0}, {t1})")));
    }
    Ok(())
}

fn check_drift<T: Real>(y: &[C<T>], dim: usize, initial: &[T]) -> Result<()> {
    let worst = y
        .chunks_exact(dim)
        .zip(initial)
        .map(|(col, &n0)| (col.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt() - n0).abs())
        .fold(T::zero(), T::max);
    if worst > T::drift_limit() || !worst.is_finite() {
        return Err(Error::NormDriftExceeded { drift: worst.as_f64() });
    }
    Ok(())
}

/// One step of the 12-stage tableau; `k[0]` must hold f(t, y) on entry.
fn rk_step<T: Real>(
    h: &CompiledHamiltonian<T>,
    y: &[C<T>],
    t: T,
    dt: T,
    k: &mut [Vec<C<T>>],
    tmp: &mut [C<T>],
) -> Vec<C<T>> {
    for s in 1..STAGES {
        tmp.copy_from_slice(y);
        for j in 0..s {
            let a = A[s][j];
            if a == 0.0 {
                continue;
            }
            let w = dt * T::of(a);
            for (x, kv) in tmp.iter_mut().zip(&k[j]) {
                *x += kv * w;
            }
        }
        h.derivative(t + dt * T::of(NODES[s]), tmp, &mut k[s]);
    }
    let mut y_new = y.to_vec();
    for (j, kj) in k.iter().enumerate() {
        if B[j] == 0.0 {
            continue;
        }
        let w = dt * T::of(B[j]);
        for (x, kv) in y_new.iter_mut().zip(kj) {
            *x += kv * w;
        }
    }
    y_new
}

fn rms_scaled<T: Real>(v: &[C<T>], scale: &[T]) -> T {
    let n = T::of(v.len() as f64);
    (v.iter().zip(scale).map(|(a, s)| a.norm_sqr() / (*s * *s)).sum::<T>() / n).sqrt()
}

fn initial_step<T: Real>(
    h: &CompiledHamiltonian<T>,
    y: &[C<T>],
    f0: &[C<T>],
    t0: T,
    span: T,
    opts: &IntegratorOptions<T>,
) -> T {
    let scale: Vec<T> = y.iter().map(|a| opts.atol + a.norm() * opts.rtol).collect();
    let d0 = rms_scaled(y, &scale);
    let d1 = rms_scaled(f0, &scale);
    let h0 = if d0 < T::of(1e-5) || d1 < T::of(1e-5) { T::of(1e-6) } else { T::of(0.01) * d0 / d1 };
    let h0 = h0.min(span);
    let y1: Vec<C<T>> = y.iter().zip(f0).map(|(a, f)| a + f * h0).collect();
    let mut f1 = vec![C::zero(); y.len()];
    h.derivative(t0 + h0, &y1, &mut f1);
    let diff: Vec<C<T>> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = rms_scaled(&diff, &scale) / h0;
    let h1 = if d1 <= T::of(1e-15) && d2 <= T::of(1e-15) {
        (h0 * T::of(1e-3)).max(T::of(1e-6))
    } else {
        (T::of(0.01) / d1.max(d2)).powf(T::one() / T::of(8.0))
    };
    (h0 * T::of(100.0)).min(h1).min(span)
}

fn integrate_adaptive<T: Real>(
    h: &CompiledHamiltonian<T>,
    y: &mut Vec<C<T>>,
    t0: T,
    t1: T,
    opts: &IntegratorOptions<T>,
) -> Result<usize> {
    let span = t1 - t0;
    if span <= T::zero() {
        return Ok(0);
    }
    let n = y.len();
    let mut k = vec![vec![C::zero(); n]; STAGES];
    let mut tmp = vec![C::zero(); n];
    let mut f_new = vec![C::zero(); n];
    h.derivative(t0, y, &mut k[0]);
    let mut dt = initial_step(h, y, &k[0], t0, span, opts);
    let mut t = t0;
    let mut steps = 0usize;
    let (safety, min_factor, max_factor) = (T::of(0.9), T::of(0.2), T::of(10.0));
    let exponent = -T::one() / T::of(8.0);
    let e3: Vec<T> = E3.iter().map(|&x| T::of(x)).collect();
    let e5: Vec<T> = E5.iter().map(|&x| T::of(x)).collect();
    while t < t1 {
        if steps >= opts.max_steps {
            return Err(Error::StepLimit { max_steps: opts.max_steps, t_end: t1.as_f64() });
        }
        let min_step = T::epsilon() * T::of(10.0) * t.abs().max(T::one());
        let mut rejected = false;
        loop {
            if dt < min_step {
                return Err(Error::StepSizeUnderflow { t: t.as_f64() });
            }
            let last = t + dt >= t1;
            let step = if last { t1 - t } else { dt };
            let y_new = rk_step(h, y, t, step, &mut k, &mut tmp);
            let mut err5 = T::zero();
            let mut err3 = T::zero();
            for i in 0..n {
                let scale = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                let mut a5 = C::<T>::zero();
                let mut a3 = C::<T>::zero();
                for j in 0..STAGES {
                    if e5[j] != T::zero() {
                        a5 += k[j][i] * e5[j];
                    }
                    if e3[j] != T::zero() {
                        a3 += k[j][i] * e3[j];
                    }
                }
                err5 += a5.norm_sqr() / (scale * scale);
                err3 += a3.norm_sqr() / (scale * scale);
            }
            let err = if err5.is_zero() && err3.is_zero() {
                T::zero()
            } else {
                step * err5 / ((err5 + T::of(0.01) * err3) * T::of(n as f64)).sqrt()
            };
            if err < T::one() {
                let mut factor = if err.is_zero() { max_factor } else { max_factor.min(safety * err.powf(exponent)) };
                if rejected {
                    factor = factor.min(T::one());
                }
                t = if last { t1 } else { t + step };
                *y = y_new;
                h.derivative(t, y, &mut f_new);
                std::mem::swap(&mut k[0], &mut f_new);
                dt = step * factor;
                steps += 1;
                break;
            }
            if !err.is_finite() {
                dt *= min_factor;
            } else {
                dt *= min_factor.max(safety * err.powf(exponent));
            }
            rejected = true;
        }
    }
    Ok(steps)
}
