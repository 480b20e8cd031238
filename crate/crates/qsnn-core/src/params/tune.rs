use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::neuron::{evaluate_neuron, NeuronParams};
use crate::scalar::Real;
use crate::{Error, Result};

/// Relative half-width of the search box around the starting point.
const BOX: f64 = 0.02;
/// Relative size of the initial simplex edges.
const INITIAL_STEP: f64 = 0.01;
/// Stop once the simplex fidelities agree to this level.
const F_SPREAD: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TuneStatus {
    Converged,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TuneResult<T> {
    pub initial: NeuronParams<T>,
    pub tuned: NeuronParams<T>,
    pub initial_fidelity: T,
    pub final_fidelity: T,
    pub evaluations: usize,
    pub status: TuneStatus,
}

struct Evaluator<T: Real> {
    start: NeuronParams<T>,
    lo: [T; 2],
    hi: [T; 2],
    tol: T,
    budget: usize,
    count: usize,
    best: ([T; 2], T),
}

impl<T: Real> Evaluator<T> {
    fn exhausted(&self) -> bool {
        self.count >= self.budget
    }

    fn clamp(&self, x: [T; 2]) -> [T; 2] {
        [x[0].max(self.lo[0]).min(self.hi[0]), x[1].max(self.lo[1]).min(self.hi[1])]
    }

    fn eval(&mut self, x: [T; 2]) -> Result<T> {
        self.count += 1;
        let p = with_coordinates(&self.start, x);
        let f = match evaluate_neuron(&p, self.tol) {
            Ok(r) => r.f_avg,
            Err(e) if e.is_validation() => T::neg_infinity(),
            Err(e) => return Err(e),
        };
        if f > self.best.1 {
            self.best = (x, f);
        }
        Ok(f)
    }
}

/// Nelder–Mead over (k, l) or (m, n) in relaxed mode, maximizing average fidelity inside a
/// ±2% box. The initial simplex orientation is drawn from `seed`; `budget` counts fidelity
/// evaluations including the starting point. Never returns a point worse than the start.
pub fn tune<T: Real>(initial: &NeuronParams<T>, budget: usize, seed: u64, tol: T) -> Result<TuneResult<T>> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let start = relaxed(initial)?;
    start.validate()?;
    let x0 = coordinates(&start)?;
    let mut ev = Evaluator {
        start,
        lo: x0.map(|v| v - v.abs() * T::of(BOX)),
        hi: x0.map(|v| v + v.abs() * T::of(BOX)),
        tol,
        budget,
        count: 0,
        best: (x0, T::neg_infinity()),
    };
    let f0 = ev.eval(x0)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = T::of(rng.random::<f64>() * std::f64::consts::TAU);
    let (c, s) = (theta.cos(), theta.sin());
    let step = x0.map(|v| v.abs() * T::of(INITIAL_STEP));
    let mut simplex = vec![(x0, f0)];
    for d in [[c, s], [-s, c]] {
        if ev.exhausted() {
            break;
        }
        let x = ev.clamp([x0[0] + step[0] * d[0], x0[1] + step[1] * d[1]]);
        simplex.push((x, ev.eval(x)?));
    }
    let status = if simplex.len() == 3 { nelder_mead(&mut ev, &mut simplex)? } else { TuneStatus::BudgetExhausted };

    let (tuned, final_fidelity) =
        if ev.best.1 > f0 { (with_coordinates(&start, ev.best.0), ev.best.1) } else { (*initial, f0) };
    Ok(TuneResult { initial: *initial, tuned, initial_fidelity: f0, final_fidelity, evaluations: ev.count, status })
}

/// Standard coefficients: reflection 1, expansion 2, contraction ½, shrink ½.
fn nelder_mead<T: Real>(ev: &mut Evaluator<T>, simplex: &mut [([T; 2], T)]) -> Result<TuneStatus> {
    let half = T::of(0.5);
    let lerp = |a: [T; 2], b: [T; 2], t: T| [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t];
    loop {
        // best first
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        if (simplex[0].1 - simplex[2].1).abs() < T::of(F_SPREAD) {
            return Ok(TuneStatus::Converged);
        }
        if ev.exhausted() {
            return Ok(TuneStatus::BudgetExhausted);
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, half);
        let worst = simplex[2];
        let xr = ev.clamp(lerp(worst.0, centroid, T::of(2.0)));
        let fr = ev.eval(xr)?;
        if fr > simplex[0].1 {
            if ev.exhausted() {
                simplex[2] = (xr, fr);
                continue;
            }
            let xe = ev.clamp(lerp(worst.0, centroid, T::of(3.0)));
            let fe = ev.eval(xe)?;
            simplex[2] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (xr, fr);
        } else {
            if ev.exhausted() {
                continue;
            }
            let (xc, fc) = if fr > worst.1 {
                let x = ev.clamp(lerp(centroid, xr, half));
                (x, ev.eval(x)?)
            } else {
                let x = lerp(centroid, worst.0, half);
                (x, ev.eval(x)?)
            };
            if fc > worst.1.max(fr) {
                simplex[2] = (xc, fc);
            } else {
                let anchor = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    if ev.exhausted() {
                        break;
                    }
                    let x = lerp(anchor, v.0, half);
                    *v = (x, ev.eval(x)?);
                }
            }
        }
    }
}

fn relaxed<T: Real>(p: &NeuronParams<T>) -> Result<NeuronParams<T>> {
    Ok(match *p {
        NeuronParams::Excitation(e) => NeuronParams::Excitation(e.relaxed()),
        NeuronParams::Phase(ph) => NeuronParams::Phase(ph.relaxed()),
        NeuronParams::Final(_) => {
            return Err(Error::InvalidArgument("final layers have no continuous parameters to tune".into()))
        }
    })
}

fn coordinates<T: Real>(p: &NeuronParams<T>) -> Result<[T; 2]> {
    match p {
        NeuronParams::Excitation(e) => Ok([e.k, e.l]),
        NeuronParams::Phase(ph) => Ok([ph.m, ph.n]),
        NeuronParams::Final(_) => Err(Error::InvalidArgument("final layers cannot be tuned".into())),
    }
}

fn with_coordinates<T: Real>(p: &NeuronParams<T>, x: [T; 2]) -> NeuronParams<T> {
    match *p {
        NeuronParams::Excitation(e) => NeuronParams::Excitation(crate::neuron::ExcNeuronParams { k: x[0], l: x[1], ..e }),
        NeuronParams::Phase(ph) => NeuronParams::Phase(crate::neuron::PhaseNeuronParams { m: x[0], n: x[1], ..ph }),
        NeuronParams::Final(f) => NeuronParams::Final(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neuron::{ParamMode, PhaseNeuronParams};

    #[test]
    fn budget_one_returns_start() {
        let p: NeuronParams<f64> = PhaseNeuronParams::new(3.0, 82.0).into();
        let r = tune(&p, 1, 0, 1e-8).unwrap();
        assert_eq!(r.evaluations, 1);
        assert_eq!(r.tuned, r.initial);
        assert_eq!(r.final_fidelity, r.initial_fidelity);
        assert_eq!(r.status, TuneStatus::BudgetExhausted);
    }

    #[test]
    fn tuning_is_monotone_and_reproducible() {
        let p: NeuronParams<f64> = PhaseNeuronParams::new(3.0, 82.0).into();
        let a = tune(&p, 25, 7, 1e-8).unwrap();
        let b = tune(&p, 25, 7, 1e-8).unwrap();
        assert_eq!(a, b);
        assert!(a.final_fidelity >= a.initial_fidelity);
        assert!(a.evaluations <= 25);
        if let NeuronParams::Phase(t) = a.tuned {
            assert!(a.final_fidelity == a.initial_fidelity || t.mode == ParamMode::Relaxed);
            assert!((t.m / 3.0 - 1.0).abs() <= BOX + 1e-12);
        }
    }
}
