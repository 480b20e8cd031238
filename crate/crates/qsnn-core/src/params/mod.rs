//! Constraint solvers, detuning margins, Pythagorean triples and the local tuner.

mod tune;

use serde::{Deserialize, Serialize};

pub use tune::{tune, TuneResult, TuneStatus};

use crate::neuron::{
    DriveMode, ExcNeuronParams, ExchangeScale, HierarchyFloors, NeuronKind, NeuronParams, ParamMode,
    PhaseNeuronParams,
};
use crate::scalar::Real;
use crate::ParamError;

/// How γ is chosen by [`solve_exc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMode {
    /// γ = 1, requires √(l²−k²) to be an integer
    Unity,
    /// γ = sign·(2s − k − l + ½)/√(l²−k²)
    General { s: i64, sign: i32 },
}

pub fn solve_exc<T: Real>(k: i64, l: i64, amplitude: T, gamma_mode: GammaMode) -> Result<ExcNeuronParams<T>, ParamError> {
    if !(k > 0 && l > k) {
        return Err(ParamError::Degenerate { k: k as f64, l: l as f64 });
    }
    if !(amplitude > T::zero() && amplitude.is_finite()) {
        return Err(ParamError::NonPositive { name: "amplitude", value: amplitude.as_f64() });
    }
    let (kf, lf) = (T::of(k as f64), T::of(l as f64));
    let root = (lf * lf - kf * kf).sqrt();
    let gamma = match gamma_mode {
        GammaMode::Unity => {
            let diff = l * l - k * k;
            let r = integer_sqrt(diff);
            if r * r != diff {
                return Err(ParamError::NonPythagorean { k: k as f64, l: l as f64, root: root.as_f64() });
            }
            T::one()
        }
        GammaMode::General { s, sign } => {
            if sign != 1 && sign != -1 {
                return Err(ParamError::BadSign(sign));
            }
            T::of(sign as f64) * (T::of((2 * s - k - l) as f64) + T::of(0.5)) / root
        }
    };
    Ok(ExcNeuronParams { gamma, amplitude, ..ExcNeuronParams::new(kf, lf) })
}

/// J = 2nB (or 4nB), δ = 2mB, τ = π/(2B), hierarchy floors checked. Soft findings are
/// returned alongside.
pub fn solve_phase<T: Real>(
    m: T,
    n: T,
    amplitude: T,
    floors: HierarchyFloors<T>,
    exchange: ExchangeScale,
) -> Result<(PhaseNeuronParams<T>, Vec<String>), ParamError> {
    let integral = (m - m.round()).abs() < T::of(1e-9) && (n - n.round()).abs() < T::of(1e-9);
    let params = PhaseNeuronParams {
        amplitude,
        floors,
        exchange,
        mode: if integral { ParamMode::Constraint } else { ParamMode::Relaxed },
        ..PhaseNeuronParams::new(m, n)
    };
    params.validate()?;
    let warnings = params.warnings();
    Ok((params, warnings))
}

/// Final-layer coupling from the phase-matching conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalSolution<T> {
    pub beta: T,
    pub j: T,
    pub discriminant: T,
}

/// β = A/(1+γ²)·((2s−l) + (−1)^k γ √(l²(1+γ²) − (2s−l)²)) and J = ±√(l²A² − β²), with the
/// sign of J chosen so that γJ = (2s−l)A − β holds without squaring.
pub fn solve_final_beta<T: Real>(gamma: T, l: i64, s: i64, parity_k: i64, amplitude: T) -> Result<FinalSolution<T>, ParamError> {
    let lf = T::of(l as f64);
    let c = T::of((2 * s - l) as f64);
    let g2 = T::one() + gamma * gamma;
    let discriminant = lf * lf * g2 - c * c;
    if discriminant < T::zero() {
        return Err(ParamError::NoRealSolution { discriminant: discriminant.as_f64() });
    }
    let sign = if parity_k.rem_euclid(2) == 0 { T::one() } else { -T::one() };
    let beta = amplitude / g2 * (c + sign * gamma * discriminant.sqrt());
    let bound = (lf * amplitude).abs();
    let scale = bound.max(T::one());
    let slack = T::of(1e-10) * scale;
    if beta.abs() > bound + slack {
        return Err(ParamError::BetaOutOfBound { beta: beta.as_f64(), bound: bound.as_f64() });
    }
    let magnitude = (bound * bound - beta * beta).max(T::zero()).sqrt();
    let target = c * amplitude - beta;
    let consistency = T::of(1e-9) * scale;
    let j = [magnitude, -magnitude]
        .into_iter()
        .find(|&j| (gamma * j - target).abs() <= consistency)
        .ok_or(ParamError::SignInconsistency)?;
    Ok(FinalSolution { beta, j, discriminant })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetuningRatio<T> {
    pub transition: String,
    pub ratio: T,
}

/// Detuning-to-drive ratios of the off-resonant transitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetuningReport<T> {
    pub kind: NeuronKind,
    pub ratios: Vec<DetuningRatio<T>>,
}

impl<T: Real> DetuningReport<T> {
    pub fn get(&self, transition: &str) -> Option<T> {
        self.ratios.iter().find(|r| r.transition == transition).map(|r| r.ratio)
    }

    pub fn min_ratio(&self) -> T {
        self.ratios.iter().map(|r| r.ratio).fold(T::infinity(), T::min)
    }
}

/// Excitation neuron: Δ₀/A, Δ₋/A, Δ₊/A. Phase neuron: 2δ/B. Final layers: the mirrored
/// even sector (4|β|/A), the odd-sector flips (|2β|, |2β ∓ 2lA| over A) and, with a local
/// field, the counter-rotating term 2|Ω|/A.
pub fn detuning_report<T: Real>(params: &NeuronParams<T>) -> Result<DetuningReport<T>, ParamError> {
    let entry = |name: &str, ratio: T| DetuningRatio { transition: name.to_string(), ratio };
    let ratios = match params {
        NeuronParams::Excitation(p) => p.detuning_ratios().iter().map(|&(n, r)| entry(n, r)).collect(),
        NeuronParams::Phase(p) => vec![entry("two_delta", T::of(2.0) * p.delta().abs() / p.amplitude)],
        NeuronParams::Final(p) => {
            let beta = p.beta()?;
            let a = p.amplitude;
            let two = T::of(2.0);
            let la = T::of(p.l as f64) * a;
            let mut v = vec![
                entry("mirror_sector", T::of(4.0) * beta.abs() / a),
                entry("odd_zero", (two * beta).abs() / a),
                entry("odd_minus", (two * beta - two * la).abs() / a),
                entry("odd_plus", (two * beta + two * la).abs() / a),
            ];
            if p.drive_mode == DriveMode::LocalField {
                v.push(entry("counter_rotating", two * p.omega.abs() / a));
            }
            v
        }
    };
    Ok(DetuningReport { kind: params.kind(), ratios })
}

/// Pythagorean triples (a, b, c) with a < b < c ≤ `max_c`, from Euclid's formula including
/// non-primitive multiples, sorted by c then a.
pub fn pythagorean_triples(max_c: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p < max_c.saturating_mul(2).max(1) {
        for q in 1..p {
            if (p - q).is_multiple_of(2) || gcd(p, q) != 1 {
                continue;
            }
            let (a, b, c) = (p * p - q * q, 2 * p * q, p * p + q * q);
            if c > max_c {
                continue;
            }
            let (a, b) = (a.min(b), a.max(b));
            let mut mult = 1;
            while mult * c <= max_c {
                out.push((mult * a, mult * b, mult * c));
                mult += 1;
            }
        }
        p += 1;
    }
    out.sort_by_key(|&(a, _, c)| (c, a));
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn integer_sqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}
