use serde::{Deserialize, Serialize};

use crate::params::{solve_final_beta, FinalSolution};
use crate::scalar::{cis, i_unit, Real, C};
use crate::ParamError;

/// Whether parameters must sit on the integer constraint manifold or may be tuned off it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamMode {
    #[default]
    Constraint,
    Relaxed,
}

/// Excitation-parity neuron: β = kA, J = ±√(l²−k²)A, τ = π/A, drive at 2β.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct ExcNeuronParams<T> {
    pub k: T,
    pub l: T,
    pub gamma: T,
    pub amplitude: T,
    pub j_sign: i32,
    pub mode: ParamMode,
    pub detuning_floor: T,
}

impl<T: Real> Default for ExcNeuronParams<T> {
    fn default() -> Self {
        Self::new(T::of(8.0), T::of(17.0))
    }
}

impl<T: Real> ExcNeuronParams<T> {
    /// γ = 1, A = 1, positive J, constraint mode, detuning floor 10.
    pub fn new(k: T, l: T) -> Self {
        Self {
            k,
            l,
            gamma: T::one(),
            amplitude: T::one(),
            j_sign: 1,
            mode: ParamMode::Constraint,
            detuning_floor: T::of(10.0),
        }
    }

    pub fn relaxed(mut self) -> Self {
        self.mode = ParamMode::Relaxed;
        self
    }

    pub fn beta(&self) -> T {
        self.k * self.amplitude
    }

    pub fn j(&self) -> T {
        T::of(self.j_sign as f64) * (self.l * self.l - self.k * self.k).max(T::zero()).sqrt() * self.amplitude
    }

    pub fn tau(&self) -> T {
        T::PI() / self.amplitude
    }

    pub fn drive_frequency(&self) -> T {
        T::of(2.0) * self.beta()
    }

    /// Transition detunings over the drive amplitude: (Δ₀, Δ₋, Δ₊).
    pub fn detuning_ratios(&self) -> [(&'static str, T); 3] {
        let two = T::of(2.0);
        let (b, j, a) = (self.beta(), self.j(), self.amplitude);
        let e = (j * j + b * b).sqrt();
        [
            ("delta_0", (two * b).abs() / a),
            ("delta_minus", (two * b - two * e).abs() / a),
            ("delta_plus", (two * b + two * e).abs() / a),
        ]
    }

    /// Ratio of the flipped-back Φ±|↑⟩ amplitude to the reference Ψ±|↓⟩ amplitude
    /// after bare evolution: −i(−1)^{k+l}·e^{−iγJτ}.
    pub fn flip_back_factor(&self) -> C<T> {
        let parity = parity_sign::<T>(self.k.round() + self.l.round());
        -i_unit::<T>() * cis(-self.gamma * self.j() * self.tau()) * parity
    }

    /// Output phase correction φ applied as diag(1, e^{iφ}); π/2 for Pythagorean γ = 1.
    pub fn correction_phase(&self) -> T {
        -self.flip_back_factor().arg()
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        positive("amplitude", self.amplitude)?;
        finite("gamma", self.gamma)?;
        finite("k", self.k)?;
        finite("l", self.l)?;
        if self.j_sign != 1 && self.j_sign != -1 {
            return Err(ParamError::BadSign(self.j_sign));
        }
        if !(self.k > T::zero() && self.l > self.k) {
            return Err(ParamError::Degenerate { k: self.k.as_f64(), l: self.l.as_f64() });
        }
        if self.mode == ParamMode::Constraint {
            integer("k", self.k)?;
            integer("l", self.l)?;
            if (self.gamma - T::one()).abs() < T::of(1e-12) {
                let root = (self.l * self.l - self.k * self.k).sqrt();
                if (root - root.round()).abs() > T::of(1e-9) {
                    return Err(ParamError::NonPythagorean {
                        k: self.k.as_f64(),
                        l: self.l.as_f64(),
                        root: root.as_f64(),
                    });
                }
            }
        }
        for (name, ratio) in self.detuning_ratios() {
            if ratio < self.detuning_floor {
                return Err(ParamError::DetuningBelowFloor {
                    transition: name,
                    ratio: ratio.as_f64(),
                    floor: self.detuning_floor.as_f64(),
                });
            }
        }
        Ok(())
    }
}

/// Exchange convention of the phase neuron. `Standard` uses J = 2nB inside the (J/2)
/// exchange prefactor; `Doubled` uses J = 4nB, the normalization that reproduces the
/// published phase-neuron fidelities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeScale {
    Standard,
    #[default]
    Doubled,
}

impl ExchangeScale {
    pub fn factor(self) -> f64 {
        match self {
            ExchangeScale::Standard => 2.0,
            ExchangeScale::Doubled => 4.0,
        }
    }
}

/// Floors for the hierarchy 1 ≪ 4m ≪ 2n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct HierarchyFloors<T> {
    pub min_four_m: T,
    pub min_ratio: T,
    /// 2n/4m below this passes with a warning
    pub headroom: T,
}

impl<T: Real> Default for HierarchyFloors<T> {
    fn default() -> Self {
        Self { min_four_m: T::of(8.0), min_ratio: T::of(5.0), headroom: T::of(10.0) }
    }
}

/// Phase neuron: δ = 2mB, J = 2nB (or 4nB, see [`ExchangeScale`]), τ = π/(2B).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct PhaseNeuronParams<T> {
    pub m: T,
    pub n: T,
    pub amplitude: T,
    pub gamma: T,
    pub exchange: ExchangeScale,
    pub mode: ParamMode,
    pub floors: HierarchyFloors<T>,
}

impl<T: Real> Default for PhaseNeuronParams<T> {
    fn default() -> Self {
        Self::new(T::of(3.0), T::of(82.0))
    }
}

impl<T: Real> PhaseNeuronParams<T> {
    /// B = 1, γ = 1, doubled exchange, constraint mode, default floors.
    pub fn new(m: T, n: T) -> Self {
        Self {
            m,
            n,
            amplitude: T::one(),
            gamma: T::one(),
            exchange: ExchangeScale::default(),
            mode: ParamMode::Constraint,
            floors: HierarchyFloors::default(),
        }
    }

    pub fn relaxed(mut self) -> Self {
        self.mode = ParamMode::Relaxed;
        self
    }

    pub fn with_exchange(mut self, exchange: ExchangeScale) -> Self {
        self.exchange = exchange;
        self
    }

    pub fn j(&self) -> T {
        T::of(self.exchange.factor()) * self.n * self.amplitude
    }

    pub fn delta(&self) -> T {
        T::of(2.0) * self.m * self.amplitude
    }

    pub fn tau(&self) -> T {
        T::PI() / (T::of(2.0) * self.amplitude)
    }

    /// 2n/4m
    pub fn hierarchy_ratio(&self) -> T {
        (T::of(2.0) * self.n) / (T::of(4.0) * self.m)
    }

    /// Output correction i(−1)^m applied to |↑⟩ after the second Hadamard.
    pub fn correction_phase(&self) -> T {
        T::FRAC_PI_2() + T::PI() * self.m.round()
    }

    /// Target amplitude of |minus⟩|↑⟩ → |minus⟩|↓⟩: i(−1)^{m+1}.
    pub fn flip_back_factor(&self) -> C<T> {
        i_unit::<T>() * parity_sign::<T>(self.m.round() + T::one())
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        positive("amplitude", self.amplitude)?;
        finite("gamma", self.gamma)?;
        finite("m", self.m)?;
        finite("n", self.n)?;
        if !(self.m > T::zero() && self.n > self.m) {
            return Err(ParamError::Ordering { m: self.m.as_f64(), n: self.n.as_f64() });
        }
        if self.mode == ParamMode::Constraint {
            integer("m", self.m)?;
            integer("n", self.n)?;
        }
        let four_m = T::of(4.0) * self.m;
        if four_m < self.floors.min_four_m {
            return Err(ParamError::HierarchyViolation {
                ratio: "4m",
                value: four_m.as_f64(),
                floor: self.floors.min_four_m.as_f64(),
            });
        }
        let ratio = self.hierarchy_ratio();
        if ratio < self.floors.min_ratio {
            return Err(ParamError::HierarchyViolation {
                ratio: "2n/4m",
                value: ratio.as_f64(),
                floor: self.floors.min_ratio.as_f64(),
            });
        }
        Ok(())
    }

    /// Soft findings that do not invalidate the parameters.
    pub fn warnings(&self) -> Vec<String> {
        let ratio = self.hierarchy_ratio();
        if ratio < self.floors.headroom {
            vec![format!(
                "2n/4m = {} is below the recommended headroom {}",
                ratio,
                self.floors.headroom
            )]
        } else {
            Vec::new()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalVariant {
    /// flips the output when both inputs are |↑⟩
    DetectUpUp,
    /// flips the output when both inputs are |↓⟩
    DetectDownDown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveMode {
    /// single co-rotating drive term
    #[default]
    Rotating,
    /// static field Ω/2·σ^z on the output plus a cosine drive at Ω ± 2β
    LocalField,
}

/// Final-layer detector. β follows from (γ, l, s, parity_k); J = ±√(l²A² − β²).
/// The down-down variant uses the mirrored coupling −β.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, bound(deserialize = "T: Real + Deserialize<'de>"))]
pub struct FinalLayerParams<T> {
    pub variant: FinalVariant,
    pub drive_mode: DriveMode,
    pub l: i64,
    pub s: i64,
    pub parity_k: i64,
    pub gamma: T,
    pub amplitude: T,
    pub omega: T,
    pub local_field_floor: T,
}

impl<T: Real> Default for FinalLayerParams<T> {
    fn default() -> Self {
        Self::new(FinalVariant::DetectUpUp, 17, 5, 0)
    }
}

impl<T: Real> FinalLayerParams<T> {
    /// Rotating drive, γ = 1, A = 1.
    pub fn new(variant: FinalVariant, l: i64, s: i64, parity_k: i64) -> Self {
        Self {
            variant,
            drive_mode: DriveMode::Rotating,
            l,
            s,
            parity_k,
            gamma: T::one(),
            amplitude: T::one(),
            omega: T::zero(),
            local_field_floor: T::of(20.0),
        }
    }

    pub fn with_local_field(mut self, omega: T) -> Self {
        self.drive_mode = DriveMode::LocalField;
        self.omega = omega;
        self
    }

    pub fn solution(&self) -> Result<FinalSolution<T>, ParamError> {
        solve_final_beta(self.gamma, self.l, self.s, self.parity_k, self.amplitude)
    }

    /// Coupling actually placed on σ₂^zσ₃^z (mirrored for the down-down detector).
    pub fn beta(&self) -> Result<T, ParamError> {
        let b = self.solution()?.beta;
        Ok(match self.variant {
            FinalVariant::DetectUpUp => b,
            FinalVariant::DetectDownDown => -b,
        })
    }

    pub fn j(&self) -> Result<T, ParamError> {
        Ok(self.solution()?.j)
    }

    pub fn tau(&self) -> T {
        T::PI() / self.amplitude
    }

    /// Local field used by the Hamiltonian; zero in rotating mode.
    pub fn effective_omega(&self) -> T {
        match self.drive_mode {
            DriveMode::Rotating => T::zero(),
            DriveMode::LocalField => self.omega,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        positive("amplitude", self.amplitude)?;
        finite("gamma", self.gamma)?;
        if self.l <= 0 {
            return Err(ParamError::NonPositive { name: "l", value: self.l as f64 });
        }
        self.solution()?;
        if self.drive_mode == DriveMode::LocalField {
            finite("omega", self.omega)?;
            let ratio = self.omega.abs() / self.amplitude;
            if ratio < self.local_field_floor {
                return Err(ParamError::LocalFieldBelowFloor {
                    ratio: ratio.as_f64(),
                    floor: self.local_field_floor.as_f64(),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn parity_sign<T: Real>(x: T) -> T {
    let r = x.round().to_i64().unwrap_or(0);
    if r.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<(), ParamError> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(ParamError::NonPositive { name, value: v.as_f64() })
    }
}

fn finite<T: Real>(name: &'static str, v: T) -> Result<(), ParamError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(ParamError::NonFinite { name, value: v.as_f64() })
    }
}

fn integer<T: Real>(name: &'static str, v: T) -> Result<(), ParamError> {
    if (v - v.round()).abs() > T::of(1e-9) {
        Err(ParamError::NonInteger { name, value: v.as_f64() })
    } else {
        Ok(())
    }
}
