//! Neuron parameter flags shared by `neuron` and `params detuning`.

use clap::{Args, ValueEnum};
use qsnn_core::neuron::{
    DriveMode, ExchangeScale, FinalVariant, HierarchyFloors, ParamMode,
};
use qsnn_core::{ExcNeuronParams, FinalLayerParams, NeuronParams, PhaseNeuronParams};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Exc,
    Phase,
    Final,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExchangeArg {
    /// J = 2nB
    Standard,
    /// J = 4nB
    Doubled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl ParityArg {
    pub fn value(self) -> i64 {
        match self {
            ParityArg::Even => 0,
            ParityArg::Odd => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Upup,
    Downdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DriveArg {
    Rotating,
    LocalField,
}

/// Every neuron parameter; which ones apply depends on the neuron kind.
#[derive(Clone, Debug, Default, Args)]
pub struct ParamFlags {
    /// excitation: β = kA
    #[arg(long)]
    pub k: Option<f64>,
    /// excitation: J = √(l²−k²)A; final layer: integer l
    #[arg(long)]
    pub l: Option<f64>,
    /// exchange anisotropy γ
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// drive amplitude (A or B)
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// excitation: sign of J
    #[arg(long, allow_negative_numbers = true)]
    pub j_sign: Option<i32>,
    /// excitation: minimum detuning-to-drive ratio
    #[arg(long)]
    pub detuning_floor: Option<f64>,
    /// allow non-integer parameters
    #[arg(long)]
    pub relaxed: bool,
    /// phase: δ = 2mB
    #[arg(long)]
    pub m: Option<f64>,
    /// phase: J = 2nB or 4nB
    #[arg(long)]
    pub n: Option<f64>,
    /// phase: exchange scale
    #[arg(long, value_enum)]
    pub exchange: Option<ExchangeArg>,
    /// final layer: integer s of the phase-matching condition
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    /// final layer: parity of k
    #[arg(long, value_enum)]
    pub k_parity: Option<ParityArg>,
    /// final layer: detected pair
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// final layer: drive form
    #[arg(long, value_enum)]
    pub drive: Option<DriveArg>,
    /// final layer: local field Ω (implies --drive local-field)
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
}

impl ParamFlags {
    fn reject(&self, kind: &str, names: &[(&str, bool)]) -> Result<(), Failure> {
        let bad: Vec<String> = names.iter().filter(|(_, set)| *set).map(|(n, _)| format!("--{n}")).collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Failure::Validation(format!("{} not applicable to the {kind} neuron", bad.join(", "))))
        }
    }

    /// Resolves the flags into parameters without validating them.
    pub fn resolve(&self, kind: KindArg) -> Result<NeuronParams, Failure> {
        let mode = if self.relaxed { ParamMode::Relaxed } else { ParamMode::Constraint };
        match kind {
            KindArg::Exc => {
                self.reject(
                    "excitation",
                    &[
                        ("m", self.m.is_some()),
                        ("n", self.n.is_some()),
                        ("exchange", self.exchange.is_some()),
                        ("s", self.s.is_some()),
                        ("k-parity", self.k_parity.is_some()),
                        ("variant", self.variant.is_some()),
                        ("drive", self.drive.is_some()),
                        ("omega", self.omega.is_some()),
                    ],
                )?;
                let d = ExcNeuronParams::new(self.k.unwrap_or(8.0), self.l.unwrap_or(17.0));
                Ok(ExcNeuronParams {
                    gamma: self.gamma.unwrap_or(d.gamma),
                    amplitude: self.amplitude.unwrap_or(d.amplitude),
                    j_sign: self.j_sign.unwrap_or(d.j_sign),
                    detuning_floor: self.detuning_floor.unwrap_or(d.detuning_floor),
                    mode,
                    ..d
                }
                .into())
            }
            KindArg::Phase => {
                self.reject(
                    "phase",
                    &[
                        ("k", self.k.is_some()),
                        ("l", self.l.is_some()),
                        ("j-sign", self.j_sign.is_some()),
                        ("detuning-floor", self.detuning_floor.is_some()),
                        ("s", self.s.is_some()),
                        ("k-parity", self.k_parity.is_some()),
                        ("variant", self.variant.is_some()),
                        ("drive", self.drive.is_some()),
                        ("omega", self.omega.is_some()),
                    ],
                )?;
                let d = PhaseNeuronParams::new(self.m.unwrap_or(3.0), self.n.unwrap_or(82.0));
                Ok(PhaseNeuronParams {
                    gamma: self.gamma.unwrap_or(d.gamma),
                    amplitude: self.amplitude.unwrap_or(d.amplitude),
                    exchange: self.exchange.map(exchange_scale).unwrap_or(d.exchange),
                    floors: HierarchyFloors::default(),
                    mode,
                    ..d
                }
                .into())
            }
            KindArg::Final => {
                self.reject(
                    "final-layer",
                    &[
                        ("k", self.k.is_some()),
                        ("m", self.m.is_some()),
                        ("n", self.n.is_some()),
                        ("exchange", self.exchange.is_some()),
                        ("j-sign", self.j_sign.is_some()),
                        ("detuning-floor", self.detuning_floor.is_some()),
                        ("relaxed", self.relaxed),
                    ],
                )?;
                let l = self.l.unwrap_or(17.0);
                if l.fract() != 0.0 || !l.is_finite() {
                    return Err(Failure::Validation(format!("final layer requires an integer --l (got {l})")));
                }
                let variant = match self.variant.unwrap_or(VariantArg::Upup) {
                    VariantArg::Upup => FinalVariant::DetectUpUp,
                    VariantArg::Downdown => FinalVariant::DetectDownDown,
                };
                let parity = self.k_parity.unwrap_or(ParityArg::Even).value();
                let mut p = FinalLayerParams::new(variant, l as i64, self.s.unwrap_or(5), parity);
                p.gamma = self.gamma.unwrap_or(p.gamma);
                p.amplitude = self.amplitude.unwrap_or(p.amplitude);
                let drive = match (self.drive, self.omega) {
                    (Some(DriveArg::Rotating), Some(_)) => {
                        return Err(Failure::Validation("--omega requires --drive local-field".into()))
                    }
                    (Some(DriveArg::LocalField), None) => {
                        return Err(Failure::Validation("--drive local-field requires --omega".into()))
                    }
                    (Some(DriveArg::Rotating), None) | (None, None) => DriveMode::Rotating,
                    (_, Some(_)) => DriveMode::LocalField,
                };
                if drive == DriveMode::LocalField {
                    p = p.with_local_field(self.omega.unwrap_or_default());
                }
                Ok(p.into())
            }
        }
    }
}

pub fn exchange_scale(arg: ExchangeArg) -> ExchangeScale {
    match arg {
        ExchangeArg::Standard => ExchangeScale::Standard,
        ExchangeArg::Doubled => ExchangeScale::Doubled,
    }
}
