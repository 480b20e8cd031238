use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StateVector;
use crate::scalar::{cr, Real, C};
use crate::Error;

/// The four Bell states Ψ± = (|↓↑⟩ ± |↑↓⟩)/√2 and Φ± = (|↑↑⟩ ± |↓↓⟩)/√2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus];

    pub fn state<T: Real>(self) -> StateVector<T> {
        let h = cr(T::FRAC_1_SQRT_2());
        let z = cr(T::zero());
        let amps: [C<T>; 4] = match self {
            BellLabel::PhiPlus => [h, z, z, h],
            BellLabel::PhiMinus => [-h, z, z, h],
            BellLabel::PsiPlus => [z, h, h, z],
            BellLabel::PsiMinus => [z, h, -h, z],
        };
        StateVector::from_raw(2, amps.to_vec())
    }

    /// Even excitation parity (Φ±).
    pub fn is_phi(self) -> bool {
        matches!(self, BellLabel::PhiPlus | BellLabel::PhiMinus)
    }

    /// Relative sign −1 (Φ⁻, Ψ⁻).
    pub fn is_minus(self) -> bool {
        matches!(self, BellLabel::PhiMinus | BellLabel::PsiMinus)
    }

    /// File-name friendly identifier, e.g. `phi_plus`.
    pub fn slug(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi_plus",
            BellLabel::PhiMinus => "phi_minus",
            BellLabel::PsiPlus => "psi_plus",
            BellLabel::PsiMinus => "psi_minus",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellLabel::PhiPlus => "Phi+",
            BellLabel::PhiMinus => "Phi-",
            BellLabel::PsiPlus => "Psi+",
            BellLabel::PsiMinus => "Psi-",
        })
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().to_ascii_lowercase().replace(['_', ' '], "");
        Ok(match t.as_str() {
            "phi+" | "phiplus" | "φ+" | "φ⁺" => BellLabel::PhiPlus,
            "phi-" | "phiminus" | "φ-" | "φ⁻" => BellLabel::PhiMinus,
            "psi+" | "psiplus" | "ψ+" | "ψ⁺" => BellLabel::PsiPlus,
            "psi-" | "psiminus" | "ψ-" | "ψ⁻" => BellLabel::PsiMinus,
            _ => return Err(Error::InvalidArgument(format!("unknown Bell label '{s}'"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellLabel::ALL {
            for b in BellLabel::ALL {
                let o = a.state::<f64>().inner(&b.state()).unwrap().norm();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((o - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for a in BellLabel::ALL {
            assert_eq!(a.to_string().parse::<BellLabel>().unwrap(), a);
            assert_eq!(a.slug().parse::<BellLabel>().unwrap(), a);
        }
    }
}
