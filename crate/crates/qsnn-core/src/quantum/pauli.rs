use serde::{Deserialize, Serialize};

use crate::scalar::{c, cr, Real, C};

/// Pauli axis. With |↓⟩ = |0⟩ and |↑⟩ = |1⟩, σ^z|↑⟩ = +|↑⟩ and σ^y|↓⟩ = −i|↑⟩,
/// which keeps σ^x σ^y = iσ^z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Action on a single basis bit: σ|b⟩ = factor·|b'⟩ with b' = b xor flip.
    #[inline]
    pub fn action<T: Real>(self, up: bool) -> (bool, C<T>) {
        match (self, up) {
            (Axis::X, _) => (true, cr(T::one())),
            (Axis::Y, false) => (true, c(T::zero(), -T::one())),
            (Axis::Y, true) => (true, c(T::zero(), T::one())),
            (Axis::Z, false) => (false, cr(-T::one())),
            (Axis::Z, true) => (false, cr(T::one())),
        }
    }

    pub fn flips(self) -> bool {
        !matches!(self, Axis::Z)
    }

    /// 2×2 matrix in the (↓, ↑) basis, row major.
    pub fn matrix<T: Real>(self) -> [[C<T>; 2]; 2] {
        let mut m = [[cr(T::zero()); 2]; 2];
        #[allow(clippy::needless_range_loop)]
        for col in 0..2 {
            let (flip, f) = self.action::<T>(col == 1);
            let row = if flip { 1 - col } else { col };
            m[row][col] = f;
        }
        m
    }
}
