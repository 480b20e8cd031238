use thiserror::Error;

use crate::network::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit {qubit} out of bounds for a {num_qubits}-qubit register")]
    QubitOutOfBounds { qubit: usize, num_qubits: usize },
    #[error("qubit {0} targeted more than once")]
    DuplicateTarget(usize),
    #[error("state norm deviates from 1 by {0:e}")]
    NotNormalized(f64),
    #[error("operator is not unitary: max |U'U - I| = {0:e}")]
    NotUnitary(f64),
    #[error("norm drift {drift:e} after evolution exceeds the integrator limit")]
    NormDriftExceeded { drift: f64 },
    #[error("integrator step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },
    #[error("integrator exceeded {max_steps} steps before reaching t = {t_end}")]
    StepLimit { max_steps: usize, t_end: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(#[from] ParamError),
    #[error("subspace basis is not orthonormal (deviation {0:e})")]
    NonOrthonormalSubspace(f64),
    #[error("degenerate measurement outcome: probability {0:e} below threshold")]
    DegenerateOutcome(f64),
    #[error("amplitudes not normalized: sum of squared magnitudes = {0}")]
    Normalization(f64),
    #[error("invalid network: {}", join(.0))]
    InvalidNetwork(Vec<Violation>),
    #[error("malformed document: {0}")]
    Format(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// True for errors caused by bad inputs rather than a failed simulation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NormDriftExceeded { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::StepLimit { .. }
                | Error::NotUnitary(_)
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

/// Violated parameter constraint, named so callers can report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("degenerate parameters: require l > k > 0 (got k = {k}, l = {l})")]
    Degenerate { k: f64, l: f64 },
    #[error("pythagorean condition violated: sqrt(l^2 - k^2) = {root} is not an integer for k = {k}, l = {l}")]
    NonPythagorean { k: f64, l: f64, root: f64 },
    #[error("constraint mode requires integer {name} (got {value})")]
    NonInteger { name: &'static str, value: f64 },
    #[error("{name} must be positive and finite (got {value})")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("detuning ratio {transition} = {ratio} is below the floor {floor}")]
    DetuningBelowFloor { transition: &'static str, ratio: f64, floor: f64 },
    #[error("hierarchy violation: {ratio} = {value} is below the floor {floor}")]
    HierarchyViolation { ratio: &'static str, value: f64, floor: f64 },
    #[error("require n > m > 0 (got m = {m}, n = {n})")]
    Ordering { m: f64, n: f64 },
    #[error("no real solution for beta: discriminant l^2(1+gamma^2) - (2s-l)^2 = {discriminant} < 0")]
    NoRealSolution { discriminant: f64 },
    #[error("phase-matching check gamma*J + beta = (2s-l)A fails for both signs of J")]
    SignInconsistency,
    #[error("|beta| = {beta} exceeds |l A| = {bound}")]
    BetaOutOfBound { beta: f64, bound: f64 },
    #[error("local-field ratio |Omega|/A = {ratio} is below the floor {floor}")]
    LocalFieldBelowFloor { ratio: f64, floor: f64 },
    #[error("j_sign must be +1 or -1 (got {0})")]
    BadSign(i32),
}
