use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode {mode} holds {occupation} photons, above cutoff {cutoff}")]
    CutoffExceeded {
        mode: usize,
        occupation: usize,
        cutoff: usize,
    },
    #[error("bitstring leaves the code space in mode block {mode}")]
    LeakageState { mode: usize },
    #[error("{what}: {size} exceeds the limit of {limit}")]
    DimensionTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("mode index {index} out of range for {modes} modes")]
    ModeIndexOutOfRange { index: usize, modes: usize },
    #[error("index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },
    #[error("not a valid Bogoliubov transformation (deviation {deviation:.3e})")]
    NotSymplectic { deviation: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot decompose the identity string")]
    IdentityString,
    #[error("RZX angle {angle} is not a quarter-turn Clifford angle")]
    UnsupportedAngle { angle: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}
