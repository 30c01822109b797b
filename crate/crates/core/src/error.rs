use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not a field extension: {0}")]
    NotAnExtension(String),
    #[error("group element payload does not match the group kind")]
    PayloadMismatch,
    #[error("unsupported group kind: {0}")]
    UnsupportedKind(String),
    #[error("subgroup window exhausted after {0} elements")]
    WindowExhausted(usize),
    #[error("exponent {0} is not in the positive cone")]
    NegativeExponent(String),
    #[error("series belong to different rings")]
    GroupMismatch,
    #[error("operation undefined on the zero series")]
    ZeroSeries,
    #[error("series is not a unit (constant term is zero)")]
    NotAUnit,
    #[error("precision lost: {0}")]
    PrecisionLoss(String),
    #[error("unsupported exponent group: {0}")]
    UnsupportedGroup(String),
    #[error("series is not a member of the ring {0}")]
    NotInRing(&'static str),
    #[error("lattice is infinite: {0}")]
    InfiniteLattice(String),
    #[error("ideal node does not belong to this lattice: {0}")]
    NodeMismatch(String),
    #[error("structure too large: {size} elements exceeds bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("node at level {level} exceeds depth {depth}")]
    DepthExceeded { level: u32, depth: u32 },
    #[error("parse error at position {position}: expected {}", expected.join(" | "))]
    Parse {
        position: usize,
        expected: Vec<String>,
    },
    #[error("invalid input: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(position: usize, expected: &[&str]) -> Self {
        Error::Parse {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
