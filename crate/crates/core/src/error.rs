use thiserror::Error;

/// Errors produced by constructors and verifiers.
///
/// Structural mismatches between values that were built over different
/// groups or ground sets are programming errors and panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} out of range (must be 1..=64)")]
    BadModulus(u32),
    #[error("ground set size {0} exceeds cap of 16")]
    GroundTooLarge(usize),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("rank {rank} out of range for ground size {size}")]
    RankOutOfRange { rank: usize, size: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("matrix columns have unequal dimensions")]
    RaggedColumns,
    #[error("axiom B1 violated: base family is empty")]
    EmptyBaseFamily,
    #[error("axiom B2 violated: base {inner:#b} is strictly contained in base {outer:#b}")]
    BaseContainment { inner: u16, outer: u16 },
    #[error(
        "axiom B3 violated: no exchange for element {element} of base {base:#b} against base {other:#b}"
    )]
    ExchangeFailure { base: u16, other: u16, element: usize },
    #[error("operation requires rank >= 1")]
    ZeroRank,
    #[error("element {0} is a loop")]
    LoopElement(usize),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("subsets must be disjoint")]
    OverlappingSubsets,
    #[error("operand sets must have at least {0} elements")]
    CardinalityTooSmall(usize),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("residue {0} repeated too often for the matroid route")]
    RepeatedResidue(u32),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("failed to parse config: {0}")]
    TomlParse(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
