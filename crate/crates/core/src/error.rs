//! Error types shared across the crate, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("invalid input: a splitting type needs at least one summand")]
    EmptyDegrees,
    #[error("invalid input: colength must be positive, got {0}")]
    NonPositiveColength(i64),
    #[error("kernel of a rank-1 bundle has rank 0, which is not representable")]
    RankOneKernel,
    #[error("surjectivity not general: twist {m} is below the top degree {a_plus}")]
    SurjectivityNotGeneral { m: i64, a_plus: i64 },
    #[error("extension rule requires balanced inputs, got degrees {0:?}")]
    ExtensionInputNotBalanced(Vec<i64>),
    #[error("slope floors differ ({0} vs {1}); a general extension need not balance")]
    FloorMismatch(i64, i64),
    #[error("inconsistent h0 profile: {0}")]
    InconsistentProfile(String),
    #[error("partitions of different widths ({0} vs {1}) are not comparable")]
    WidthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("genericity failure: no admissible draw after {retries} retries ({reason})")]
    GenericityFailure { retries: u32, reason: String },
    #[error("morphism is not surjective as a sheaf map")]
    NotSurjective,
    #[error("kernel has rank 0, which is not representable")]
    ZeroKernel,
    #[error("inconsistent h0 profile: {0}")]
    InconsistentProfile(String),
    #[error("modification points must be distinct")]
    CoincidentPoints,
    #[error("corank {corank} exceeds rank {rank}")]
    CorankTooLarge { corank: usize, rank: usize },
    #[error("node coordinates must be distinct on each component")]
    CoincidentNodes,
    #[error("gluing matrix at node {0} is singular")]
    SingularGluing(usize),
    #[error("component topology is not a tree")]
    NotATree,
    #[error("components must share a common rank")]
    RankMismatch,
    #[error("recovered splitting has rank {got}, expected {expected}")]
    RankCertificate { got: usize, expected: usize },
    #[error("recovered splitting has degree {got}, expected {expected}")]
    DegreeCertificate { got: i64, expected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("comb file parse error: {0}")]
    Parse(String),
    #[error("components must share a common rank")]
    RankMismatch,
    #[error("tooth edges do not form a tree")]
    CyclicTopology,
    #[error("smoothing hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error(transparent)]
    Split(#[from] SplitError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("degree {e} is inaccessible for (n, d) = ({n}, {d}): the slope-floor equality has no admissible witness")]
    Inaccessible { n: i64, d: i64, e: i64 },
    #[error("slope floors mismatch at e0 = {e0}: vertical floor {vertical}, base floor {base}")]
    ExtensionFloorsMismatch { e0: i64, vertical: i64, base: i64 },
    #[error("pipeline certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Comb(#[from] CombError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("degenerate denominator: need n >= 3, got n = {0}")]
    DegenerateDenominator(i64),
    #[error("accessibility needs 3 <= d <= n-1, got (n, d) = ({n}, {d})")]
    DegenerateRange { n: i64, d: i64 },
    #[error("insufficient window: need e_max >= {needed}, got {got}")]
    InsufficientWindow { needed: i64, got: i64 },
}
