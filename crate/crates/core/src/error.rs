use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("slice generators have different T-degrees ({0} and {1})")]
    MixedSliceDegrees(u32, u32),
    #[error("monomial of T-degree {found} used against a slice of degree {expected}")]
    SliceDegree { expected: u32, found: u32 },
    #[error("operation undefined for these module modes: {0}")]
    ModeMismatch(String),
    #[error("modules live in different rings")]
    RingMismatch,
    #[error("submodule is not contained in the ambient module")]
    NotContained,
    #[error("no finiteness certificate with K <= {0}")]
    KMaxExceeded(u32),
    #[error("length is infinite: {0}")]
    InfiniteLength(String),
    #[error("module is zero after saturation: {0}")]
    TrivialModule(String),
    #[error("grid does not cover the requested difference: {0}")]
    GridTooSmall(String),
    #[error("finite differences did not stabilize: {0}")]
    UnstableWindow(String),
    #[error("index has total degree {found}, expected {expected}")]
    IndexDegree { expected: i64, found: i64 },
    #[error("height precondition failed: height {height} is not greater than t = {t}")]
    HeightPreconditionFailed { height: i64, t: usize },
    #[error("the unsaturated quotient form needs a positive J-order")]
    ZeroJOrder,
    #[error("generated module does not have finite colength: {0}")]
    ColengthError(String),
    #[error("invalid candidate: {0}")]
    InvalidCandidate(String),
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("at grid point {coords:?}: {source}")]
    Cell {
        coords: Vec<u64>,
        #[source]
        source: Box<CoreError>,
    },
}

pub type Result<T> = std::result::Result<T, CoreError>;
