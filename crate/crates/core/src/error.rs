use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown Lie family in token {0:?}")]
    UnknownFamily(String),
    #[error("rank out of range in token {0:?}")]
    RankOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("bad index set {0:?}")]
    BadIndexSet(Vec<usize>),
    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0:?} does not lie on the primary ellipsoid")]
    NotOnEllipsoid(Vec<i64>),
    #[error("{0:?} is not a nonnegative solution of the secondary equation")]
    NotASolution(Vec<i64>),
    #[error("enumeration cap of {0} elements exceeded")]
    CapExceeded(u64),
    #[error("{0:?} is not in the main orbit")]
    NotInMainOrbit(Vec<i64>),
    #[error("difference {diff:?} is not a nonzero multiple of the root {root:?}")]
    NotAMultiple { diff: Vec<i64>, root: Vec<i64> },
}
