use crate::rootsys::{Family, Root};

/// Errors for every operation in the crate.
///
/// Domain errors signal a violated precondition on caller input; the
/// `Internal` variant marks states that are provably unreachable for valid
/// inputs and exists to turn theorems into runtime assertions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: requires {bound}")]
    InvalidRank {
        family: Family,
        rank: usize,
        bound: &'static str,
    },

    #[error("cannot parse root system designator `{0}`")]
    BadDesignator(String),

    #[error("vector {0} is not a root of the system")]
    NotARoot(Root),

    #[error("root {0} is not a positive root")]
    NotPositive(Root),

    #[error("the zero vector has no length; Cartan integers against it are undefined")]
    ZeroBase,

    #[error("simple-root index {index} out of range for rank {rank}")]
    BadSimpleIndex { index: usize, rank: usize },

    #[error("coefficient vector has length {got}, expected rank {want}")]
    BadVectorLength { got: usize, want: usize },

    #[error("index set is not connected in the Dynkin diagram")]
    NotConnected,

    #[error("set of vectors is linearly dependent")]
    DependentSet,

    #[error("not a simple system: pair ({0}, {1}) has positive Cartan integer")]
    NotASimpleSystem(Root, Root),

    #[error("subsystem string has no distinguished base (base root lies in the span of phi)")]
    SubsystemStringNoBase,

    #[error("base root lies in the span of phi")]
    BaseInSpan,

    #[error("blocks are not pairwise orthogonal")]
    BlocksNotOrthogonal,

    #[error("block {0:?} is not connected")]
    BlockNotConnected(Vec<usize>),

    #[error("root {0} is not of minimum level in its string (witness alpha index {1})")]
    NotMinimumLevel(Root, usize),

    #[error("phi-string of {0} is trivial; no pair classification applies")]
    TrivialString(Root),

    #[error("labeling inconsistent with the family's diagram")]
    BadLabeling,

    #[error("string set inconsistent with phi: member {0} is not base + span(phi)")]
    StringPhiMismatch(Root),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
