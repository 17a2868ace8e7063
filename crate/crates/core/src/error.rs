use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("operands live on different posets")]
    PosetMismatch,
    #[error("empty set where a nonempty one is required")]
    EmptySet,
    #[error("poset has {size} elements, more than the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("poset has no least element")]
    NotPointed,
    #[error("poset is not a tree")]
    NotTree,
    #[error("map is not monotone: {0} <= {1} but images are not ordered")]
    NotMonotone(String, String),
    #[error("map is not surjective: `{0}` has no preimage")]
    NotSurjective(String),
    #[error("table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("weights sum to {0}, expected 1")]
    NotNormalized(String),
    #[error("negative weight {weight} at `{element}`")]
    NegativeWeight { element: String, weight: String },
    #[error("stage {index}: {reason}")]
    Stage { index: usize, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no common upper bound (least candidate has mass {0} at the root)")]
    NoUpperBound(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("enumeration of size {0} is not supported")]
    TooLarge(usize),
    #[error("malformed code `{0}`")]
    MalformedCode(String),
}
