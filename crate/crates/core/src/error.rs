use thiserror::Error;

use crate::caterpillar::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // tree construction
    #[error("expected {expected} edges for {n} vertices, got {got}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("vertex label {label} out of range for n = {n}")]
    LabelOutOfRange { n: usize, label: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    // caterpillar families
    #[error("{family} requires {expected} n, got {n}")]
    ParityMismatch {
        family: Family,
        n: usize,
        expected: &'static str,
    },
    #[error("n = {n} is below the minimum {min} for {what}")]
    TooSmall { what: String, n: usize, min: usize },
    #[error("invalid caterpillar spec: {0}")]
    InvalidSpec(String),

    // leaf moves
    #[error("tree is not a caterpillar")]
    NotCaterpillar,
    #[error("vertex {0} is not eligible for a leaf move")]
    Ineligible(usize),
    #[error("window does not fit on the interior path: {0}")]
    BadWindow(String),
    #[error("requested {requested} moves but only {max} are available")]
    TooManySteps { requested: u64, max: u64 },
    #[error("move at vertex {vertex} changed the Wiener index by {delta}, expected +4")]
    MoveInvariant { vertex: usize, delta: i128 },

    // spectrum and solver
    #[error("odd n = {n} only admits even Wiener values, got {w}")]
    ParityViolation { n: usize, w: u64 },
    #[error("w = {w} is outside [{lo}, {hi}] for n = {n}")]
    OutOfRange { n: usize, w: u64, lo: u64, hi: u64 },
    #[error("w = {w} is not covered by the constructive index for n = {n}")]
    NotCovered { n: usize, w: u64 },
    #[error("index is empty")]
    EmptyIndex,
    #[error("witness failed re-verification: expected {expected}, got {got}")]
    WitnessMismatch { expected: u64, got: u64 },

    // oracle
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    // audit
    #[error("invalid audit grid: {0}")]
    InvalidGrid(String),
    #[error("fitting system is singular (rank {rank} < {basis} monomials)")]
    SingularSystem { rank: usize, basis: usize },
    #[error("fitted form fails at held-out point {point}: predicted {predicted}, actual {actual}")]
    VerificationFailure {
        point: String,
        predicted: String,
        actual: String,
    },
}
