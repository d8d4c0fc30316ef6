use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partial order: {0}")]
    NotAPoset(String),
    #[error("not a lattice: elements {a} and {b} have no unique {op}")]
    NotALattice {
        a: usize,
        b: usize,
        op: &'static str,
    },
    #[error("no global {0} element")]
    NoBounds(&'static str),
    #[error("{what} has {size} elements, bound is {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("element index {index} out of range for {n} elements")]
    OutOfRange { index: usize, n: usize },
    #[error("unknown corpus lattice {0:?}")]
    UnknownName(String),
    #[error("not an orthocomplement: {axiom} fails at {witness:?}")]
    NotAnOrthocomplement {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("ortholattice is not orthomodular: witness {0:?}")]
    NotOrthomodular((usize, usize)),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("commutant of the empty subset is not defined")]
    EmptySubset,
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("subset is not central: element {0} fails to commute with everything")]
    NotCentral(usize),
    #[error("lattice is not a Boolean algebra: {0}")]
    NotBoolean(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal contains the top element")]
    ImproperIdeal,
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("not a quasipoint: {0}")]
    NotAQuasipoint(String),
    #[error("spectral family values are not monotone at step {0}")]
    NotMonotone(usize),
    #[error("spectral family does not end at the top element")]
    TopMissing,
    #[error("spectral family thresholds are not strictly increasing at step {0}")]
    UnsortedThresholds(usize),
    #[error("spectral family has no steps")]
    EmptyFamily,
    #[error("no threshold value lies in the dual ideal {0:?}")]
    NoThresholdInIdeal(Vec<usize>),
    #[error("function is not continuous at point {0}")]
    NotContinuous(usize),
    #[error("function is not completely increasing: {0}")]
    NotCompletelyIncreasing(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("missing restriction map {from}->{to}")]
    MissingMap { from: usize, to: usize },
    #[error("functoriality violated on {a} <= {b} <= {c}")]
    FunctorialityViolation { a: usize, b: usize, c: usize },
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}
