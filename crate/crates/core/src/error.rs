use thiserror::Error;

use crate::coupling::{FarkasCertificate, MonotonicityWitness};

/// Errors produced by the poset, measure, coupling and sampling layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("poset has no elements")]
    EmptyPoset,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("{what} exceeds cap of {cap}")]
    SizeLimit { what: &'static str, cap: u64 },
    #[error("cover graph is not a tree")]
    NotATree,
    #[error("`{0}` is not a leaf of the cover graph")]
    NotALeaf(String),
    #[error("poset is not a chain")]
    NotAChain,
    #[error("invalid child ordering for `{0}`: {1}")]
    InvalidChildOrder(String, String),
    #[error("measure domain has {found} elements, expected {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("grid of {cells} cells does not resolve denominator {denominator}")]
    GridMismatch { cells: usize, denominator: String },
    #[error("coupling does not match the system: {0}")]
    InfeasibleInput(String),
    #[error("system is not stochastically monotone: {0}")]
    NotStochMonotone(Box<MonotonicityWitness>),
    #[error("system is stochastically monotone but not realizably monotone")]
    Infeasible(Box<FarkasCertificate>),
    #[error("kernel is not ergodic: {0}")]
    NotErgodic(String),
    #[error("no coalescence within {0} steps")]
    BudgetExceeded(u64),
    #[error("coalescence tracking disagreement at epoch length {0}")]
    TrackingDisagreement(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
