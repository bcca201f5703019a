use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rule not applicable at column {column}")]
    RuleNotApplicable { column: usize },
    #[error("weight mismatch: {left} grains vs {right} grains")]
    WeightMismatch { left: usize, right: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("not a reduced form: {0}")]
    NotAReducedForm(String),
    #[error("inconsistent decomposition step: {0}")]
    InconsistentStep(String),
    #[error("capacity exceeded: requested {requested}, table holds {capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },
    #[error("width {w} is not admissible for {n} grains")]
    InvalidWidth { n: usize, w: usize },
    #[error("FALL not applicable at sequence position {0}")]
    InvalidStep(usize),
    #[error("peeling undefined: entry {0} of the targeted residue class is zero")]
    Undefined(usize),
    #[error("basis trajectory mismatch: expected {expected}, found {found}")]
    TrajectoryMismatch { expected: String, found: String },
    #[error("not an extended reduced form")]
    NotExtended,
    #[error("({w},{l}) is not a staircase basis for k = {k}")]
    InvalidBasis { k: usize, w: usize, l: usize },
    #[error("empty domain")]
    EmptyDomain,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
