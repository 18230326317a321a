use thiserror::Error;

/// Errors raised by the enumeration engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`{0}` is not an admissible crystallographic Cartan type")]
    InvalidType(String),

    #[error("cannot parse root system `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("{node} is not a node of {ty}")]
    InvalidNode { ty: String, node: usize },

    #[error("polynomial of total degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("invalid Coxeter ordering {0:?}: expected a permutation of the node labels")]
    InvalidOrdering(Vec<usize>),

    #[error("element has absolute length {found}, a Coxeter element needs {expected}")]
    NotCoxeterElement { found: usize, expected: usize },

    #[error("lattice grading violated: {0}")]
    Grading(String),

    /// An internal consistency check failed. This points at a table or
    /// diagram bug, never at bad user input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("time budget exhausted while {stage}")]
    Timeout { stage: String },

    #[error("lattice for {spec} has {size} elements, above the limit of {limit}")]
    TooLarge { spec: String, size: u128, limit: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
