use thiserror::Error;

/// Which independence axiom a family of sets violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// The empty set is independent.
    EmptySet,
    /// Subsets of independent sets are independent.
    Hereditary,
    /// The augmentation property.
    Augmentation,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::EmptySet => f.write_str("I1 (empty set)"),
            Axiom::Hereditary => f.write_str("I2 (hereditary)"),
            Axiom::Augmentation => f.write_str("I3 (augmentation)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("invalid matroid: axiom {axiom} fails: {detail}")]
    AxiomViolated { axiom: Axiom, detail: String },

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    CapacityExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("matroid is not indecomposable: element `{0}` is non-degenerate")]
    NotIndecomposable(String),

    #[error("element `{0}` is a loop or coloop and cannot be used as a pivot")]
    DegenerateElement(String),

    #[error("node {0} is not a leaf")]
    NotALeaf(usize),

    #[error("no node with id {0}")]
    UnknownNode(usize),

    #[error("invalid deletion-contraction tree: {0}")]
    InvalidTree(String),

    #[error("invalid covering: {0}")]
    InvalidCover(String),

    #[error("coverings have different targets")]
    TargetMismatch,

    #[error("covering leg {0} has a decomposable source")]
    NotIndecomposableCover(usize),

    #[error("class ({loops},{coloops}) has negative coefficient {coeff}")]
    NegativeCoefficient {
        loops: usize,
        coloops: usize,
        coeff: String,
    },

    #[error("parse error in `{key}`: {detail}")]
    Parse { key: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(key: impl Into<String>, detail: impl std::fmt::Display) -> Self {
        Error::Parse {
            key: key.into(),
            detail: detail.to_string(),
        }
    }

    /// True for the errors that mean the input does not describe a matroid.
    pub fn is_invalid_matroid(&self) -> bool {
        matches!(
            self,
            Error::InvalidMatroid(_) | Error::AxiomViolated { .. } | Error::DuplicateLabel(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
