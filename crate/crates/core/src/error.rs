use crate::exactlin::Rational;
use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("objects live over different coalgebras ({0} vs {1})")]
    MixedCoalgebras(String, String),

    #[error("subspace is not coinvariant: the coaction of ({}) leaves C ⊗ U", join(witness))]
    NotCoinvariant { witness: Vec<Rational> },

    #[error("invalid {what}: {report}")]
    Invalid { what: String, report: ValidationReport },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("cone does not commute with arrow `{arrow}`")]
    ConeMismatch { arrow: String },

    /// A branch that would contradict a proven universal property; reaching
    /// it means the implementation is wrong.
    #[error("fatal correctness failure: {0}")]
    Fatal(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn is_fatal(&self) -> bool {
        matches!(self, Error::Fatal(_))
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
