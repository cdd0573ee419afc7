use thiserror::Error;

use crate::polycore::WeightError;

/// Why a polynomial failed the admissibility checks.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Inadmissible {
    #[error("{0}")]
    Weights(#[from] WeightError),
    #[error("degenerate: the Jacobian ideal is not zero-dimensional")]
    Degenerate,
    #[error("Groebner budget exhausted while testing nondegeneracy ({0} S-pairs)")]
    ResourceLimit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("polynomial is not admissible: {0}")]
    NotAdmissible(Inadmissible),
    #[error("polynomial is not invertible: the exponent matrix is {rows}x{cols} or singular, so its transpose does not define an admissible polynomial")]
    NotInvertible { rows: usize, cols: usize },
    #[error("symmetry group is infinite (exponent matrix has rank {rank} < {vars})")]
    InfiniteGroup { rank: usize, vars: usize },
    #[error("group is not admissible: it does not contain the weight vector J")]
    GroupNotAdmissible,
    #[error("group element {0} is not a diagonal symmetry of the polynomial")]
    GroupNotSymmetry(String),
    #[error("restriction to the fixed locus {0:?} has an infinite-dimensional Milnor ring")]
    DegenerateRestriction(Vec<usize>),
    #[error("Groebner basis computation exceeded the budget of {0} S-pairs")]
    ResourceLimit(usize),
    #[error("ideal is not zero-dimensional")]
    NotFiniteDimensional,
    #[error("tail product {product} exceeds the target dimension {target}")]
    TailProductTooLarge { product: String, target: String },
    #[error("exponents violate r/p + s/q = 1")]
    WeightConditionViolated,
    #[error("ambient variable mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("closed-form check failed: {0}")]
    FormulaMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl From<Inadmissible> for Error {
    fn from(reason: Inadmissible) -> Self {
        match reason {
            Inadmissible::ResourceLimit(n) => Error::ResourceLimit(n),
            other => Error::NotAdmissible(other),
        }
    }
}

impl From<WeightError> for Error {
    fn from(e: WeightError) -> Self {
        Error::NotAdmissible(Inadmissible::Weights(e))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
