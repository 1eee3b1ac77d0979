use thiserror::Error;

use crate::couples::Bidegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("vector is not in the subspace")]
    NotInSubspace,

    #[error("d∘d is nonzero in degree {0}")]
    DifferentialSquare(i32),

    #[error("not a chain map in degree {0}")]
    NotChainMap(i32),

    #[error("structure map F_{} -> F_{level} is not injective in degree {degree}", .level + 1)]
    NotInjective { level: usize, degree: i32 },

    #[error("tower map does not commute with the structure maps at level {0}")]
    NotTowerMap(usize),

    #[error("connectivity is undefined for a complex with zero homology")]
    UndefinedConnectivity,

    #[error("the maps do not exhibit a retract")]
    NotRetract,

    #[error("exact couple fails exactness at {node} {bidegree}")]
    NotExact { node: &'static str, bidegree: Bidegree },

    #[error("page index must be at least 1, got {0}")]
    BadPage(i32),

    #[error("infeasible generator parameters: {0}")]
    Params(String),

    #[error("invalid document: {0}")]
    Document(String),
}
