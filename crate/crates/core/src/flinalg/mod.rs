//! Exact linear algebra over prime fields.
//!
//! Everything is dense and small. Elimination always pivots on the first
//! nonzero entry in scan order, so every basis produced here is reproducible.

mod matrix;
mod subspace;

pub use matrix::{is_prime, validate_prime, FpMatrix};
pub use subspace::{subquotient, Subquotient, Subspace};

pub(crate) use matrix::neg_mod;

pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn kernel(m: &FpMatrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &FpMatrix) -> Subspace {
    m.image()
}
