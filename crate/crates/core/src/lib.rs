//! Vanishing lines in spectral sequences of strict towers of chain complexes
//! over F_p.

pub mod cli;
pub mod complexes;
pub mod couples;
pub mod error;
pub mod flinalg;
pub mod lines;
pub mod towers;

pub use error::{Error, Result};
