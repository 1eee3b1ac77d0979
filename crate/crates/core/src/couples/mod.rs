//! The exact couple of a tower, its derived couples and the resulting pages.
//!
//! Bidegrees follow `D^{s,t} = H_{t-s}(F_s)`, `E^{s,t} = H_{t-s}(K_s)`. At level
//! `r` the maps are `i: D^{s+1,t+1} → D^{s,t}`, `j: D^{s,t} → E^{s+r-1,t+r-1}`,
//! `k: E^{s,t} → D^{s+1,t}`, so `d_r = j ∘ k` has bidegree `(r, r - 1)`.

mod couple;
mod module;
mod oracle;
mod pages;

pub use couple::{couple_from_tower, CoupleMap, ExactCouple, ExactnessFailure, ExactnessReport};
pub use module::{Bidegree, BigradedModule};
pub use oracle::oracle_page;
pub use pages::{
    derived_couple, e_infinity, kunneth_page, page, pages, stable_page_index, ConvergenceReport, FiltrationComparison,
    Page, StemComparison,
};

pub fn derive(c: &ExactCouple) -> crate::error::Result<ExactCouple> {
    c.derive()
}

pub fn verify_les(c: &ExactCouple) -> ExactnessReport {
    c.verify_les()
}
