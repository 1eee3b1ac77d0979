//! Vanishing-line conditions on towers and the implications between them.
//!
//! For a slope `m`, intercept `b` and page `r`:
//!
//! 1. `D_r^{s,t} = 0` for `s ≥ m(t-s) + b`;
//! 2. `E_r^{s,t} = 0` for `s ≥ m(t-s) + b`;
//! 3. for every `W` in a family, with `w = -conn(DW)`, every map
//!    `W → F_{s+r-1}` is null in `F_s` once `s ≥ m·w + b`;
//! 4. for every `W` in a family, with `w = conn(W)`, `E_r^{s,t}(T ∧ W) = 0`
//!    for `s ≥ m(t-s-w) + b`.
//!
//! `conn(W)` is the lowest degree with nonzero homology. Each condition
//! holds exactly for `b > β`, where `β` is the largest `s - m·x` over the
//! entries that would have to vanish; the checks report `β` alongside the
//! offending entries.

mod conditions;
mod family;
mod generic;
mod lemma;
mod report;
mod spec;

pub use conditions::{check_cond1, check_cond2, check_cond3, check_cond4, min_intercept, Flavor, Tables};
pub use family::WFamily;
pub use generic::{verify_generic_cofiber, verify_generic_retract, verify_ghost_corollary, verify_retract_lines};
pub use lemma::{
    lemma_offset, lemma_shift, lemma_shift_variant, verify_lemma, verify_lemma_case, verify_lemma_with, LemmaCase,
    ShiftVariant,
};
pub use report::{MemberReport, VerificationReport, Witness};
pub use spec::{lattice_step, parse_rational, Intercept, LineSpec};
