//! Bounded chain complexes over F_p.
//!
//! These stand in for spectra: homology plays the role of homotopy groups,
//! tensor product the smash product, the mapping cone the cofiber and the
//! negatively graded linear dual the Spanier–Whitehead dual. Over a field a
//! chain map is null-homotopic exactly when it is zero on homology, so ghost
//! maps and null maps coincide in this model.

mod complex;
mod hom;
mod map;

pub use complex::{GradedComplex, Homology};
pub use hom::{hom_complex, homotopy_classes, is_null_homotopic};
pub use map::{cone, ComplexMap, Cone};

pub fn homology(c: &GradedComplex, n: i32) -> Homology {
    c.homology(n)
}

pub fn induced_on_homology(f: &ComplexMap, n: i32) -> crate::flinalg::FpMatrix {
    f.induced_on_homology(n)
}

pub fn is_ghost(f: &ComplexMap) -> bool {
    f.is_ghost()
}
