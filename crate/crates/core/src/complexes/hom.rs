use std::collections::BTreeMap;

use crate::complexes::{ComplexMap, GradedComplex};
use crate::error::Result;
use crate::flinalg::{neg_mod, FpMatrix};

/// Blocks `(n, offset)` of `Hom(W, Y)_k`, one per `n` with `Hom(W_n, Y_{n+k}) ≠ 0`.
fn hom_layout(w: &GradedComplex, y: &GradedComplex, k: i32) -> Vec<(i32, usize)> {
    let mut offset = 0;
    let mut out = Vec::new();
    for (&n, &a) in w.dims() {
        let b = y.dim(n + k);
        if b > 0 {
            out.push((n, offset));
            offset += a * b;
        }
    }
    out
}

/// The internal Hom complex: `Hom_k = Π_n Hom(W_n, Y_{n+k})`, `Dφ = dφ - (-1)^k φd`.
///
/// Each block stores the matrix of `φ_n` row-major. `H_k` of this complex is the
/// group of degree-`k` chain maps modulo chain homotopy.
pub fn hom_complex(w: &GradedComplex, y: &GradedComplex) -> Result<GradedComplex> {
    w.check_prime(y)?;
    let p = w.p();
    let (Some((wlo, whi)), Some((ylo, yhi))) = (w.degree_range(), y.degree_range()) else {
        return Ok(GradedComplex::zero(p));
    };
    let mut dims = BTreeMap::new();
    for k in (ylo - whi)..=(yhi - wlo) {
        let d: usize = w.dims().iter().map(|(&n, &a)| a * y.dim(n + k)).sum();
        dims.insert(k, d);
    }
    let dim = |k: i32| dims.get(&k).copied().unwrap_or(0);
    let mut differentials = BTreeMap::new();
    for (&k, &size) in &dims {
        if size == 0 || dim(k - 1) == 0 {
            continue;
        }
        let source = hom_layout(w, y, k);
        let target = hom_layout(w, y, k - 1);
        let find = |n: i32| target.iter().find(|&&(tn, _)| tn == n).map(|&(_, o)| o);
        let mut d = FpMatrix::zeros(p, dim(k - 1), size);
        // sign applied to φ ∘ d_W
        let sign = if k.rem_euclid(2) == 0 { p - 1 } else { 1 };
        for &(n, offset) in &source {
            let (wn, yk) = (w.dim(n), y.dim(n + k));
            let dy = y.d(n + k);
            let dw = w.d(n + 1);
            for a in 0..yk {
                for b in 0..wn {
                    let col = offset + a * wn + b;
                    // d_Y ∘ E_ab lands in block n of Hom_{k-1}
                    if let Some(to) = find(n) {
                        for c in 0..dy.rows() {
                            let x = dy.get(c, a);
                            if x != 0 {
                                d.set(to + c * wn + b, col, x);
                            }
                        }
                    }
                    // E_ab ∘ d_W lands in block n + 1 of Hom_{k-1}
                    if let Some(to) = find(n + 1) {
                        let wn1 = w.dim(n + 1);
                        for e in 0..wn1 {
                            let x = dw.get(b, e);
                            if x != 0 {
                                let v = if sign == 1 { x } else { neg_mod(x, p) };
                                d.set(to + a * wn1 + e, col, v);
                            }
                        }
                    }
                }
            }
        }
        differentials.insert(k, d);
    }
    GradedComplex::new(p, dims, differentials)
}

/// Dimension of `[Σ^k W, Y]` (chain maps of degree `k` modulo homotopy) for every `k`
/// where it is nonzero.
pub fn homotopy_classes(w: &GradedComplex, y: &GradedComplex) -> Result<BTreeMap<i32, usize>> {
    Ok(hom_complex(w, y)?.homology_dims())
}

/// A degree-zero map as a vector of `Hom(W, Y)_0`.
fn as_hom_element(f: &ComplexMap, layout: &[(i32, usize)], size: usize) -> Vec<u32> {
    let mut v = vec![0u32; size];
    for &(n, offset) in layout {
        let m = f.component(n);
        for a in 0..m.rows() {
            for b in 0..m.cols() {
                v[offset + a * m.cols() + b] = m.get(a, b);
            }
        }
    }
    v
}

/// Solves `f = dh + hd` directly in the Hom complex.
pub fn is_null_homotopic(f: &ComplexMap) -> bool {
    let hom = hom_complex(f.source(), f.target()).expect("endpoints share a prime");
    let layout = hom_layout(f.source(), f.target(), 0);
    let v = as_hom_element(f, &layout, hom.dim(0));
    hom.d(1).solve(&v).is_some()
}
