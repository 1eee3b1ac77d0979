use crate::error::{Error, Result};
use crate::flinalg::matrix::{add_mod, mul_mod, neg_mod, row_reduce};
use crate::flinalg::FpMatrix;

/// A subspace of `F_p^n`, stored as its reduced row echelon basis.
///
/// Because the basis is canonical, two subspaces are equal exactly when their
/// bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Self {
            p,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            p,
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors (which need not be independent).
    pub fn from_vectors(p: u32, ambient_dim: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::AmbientMismatch(v.len(), ambient_dim));
        }
        let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
        let pivots = row_reduce(&mut rows, ambient_dim, p);
        rows.truncate(pivots.len());
        Ok(Self {
            p,
            ambient_dim,
            basis: rows,
            pivots,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Matrix whose columns are the basis vectors (`ambient_dim x dim`).
    pub fn matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.p, self.ambient_dim, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c] % self.p).collect();
        let mut residual: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (b, &c) in self.basis.iter().zip(&coords) {
            if c == 0 {
                continue;
            }
            let f = neg_mod(c, self.p);
            for (r, &x) in residual.iter_mut().zip(b) {
                *r = add_mod(*r, mul_mod(f, x, self.p), self.p);
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.p, self.ambient_dim, &vectors)
    }

    /// Rows spanning the vectors orthogonal to this subspace; its kernel is `self`.
    pub fn annihilator(&self) -> FpMatrix {
        let rows = FpMatrix::from_rows(self.p, self.ambient_dim, &self.basis);
        let ann = rows.kernel();
        FpMatrix::from_rows(self.p, self.ambient_dim, ann.basis())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for ann in [self.annihilator(), other.annihilator()] {
            rows.extend((0..ann.rows()).map(|i| ann.row(i).to_vec()));
        }
        Ok(FpMatrix::from_rows(self.p, self.ambient_dim, &rows).kernel())
    }

    /// `{x : Mx ∈ target}`.
    pub fn preimage(map: &FpMatrix, target: &Subspace) -> Result<Subspace> {
        if map.rows() != target.ambient_dim {
            return Err(Error::AmbientMismatch(map.rows(), target.ambient_dim));
        }
        Ok(target.annihilator().mul(map).kernel())
    }

    /// Image of this subspace under `map`.
    pub fn image_under(&self, map: &FpMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient_dim {
            return Err(Error::AmbientMismatch(map.cols(), self.ambient_dim));
        }
        let vectors: Vec<Vec<u32>> = self.basis.iter().map(|v| map.apply(v)).collect();
        Subspace::from_vectors(self.p, map.rows(), &vectors)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }
}

/// Solves for coordinates with respect to an arbitrary independent family.
#[derive(Clone, Debug)]
struct CoordinateSystem {
    p: u32,
    vectors: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// `transform * vectors = echelon`.
    transform: Vec<Vec<u32>>,
}

impl CoordinateSystem {
    fn new(p: u32, ambient_dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        let k = vectors.len();
        let mut rows: Vec<Vec<u32>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut r = v.clone();
                r.extend((0..k).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = row_reduce(&mut rows, ambient_dim, p);
        assert_eq!(pivots.len(), k, "coordinate family must be independent");
        let transform = rows.iter().map(|r| r[ambient_dim..].to_vec()).collect();
        Self {
            p,
            vectors,
            pivots,
            transform,
        }
    }

    fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let p = self.p;
        let mut coords = vec![0u32; self.vectors.len()];
        for (row, &c) in self.transform.iter().zip(&self.pivots) {
            let a = v[c] % p;
            if a == 0 {
                continue;
            }
            for (x, &t) in coords.iter_mut().zip(row) {
                *x = add_mod(*x, mul_mod(a, t, p), p);
            }
        }
        let mut check = vec![0u32; v.len()];
        for (vec, &c) in self.vectors.iter().zip(&coords) {
            for (x, &y) in check.iter_mut().zip(vec) {
                *x = add_mod(*x, mul_mod(c, y, p), p);
            }
        }
        (check.iter().zip(v).all(|(&a, &b)| a == b % p)).then_some(coords)
    }
}

/// The quotient `A / (A ∩ B)` together with lift and projection data.
///
/// Classes are represented by a fixed complement of `A ∩ B` inside `A`, chosen
/// deterministically from the echelon bases.
#[derive(Clone, Debug)]
pub struct Subquotient {
    sub: Subspace,
    quotient: Subspace,
    complement: Vec<Vec<u32>>,
    coords: CoordinateSystem,
}

impl Subquotient {
    pub fn new(a: &Subspace, b: &Subspace) -> Result<Self> {
        let quotient = a.intersection(b)?;
        let mut span = quotient.clone();
        let mut complement = Vec::new();
        for v in a.basis() {
            if !span.contains(v) {
                complement.push(v.clone());
                span = span.sum(&Subspace::from_vectors(a.p, a.ambient_dim, std::slice::from_ref(v))?)?;
            }
        }
        let mut family = complement.clone();
        family.extend(quotient.basis().iter().cloned());
        let coords = CoordinateSystem::new(a.p, a.ambient_dim, family);
        Ok(Self {
            sub: a.clone(),
            quotient,
            complement,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn quotient(&self) -> &Subspace {
        &self.quotient
    }

    /// Representatives of the basis classes, as vectors in the ambient space.
    pub fn complement(&self) -> &[Vec<u32>] {
        &self.complement
    }

    /// `ambient_dim x dim` matrix sending class coordinates to representatives.
    pub fn lift_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.sub.p, self.sub.ambient_dim, &self.complement)
    }

    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        self.lift_matrix().apply(coords)
    }

    /// Class of `v`, which must lie in the sub space.
    pub fn project(&self, v: &[u32]) -> Result<Vec<u32>> {
        let mut c = self.coords.coordinates(v).ok_or(Error::NotInSubspace)?;
        c.truncate(self.complement.len());
        Ok(c)
    }
}

/// Presentation of `A / (A ∩ B)`; fails when the ambient spaces differ.
pub fn subquotient(a: &Subspace, b: &Subspace) -> Result<Subquotient> {
    Subquotient::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(p: u32, n: usize, v: &[&[u32]]) -> Subspace {
        Subspace::from_vectors(p, n, &v.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn subquotient_examples() {
        let full = Subspace::full(2, 3);
        let zero = Subspace::zero(2, 3);
        assert_eq!(subquotient(&full, &zero).unwrap().dim(), 3);
        assert_eq!(subquotient(&full, &full).unwrap().dim(), 0);
        let a = span(2, 2, &[&[1, 0], &[0, 1]]);
        let b = span(2, 2, &[&[1, 1]]);
        assert_eq!(subquotient(&a, &b).unwrap().dim(), 1);
    }

    #[test]
    fn subquotient_rejects_ambient_mismatch() {
        let a = Subspace::full(2, 2);
        let b = Subspace::full(2, 3);
        assert_eq!(subquotient(&a, &b).unwrap_err(), Error::AmbientMismatch(2, 3));
    }

    #[test]
    fn projection_kills_the_quotient() {
        let a = Subspace::full(3, 3);
        let b = span(3, 3, &[&[1, 2, 0]]);
        let sq = subquotient(&a, &b).unwrap();
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.project(&[1, 2, 0]).unwrap(), vec![0, 0]);
        for i in 0..2 {
            let mut e = vec![0; 2];
            e[i] = 1;
            assert_eq!(sq.project(&sq.lift(&e)).unwrap(), e);
        }
    }

    #[test]
    fn projection_outside_sub_fails() {
        let a = span(5, 2, &[&[1, 0]]);
        let sq = subquotient(&a, &Subspace::zero(5, 2)).unwrap();
        assert_eq!(sq.project(&[0, 1]), Err(Error::NotInSubspace));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = span(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(2, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), span(2, 3, &[&[0, 1, 0]]));
        let m = FpMatrix::from_entries(2, 1, 3, &[1, 1, 0]).unwrap();
        let pre = Subspace::preimage(&m, &Subspace::zero(2, 1)).unwrap();
        assert_eq!(pre, m.kernel());
    }
}
