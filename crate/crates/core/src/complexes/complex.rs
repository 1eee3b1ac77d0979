use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flinalg::{validate_prime, FpMatrix, Subquotient, Subspace};

/// A bounded chain complex of finite-dimensional F_p vector spaces.
///
/// Only nonzero degrees are stored; `d(n)` is the differential `C_n → C_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    p: u32,
    dims: BTreeMap<i32, usize>,
    differentials: BTreeMap<i32, FpMatrix>,
}

impl GradedComplex {
    /// Validates shapes and `d ∘ d = 0`. Missing differentials are zero.
    pub fn new(p: u32, dims: BTreeMap<i32, usize>, differentials: BTreeMap<i32, FpMatrix>) -> Result<Self> {
        validate_prime(u64::from(p))?;
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        for (&n, d) in &differentials {
            if d.p() != p {
                return Err(Error::PrimeMismatch(p, d.p()));
            }
            if d.rows() != dim(n - 1) || d.cols() != dim(n) {
                return Err(Error::Shape(format!(
                    "differential in degree {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dim(n - 1),
                    dim(n)
                )));
            }
        }
        let mut normalized = BTreeMap::new();
        for &n in dims.keys() {
            if dim(n - 1) > 0 {
                let d = differentials
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| FpMatrix::zeros(p, dim(n - 1), dim(n)));
                normalized.insert(n, d);
            }
        }
        let complex = Self {
            p,
            dims,
            differentials: normalized,
        };
        for &n in complex.differentials.keys() {
            if !complex.d(n - 1).mul(&complex.d(n)).is_zero() {
                return Err(Error::DifferentialSquare(n));
            }
        }
        Ok(complex)
    }

    pub fn zero(p: u32) -> Self {
        Self {
            p,
            dims: BTreeMap::new(),
            differentials: BTreeMap::new(),
        }
    }

    /// One generator in degree `n`.
    pub fn sphere(p: u32, n: i32) -> Self {
        Self::new(p, BTreeMap::from([(n, 1)]), BTreeMap::new()).expect("sphere is valid")
    }

    /// Generators in degrees `n` and `n - 1` with the top one hitting the bottom one.
    pub fn disk(p: u32, n: i32) -> Self {
        Self::new(
            p,
            BTreeMap::from([(n, 1), (n - 1, 1)]),
            BTreeMap::from([(n, FpMatrix::identity(p, 1))]),
        )
        .expect("disk is valid")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// The differential `C_n → C_{n-1}`.
    pub fn d(&self, n: i32) -> FpMatrix {
        self.differentials
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.p, self.dim(n - 1), self.dim(n)))
    }

    /// Smallest and largest degree with a nonzero chain group.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn cycles(&self, n: i32) -> Subspace {
        self.d(n).kernel()
    }

    pub fn boundaries(&self, n: i32) -> Subspace {
        self.d(n + 1).image()
    }

    pub fn homology(&self, n: i32) -> Homology {
        let quotient = Subquotient::new(&self.cycles(n), &self.boundaries(n)).expect("same ambient space");
        Homology { degree: n, quotient }
    }

    pub fn homology_dim(&self, n: i32) -> usize {
        let cycles = self.dim(n) - self.d(n).rank();
        cycles - self.d(n + 1).rank()
    }

    /// Nonzero homology dimensions by degree.
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.dims
            .keys()
            .map(|&n| (n, self.homology_dim(n)))
            .filter(|&(_, h)| h > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    /// `(Σ^k C)_n = C_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> GradedComplex {
        let dims = self.dims.iter().map(|(&n, &d)| (n + k, d)).collect();
        let differentials = self
            .differentials
            .iter()
            .map(|(&n, d)| (n + k, if k % 2 == 0 { d.clone() } else { d.neg() }))
            .collect();
        GradedComplex {
            p: self.p,
            dims,
            differentials,
        }
    }

    pub fn direct_sum(&self, other: &GradedComplex) -> Result<GradedComplex> {
        self.check_prime(other)?;
        let mut dims = self.dims.clone();
        for (&n, &d) in &other.dims {
            *dims.entry(n).or_insert(0) += d;
        }
        let differentials = dims
            .keys()
            .map(|&n| (n, self.d(n).block_diagonal(&other.d(n))))
            .collect();
        GradedComplex::new(self.p, dims, differentials)
    }

    /// Tensor product with the Koszul sign `(-1)^i` on `1 ⊗ d` for `i = deg` of the left factor.
    ///
    /// In degree `n` the basis runs over blocks `C_i ⊗ W_{n-i}` in increasing `i`,
    /// each block in Kronecker order.
    pub fn tensor(&self, other: &GradedComplex) -> Result<GradedComplex> {
        self.check_prime(other)?;
        let p = self.p;
        let mut dims = BTreeMap::new();
        for (&i, &a) in &self.dims {
            for (&j, &b) in &other.dims {
                *dims.entry(i + j).or_insert(0) += a * b;
            }
        }
        let mut differentials = BTreeMap::new();
        for &n in dims.keys() {
            let source = tensor_layout(self, other, n);
            let target = tensor_layout(self, other, n - 1);
            let mut d = FpMatrix::zeros(p, dims.get(&(n - 1)).copied().unwrap_or(0), dims[&n]);
            for &(i, offset) in &source {
                let j = n - i;
                let (ci, wj) = (self.dim(i), other.dim(j));
                if let Some(&(_, to)) = target.iter().find(|&&(ti, _)| ti == i - 1) {
                    let block = self.d(i).kronecker(&FpMatrix::identity(p, wj));
                    d.set_block(to, offset, &block);
                }
                if let Some(&(_, to)) = target.iter().find(|&&(ti, _)| ti == i) {
                    let mut block = FpMatrix::identity(p, ci).kronecker(&other.d(j));
                    if i.rem_euclid(2) == 1 {
                        block = block.neg();
                    }
                    d.set_block(to, offset, &block);
                }
            }
            differentials.insert(n, d);
        }
        GradedComplex::new(p, dims, differentials)
    }

    /// Degreewise linear dual with negated grading: `(DW)_n = (W_{-n})^*`.
    ///
    /// The differential is `-(-1)^n` times the transpose, the sign of `Hom(W, F_p)`.
    pub fn dual(&self) -> GradedComplex {
        let dims = self.dims.iter().map(|(&n, &d)| (-n, d)).collect();
        let differentials = self
            .dims
            .keys()
            .map(|&m| {
                let n = -m;
                let t = self.d(-n + 1).transpose();
                (n, if n.rem_euclid(2) == 0 { t.neg() } else { t })
            })
            .collect();
        GradedComplex::new(self.p, dims, differentials).expect("dual of a complex is a complex")
    }

    /// Bottom degree of nonzero homology: `conn(W) = min{n : H_n(W) ≠ 0}`.
    pub fn connectivity(&self) -> Result<i32> {
        self.homology_dims()
            .keys()
            .next()
            .copied()
            .ok_or(Error::UndefinedConnectivity)
    }

    /// Top degree of nonzero homology; equals `-conn(DW)`.
    pub fn top_homology_degree(&self) -> Result<i32> {
        self.homology_dims()
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::UndefinedConnectivity)
    }

    pub(crate) fn check_prime(&self, other: &GradedComplex) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }
}

/// Blocks `(i, offset)` of `(C ⊗ W)_n`, one per `i` with `C_i ⊗ W_{n-i} ≠ 0`.
pub(crate) fn tensor_layout(c: &GradedComplex, w: &GradedComplex, n: i32) -> Vec<(i32, usize)> {
    let mut offset = 0;
    let mut out = Vec::new();
    for (&i, &a) in c.dims() {
        let b = w.dim(n - i);
        if b > 0 {
            out.push((i, offset));
            offset += a * b;
        }
    }
    out
}

/// `H_n = Z_n / B_n` with chosen representative cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: i32,
    quotient: Subquotient,
}

impl Homology {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cycles(&self) -> &Subspace {
        self.quotient.sub()
    }

    pub fn boundaries(&self) -> &Subspace {
        self.quotient.quotient()
    }

    /// Representative cycles, one per basis class.
    pub fn representatives(&self) -> &[Vec<u32>] {
        self.quotient.complement()
    }

    pub fn representative_matrix(&self) -> FpMatrix {
        self.quotient.lift_matrix()
    }

    /// Coordinates of the class of a cycle.
    pub fn class_of(&self, cycle: &[u32]) -> Result<Vec<u32>> {
        self.quotient.project(cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// a in degree 1, b in degree 0, d(a) = b.
    fn two_generator() -> GradedComplex {
        GradedComplex::disk(2, 1)
    }

    #[test]
    fn homology_examples() {
        let s = GradedComplex::sphere(2, 0);
        assert_eq!(s.homology(0).dim(), 1);
        assert_eq!(s.homology(1).dim(), 0);
        assert_eq!(s.homology(-1).dim(), 0);
        let c = two_generator();
        for n in -1..=2 {
            assert_eq!(c.homology(n).dim(), 0);
        }
        let z = GradedComplex::zero(3);
        assert!(z.homology_dims().is_empty());
    }

    #[test]
    fn rejects_nonzero_square() {
        let dims = BTreeMap::from([(2, 1), (1, 1), (0, 1)]);
        let one = FpMatrix::identity(2, 1);
        let err = GradedComplex::new(2, dims, BTreeMap::from([(2, one.clone()), (1, one)])).unwrap_err();
        assert_eq!(err, Error::DifferentialSquare(2));
    }

    #[test]
    fn rejects_composite_prime() {
        assert_eq!(
            GradedComplex::new(6, BTreeMap::new(), BTreeMap::new()).unwrap_err(),
            Error::NotPrime(6)
        );
    }

    #[test]
    fn tensor_with_spheres() {
        let c = two_generator();
        assert_eq!(c.tensor(&GradedComplex::sphere(2, 0)).unwrap(), c);
        assert_eq!(
            GradedComplex::sphere(3, 2)
                .tensor(&GradedComplex::sphere(3, -5))
                .unwrap(),
            GradedComplex::sphere(3, -3)
        );
    }

    #[test]
    fn tensor_squares_to_zero_at_odd_primes() {
        let disk = GradedComplex::disk(3, 2);
        let t = disk.tensor(&GradedComplex::disk(3, 1)).unwrap();
        assert_eq!(t.total_dim(), 4);
        assert!(t.is_acyclic());
    }

    #[test]
    fn tensor_prime_mismatch() {
        let err = GradedComplex::sphere(2, 0)
            .tensor(&GradedComplex::sphere(3, 0))
            .unwrap_err();
        assert_eq!(err, Error::PrimeMismatch(2, 3));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(GradedComplex::sphere(2, 0).dual(), GradedComplex::sphere(2, 0));
        assert_eq!(GradedComplex::sphere(2, 3).dual(), GradedComplex::sphere(2, -3));
        let d = GradedComplex::disk(5, 4).dual();
        assert_eq!(d.dims(), &BTreeMap::from([(-4, 1), (-3, 1)]));
        assert!(d.is_acyclic());
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(GradedComplex::sphere(2, 0).connectivity(), Ok(0));
        assert_eq!(GradedComplex::sphere(2, 5).connectivity(), Ok(5));
        assert_eq!(two_generator().connectivity(), Err(Error::UndefinedConnectivity));
        let w = GradedComplex::sphere(2, 1)
            .direct_sum(&GradedComplex::sphere(2, 4))
            .unwrap();
        assert_eq!(w.connectivity(), Ok(1));
        assert_eq!(w.top_homology_degree(), Ok(4));
        assert_eq!(w.dual().connectivity(), Ok(-4));
    }

    #[test]
    fn shift_moves_degrees() {
        let c = two_generator().shift(3);
        assert_eq!(c.degree_range(), Some((3, 4)));
        assert!(c.is_acyclic());
    }
}
