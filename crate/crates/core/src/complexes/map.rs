use std::collections::BTreeMap;

use crate::complexes::complex::tensor_layout;
use crate::complexes::GradedComplex;
use crate::error::{Error, Result};
use crate::flinalg::FpMatrix;

/// A degree-preserving chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    source: GradedComplex,
    target: GradedComplex,
    components: BTreeMap<i32, FpMatrix>,
}

impl ComplexMap {
    /// Validates shapes and the chain-map condition `d' ∘ f = f ∘ d`.
    pub fn new(source: GradedComplex, target: GradedComplex, components: BTreeMap<i32, FpMatrix>) -> Result<Self> {
        source.check_prime(&target)?;
        for (&n, f) in &components {
            if f.rows() != target.dim(n) || f.cols() != source.dim(n) {
                return Err(Error::Shape(format!(
                    "map component in degree {n} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
        }
        let map = Self::from_parts(source, target, components);
        for &n in map.source.dims().keys() {
            let lhs = map.target.d(n).mul(&map.component(n));
            let rhs = map.component(n - 1).mul(&map.source.d(n));
            if lhs != rhs {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(map)
    }

    /// Skips the chain-map check; shapes must already be right.
    pub(crate) fn from_parts(
        source: GradedComplex,
        target: GradedComplex,
        components: BTreeMap<i32, FpMatrix>,
    ) -> Self {
        let components = source
            .dims()
            .keys()
            .filter(|&&n| target.dim(n) > 0)
            .map(|&n| {
                let f = components
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| FpMatrix::zeros(source.p(), target.dim(n), source.dim(n)));
                (n, f)
            })
            .collect();
        Self {
            source,
            target,
            components,
        }
    }

    pub fn identity(c: &GradedComplex) -> Self {
        let components = c
            .dims()
            .iter()
            .map(|(&n, &d)| (n, FpMatrix::identity(c.p(), d)))
            .collect();
        Self::from_parts(c.clone(), c.clone(), components)
    }

    pub fn zero(source: &GradedComplex, target: &GradedComplex) -> Self {
        Self::from_parts(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    pub fn p(&self) -> u32 {
        self.source.p()
    }

    pub fn component(&self, n: i32) -> FpMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.p(), self.target.dim(n), self.source.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i32, FpMatrix> {
        &self.components
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ComplexMap) -> Result<ComplexMap> {
        if first.target != self.source {
            return Err(Error::Shape("composing maps whose middle complexes differ".into()));
        }
        let components = first
            .source
            .dims()
            .keys()
            .map(|&n| (n, self.component(n).mul(&first.component(n))))
            .collect();
        Ok(Self::from_parts(first.source.clone(), self.target.clone(), components))
    }

    pub fn add(&self, other: &ComplexMap) -> Result<ComplexMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding maps with different endpoints".into()));
        }
        let components = self
            .components
            .iter()
            .map(|(&n, f)| Ok((n, f.add(&other.component(n))?)))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(self.source.clone(), self.target.clone(), components))
    }

    pub fn neg(&self) -> ComplexMap {
        let components = self.components.iter().map(|(&n, f)| (n, f.neg())).collect();
        Self::from_parts(self.source.clone(), self.target.clone(), components)
    }

    pub fn sub(&self, other: &ComplexMap) -> Result<ComplexMap> {
        self.add(&other.neg())
    }

    /// Matrix of `H_n(f)` in the homology bases chosen by [`GradedComplex::homology`].
    pub fn induced_on_homology(&self, n: i32) -> FpMatrix {
        let source = self.source.homology(n);
        let target = self.target.homology(n);
        let f = self.component(n);
        let columns: Vec<Vec<u32>> = source
            .representatives()
            .iter()
            .map(|z| target.class_of(&f.apply(z)).expect("chain maps send cycles to cycles"))
            .collect();
        FpMatrix::from_columns(self.p(), target.dim(), &columns)
    }

    /// Rank of `H_n(f)`, as `dim(f(Z_n) + B_n') - dim B_n'`.
    pub fn homology_rank(&self, n: i32) -> usize {
        let boundaries = self.target.boundaries(n);
        let image = self
            .source
            .cycles(n)
            .image_under(&self.component(n))
            .expect("component has source width");
        image.sum(&boundaries).expect("same ambient").dim() - boundaries.dim()
    }

    /// True iff `H_n(f) = 0` for every `n`.
    pub fn is_ghost(&self) -> bool {
        self.source.dims().keys().all(|&n| self.homology_rank(n) == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.components.values().all(FpMatrix::is_injective)
            && self.source.dims().keys().all(|&n| self.target.dim(n) > 0)
    }

    /// Degrees where the map fails to be injective.
    pub fn non_injective_degree(&self) -> Option<i32> {
        self.source
            .dims()
            .keys()
            .copied()
            .find(|&n| !self.component(n).is_injective())
    }

    /// `Σ^k f`.
    pub fn shift(&self, k: i32) -> ComplexMap {
        let components = self.components.iter().map(|(&n, f)| (n + k, f.clone())).collect();
        Self::from_parts(self.source.shift(k), self.target.shift(k), components)
    }

    /// `f ⊗ id_W`, using the block layout of [`GradedComplex::tensor`].
    pub fn tensor_identity(&self, w: &GradedComplex) -> Result<ComplexMap> {
        let source = self.source.tensor(w)?;
        let target = self.target.tensor(w)?;
        let p = self.p();
        let mut components = BTreeMap::new();
        for &n in source.dims().keys() {
            let mut m = FpMatrix::zeros(p, target.dim(n), source.dim(n));
            let to_layout = tensor_layout(&self.target, w, n);
            for (i, from) in tensor_layout(&self.source, w, n) {
                if let Some(&(_, to)) = to_layout.iter().find(|&&(ti, _)| ti == i) {
                    let block = self.component(i).kronecker(&FpMatrix::identity(p, w.dim(n - i)));
                    m.set_block(to, from, &block);
                }
            }
            components.insert(n, m);
        }
        Ok(Self::from_parts(source, target, components))
    }

    /// `f ⊕ g: A ⊕ C → B ⊕ D`.
    pub fn direct_sum(&self, other: &ComplexMap) -> Result<ComplexMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let components = source
            .dims()
            .keys()
            .map(|&n| (n, self.component(n).block_diagonal(&other.component(n))))
            .collect();
        Ok(Self::from_parts(source, target, components))
    }
}

/// Mapping cone with its canonical maps `target → cone(f) → Σ source`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: GradedComplex,
    pub inclusion: ComplexMap,
    pub projection: ComplexMap,
}

/// `cone(f)_n = target_n ⊕ source_{n-1}` with `d(y, x) = (dy + f x, -dx)`.
pub fn cone(f: &ComplexMap) -> Result<Cone> {
    let (src, tgt) = (f.source(), f.target());
    src.check_prime(tgt)?;
    let p = f.p();
    let dim = |n: i32| tgt.dim(n) + src.dim(n - 1);
    let degrees: Vec<i32> = tgt
        .dims()
        .keys()
        .copied()
        .chain(src.dims().keys().map(|&n| n + 1))
        .collect();
    let dims: BTreeMap<i32, usize> = degrees.iter().map(|&n| (n, dim(n))).collect();
    let mut differentials = BTreeMap::new();
    for &n in dims.keys() {
        let mut d = FpMatrix::zeros(p, dim(n - 1), dim(n));
        d.set_block(0, 0, &tgt.d(n));
        d.set_block(0, tgt.dim(n), &f.component(n - 1));
        d.set_block(tgt.dim(n - 1), tgt.dim(n), &src.d(n - 1).neg());
        differentials.insert(n, d);
    }
    let complex = GradedComplex::new(p, dims, differentials)?;

    let inclusion = ComplexMap::from_parts(
        tgt.clone(),
        complex.clone(),
        tgt.dims()
            .iter()
            .map(|(&n, &k)| {
                let mut m = FpMatrix::zeros(p, complex.dim(n), k);
                m.set_block(0, 0, &FpMatrix::identity(p, k));
                (n, m)
            })
            .collect(),
    );
    let shifted = src.shift(1);
    let projection = ComplexMap::from_parts(
        complex.clone(),
        shifted.clone(),
        shifted
            .dims()
            .iter()
            .map(|(&n, &k)| {
                let mut m = FpMatrix::zeros(p, k, complex.dim(n));
                m.set_block(0, tgt.dim(n), &FpMatrix::identity(p, k));
                (n, m)
            })
            .collect(),
    );
    Ok(Cone {
        complex,
        inclusion,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_examples() {
        let s = GradedComplex::sphere(3, 0);
        assert_eq!(
            ComplexMap::identity(&s).induced_on_homology(0),
            FpMatrix::identity(3, 1)
        );
        assert!(ComplexMap::zero(&s, &s).induced_on_homology(0).is_zero());
        // span{b} -> (a -> b): H_0 of the target vanishes
        let disk = GradedComplex::disk(2, 1);
        let incl = ComplexMap::new(
            GradedComplex::sphere(2, 0),
            disk,
            BTreeMap::from([(0, FpMatrix::identity(2, 1))]),
        )
        .unwrap();
        let h = incl.induced_on_homology(0);
        assert_eq!((h.rows(), h.cols()), (0, 1));
    }

    #[test]
    fn rejects_non_chain_maps() {
        let disk = GradedComplex::disk(2, 1);
        let top_only = BTreeMap::from([(1, FpMatrix::identity(2, 1))]);
        let err = ComplexMap::new(disk.clone(), disk, top_only).unwrap_err();
        assert_eq!(err, Error::NotChainMap(1));
    }

    #[test]
    fn cone_examples() {
        let c = GradedComplex::sphere(2, 0)
            .direct_sum(&GradedComplex::sphere(2, 2))
            .unwrap();
        assert!(cone(&ComplexMap::identity(&c)).unwrap().complex.is_acyclic());
        let zero = GradedComplex::zero(2);
        let to_zero = ComplexMap::zero(&c, &zero);
        assert_eq!(cone(&to_zero).unwrap().complex, c.shift(1));
        let iso = ComplexMap::identity(&GradedComplex::sphere(5, 0));
        assert!(cone(&iso).unwrap().complex.is_acyclic());
    }

    #[test]
    fn ghost_examples() {
        let s = GradedComplex::sphere(2, 1);
        assert!(ComplexMap::zero(&s, &s).is_ghost());
        assert!(!ComplexMap::identity(&s).is_ghost());
        let disk = GradedComplex::disk(3, 2);
        let twice = ComplexMap::identity(&disk).add(&ComplexMap::identity(&disk)).unwrap();
        assert!(twice.is_ghost());
    }
}
