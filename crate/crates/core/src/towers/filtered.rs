use std::collections::{BTreeMap, HashSet};

use crate::complexes::{ComplexMap, GradedComplex};
use crate::error::{Error, Result};
use crate::flinalg::{FpMatrix, Subspace};
use crate::towers::{Tower, TowerMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub filtration: usize,
}

/// A complex on named generators, each with a filtration; `F_s` is the span of
/// the generators of filtration at least `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    p: u32,
    generators: Vec<Generator>,
    /// Column `j` is `d(generator j)`.
    differential: FpMatrix,
}

impl FilteredComplex {
    pub fn new(p: u32, generators: Vec<Generator>, differential: FpMatrix) -> Result<Self> {
        let n = generators.len();
        if differential.p() != p {
            return Err(Error::PrimeMismatch(p, differential.p()));
        }
        if differential.rows() != n || differential.cols() != n {
            return Err(Error::Shape(format!("differential must be {n}x{n}")));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::Document(format!("duplicate generator name \"{}\"", g.name)));
            }
        }
        for (j, from) in generators.iter().enumerate() {
            for (i, to) in generators.iter().enumerate() {
                if differential.get(i, j) == 0 {
                    continue;
                }
                if to.degree != from.degree - 1 {
                    return Err(Error::Document(format!(
                        "d({}) hits \"{}\" of degree {}, expected degree {}",
                        from.name,
                        to.name,
                        to.degree,
                        from.degree - 1
                    )));
                }
                if to.filtration < from.filtration {
                    return Err(Error::Document(format!(
                        "d({}) lowers filtration: \"{}\" has filtration {} < {}",
                        from.name, to.name, to.filtration, from.filtration
                    )));
                }
            }
        }
        let square = differential.mul(&differential);
        if let Some(j) = (0..n).find(|&j| square.column(j).iter().any(|&x| x != 0)) {
            return Err(Error::Document(format!("d(d({})) is nonzero", generators[j].name)));
        }
        Ok(Self {
            p,
            generators,
            differential,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &FpMatrix {
        &self.differential
    }

    pub fn max_filtration(&self) -> usize {
        self.generators.iter().map(|g| g.filtration).max().unwrap_or(0)
    }

    /// Indices of the generators in `F_s` of degree `n`, in document order.
    fn basis(&self, s: usize, n: i32) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].degree == n && self.generators[i].filtration >= s)
            .collect()
    }

    fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.generators.iter().map(|g| g.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn level(&self, s: usize) -> GradedComplex {
        let mut dims = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for n in self.degrees() {
            let cols = self.basis(s, n);
            let rows = self.basis(s, n - 1);
            dims.insert(n, cols.len());
            differentials.insert(n, submatrix(&self.differential, &rows, &cols));
        }
        GradedComplex::new(self.p, dims, differentials).expect("validated filtered complex")
    }

    pub fn to_tower(&self) -> Tower {
        let top = self.max_filtration();
        let levels: Vec<GradedComplex> = (0..=top).map(|s| self.level(s)).collect();
        let maps = (0..top)
            .map(|s| {
                let comps = self
                    .degrees()
                    .into_iter()
                    .map(|n| (n, inclusion(self.p, &self.basis(s + 1, n), &self.basis(s, n))))
                    .collect();
                ComplexMap::from_parts(levels[s + 1].clone(), levels[s].clone(), comps)
            })
            .collect();
        Tower::new(levels, maps).expect("inclusions of subcomplexes form a tower")
    }
}

fn submatrix(m: &FpMatrix, rows: &[usize], cols: &[usize]) -> FpMatrix {
    let mut out = FpMatrix::zeros(m.p(), rows.len(), cols.len());
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            out.set(a, b, m.get(i, j));
        }
    }
    out
}

fn inclusion(p: u32, sub: &[usize], whole: &[usize]) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, whole.len(), sub.len());
    for (b, g) in sub.iter().enumerate() {
        let a = whole
            .iter()
            .position(|x| x == g)
            .expect("sub basis is part of the whole");
        m.set(a, b, 1);
    }
    m
}

/// A filtration-preserving chain map between filtered complexes, as a matrix
/// from source generators to target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMap {
    source: FilteredComplex,
    target: FilteredComplex,
    matrix: FpMatrix,
}

impl FilteredMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, matrix: FpMatrix) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::PrimeMismatch(source.p, target.p));
        }
        if matrix.rows() != target.generators.len() || matrix.cols() != source.generators.len() {
            return Err(Error::Shape("map matrix does not match the generator counts".into()));
        }
        for (j, from) in source.generators.iter().enumerate() {
            for (i, to) in target.generators.iter().enumerate() {
                if matrix.get(i, j) == 0 {
                    continue;
                }
                if to.degree != from.degree {
                    return Err(Error::Document(format!(
                        "map sends \"{}\" to \"{}\" of a different degree",
                        from.name, to.name
                    )));
                }
                if to.filtration < from.filtration {
                    return Err(Error::Document(format!(
                        "map sends \"{}\" to \"{}\" of lower filtration",
                        from.name, to.name
                    )));
                }
            }
        }
        let lhs = target.differential.mul(&matrix);
        let rhs = matrix.mul(&source.differential);
        if let Some(j) = (0..source.generators.len()).find(|&j| lhs.column(j) != rhs.column(j)) {
            return Err(Error::Document(format!(
                "not a chain map at \"{}\"",
                source.generators[j].name
            )));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn to_tower_map(&self) -> TowerMap {
        let (x, y) = (self.source.to_tower(), self.target.to_tower());
        let len = x.length().max(y.length());
        let (xp, yp) = (x.padded(len), y.padded(len));
        let mut degrees = self.source.degrees();
        degrees.extend(self.target.degrees());
        degrees.sort_unstable();
        degrees.dedup();
        let components = (0..=len)
            .map(|s| {
                let comps = degrees
                    .iter()
                    .map(|&n| {
                        (
                            n,
                            submatrix(&self.matrix, &self.target.basis(s, n), &self.source.basis(s, n)),
                        )
                    })
                    .collect();
                ComplexMap::from_parts(xp.level(s as i32).clone(), yp.level(s as i32).clone(), comps)
            })
            .collect();
        TowerMap::new(x, y, components).expect("filtered chain maps restrict to tower maps")
    }
}

impl Tower {
    /// Rewrites the tower on an adapted basis of `F_0`: a generator has
    /// filtration `s` when it was added to extend a basis of the image of
    /// `F_{s+1}` to one of `F_s`. Names are `e0, e1, …`.
    pub fn to_filtered(&self) -> FilteredComplex {
        let p = self.p();
        let f0 = self.level(0);
        let top = self.top();
        let mut generators = Vec::new();
        // per degree: (global indices, adapted basis as columns in F_0 coordinates)
        let mut bases: BTreeMap<i32, (Vec<usize>, Vec<Vec<u32>>)> = BTreeMap::new();
        for (&n, &dim) in f0.dims() {
            let mut chosen: Vec<Vec<u32>> = Vec::new();
            let mut filtrations = Vec::new();
            let mut span = Subspace::zero(p, dim);
            for s in (0..=top).rev() {
                let image = self.composite(s, 0).component(n).image();
                for v in image.basis() {
                    if !span.contains(v) {
                        span = span
                            .sum(&Subspace::from_vectors(p, dim, std::slice::from_ref(v)).expect("ambient"))
                            .expect("ambient");
                        chosen.push(v.clone());
                        filtrations.push(s as usize);
                    }
                }
            }
            let indices = (0..chosen.len()).map(|k| generators.len() + k).collect();
            for filtration in filtrations {
                generators.push(Generator {
                    name: String::new(),
                    degree: n,
                    filtration,
                });
            }
            bases.insert(n, (indices, chosen));
        }
        for (i, g) in generators.iter_mut().enumerate() {
            g.name = format!("e{i}");
        }
        let total = generators.len();
        let mut differential = FpMatrix::zeros(p, total, total);
        for (&n, (indices, columns)) in &bases {
            let Some((below_idx, below_cols)) = bases.get(&(n - 1)) else {
                continue;
            };
            let change = FpMatrix::from_columns(p, f0.dim(n - 1), below_cols);
            let d = f0.d(n);
            for (&j, v) in indices.iter().zip(columns) {
                let coords = change.solve(&d.apply(v)).expect("adapted basis spans F_0");
                for (&i, &c) in below_idx.iter().zip(&coords) {
                    differential.set(i, j, c);
                }
            }
        }
        FilteredComplex::new(p, generators, differential).expect("adapted basis respects the filtration")
    }
}
