use std::collections::BTreeMap;

use crate::complexes::{cone, ComplexMap, Cone, GradedComplex};
use crate::error::{Error, Result};
use crate::flinalg::FpMatrix;

/// A strict tower `F_0 ← F_1 ← … ← F_S ← 0` with injective structure maps.
///
/// Levels are extended by `F_s = F_0` (identity structure maps) for `s < 0`
/// and by the zero complex for `s > S`, so every integer level is defined.
/// `K_s = cone(g_s)` where `g_s: F_{s+1} → F_s`; in particular `K_S = F_S`.
#[derive(Clone, Debug)]
pub struct Tower {
    p: u32,
    levels: Vec<GradedComplex>,
    maps: Vec<ComplexMap>,
    cofibers: Vec<Cone>,
    zero: GradedComplex,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.levels == other.levels && self.maps == other.maps
    }
}

impl Tower {
    /// Validates the structure maps and computes the cofibers.
    pub fn new(levels: Vec<GradedComplex>, maps: Vec<ComplexMap>) -> Result<Self> {
        let Some(first) = levels.first() else {
            return Err(Error::Shape("a tower needs at least one level".into()));
        };
        let p = first.p();
        if let Some(bad) = levels.iter().find(|c| c.p() != p) {
            return Err(Error::PrimeMismatch(p, bad.p()));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::Shape(format!(
                "{} levels need {} structure maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        let mut checked = Vec::with_capacity(maps.len());
        for (s, g) in maps.into_iter().enumerate() {
            if g.source() != &levels[s + 1] || g.target() != &levels[s] {
                return Err(Error::Shape(format!("structure map {s} has the wrong endpoints")));
            }
            let g = ComplexMap::new(g.source().clone(), g.target().clone(), g.components().clone())?;
            if let Some(degree) = g.non_injective_degree() {
                return Err(Error::NotInjective { level: s, degree });
            }
            checked.push(g);
        }
        Ok(Self::assemble(p, levels, checked))
    }

    fn assemble(p: u32, levels: Vec<GradedComplex>, maps: Vec<ComplexMap>) -> Self {
        let zero = GradedComplex::zero(p);
        let top = levels.len() - 1;
        let cofibers = (0..=top)
            .map(|s| {
                let g = if s < top {
                    maps[s].clone()
                } else {
                    ComplexMap::zero(&zero, &levels[top])
                };
                cone(&g).expect("structure maps share the prime")
            })
            .collect();
        Self {
            p,
            levels,
            maps,
            cofibers,
            zero,
        }
    }

    /// The tower with a single zero level.
    pub fn zero(p: u32) -> Self {
        Self::assemble(p, vec![GradedComplex::zero(p)], Vec::new())
    }

    /// `F_0 = C` and nothing above.
    pub fn constant(c: &GradedComplex) -> Self {
        Self::assemble(c.p(), vec![c.clone()], Vec::new())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `S`, the index of the top stored level.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> i32 {
        self.length() as i32
    }

    pub fn levels(&self) -> &[GradedComplex] {
        &self.levels
    }

    pub fn level(&self, s: i32) -> &GradedComplex {
        if s < 0 {
            &self.levels[0]
        } else if s > self.top() {
            &self.zero
        } else {
            &self.levels[s as usize]
        }
    }

    /// `g_s: F_{s+1} → F_s` for `0 ≤ s < S`.
    pub fn structure_map(&self, s: usize) -> &ComplexMap {
        &self.maps[s]
    }

    pub fn structure_maps(&self) -> &[ComplexMap] {
        &self.maps
    }

    /// `K_s` with its maps `F_s → K_s → Σ F_{s+1}`, for `0 ≤ s ≤ S`.
    pub fn cofiber(&self, s: usize) -> &Cone {
        &self.cofibers[s]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(GradedComplex::is_zero)
    }

    /// Degree range of `F_0`, which contains every level.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        self.levels[0].degree_range()
    }

    /// The composite `F_from → F_to`, `from ≥ to`.
    pub fn composite(&self, from: i32, to: i32) -> ComplexMap {
        assert!(from >= to, "composite must go down the tower");
        let source = self.level(from);
        let target = self.level(to);
        if from > self.top() {
            return ComplexMap::zero(source, target);
        }
        let (from, to) = (from.max(0) as usize, to.max(0) as usize);
        let mut map = ComplexMap::identity(source);
        for s in (to..from).rev() {
            map = self.maps[s].compose(&map).expect("adjacent levels match");
        }
        map
    }

    /// Rank of `H_n(g^{r-1}: F_{s+r-1} → F_s)`.
    pub fn composite_rank(&self, s: i32, r: i32, n: i32) -> usize {
        assert!(r >= 1, "page index must be at least 1");
        if s + r - 1 > self.top() {
            return 0;
        }
        self.composite(s + r - 1, s).homology_rank(n)
    }

    /// Whether `H_n(g^{r-1}: F_{s+r-1} → F_s)` vanishes; on failure returns a
    /// cycle of `F_{s+r-1}` whose image is not a boundary.
    pub fn composite_zero_on_h(&self, s: i32, r: i32, n: i32) -> CompositeOnHomology {
        assert!(r >= 1, "page index must be at least 1");
        if s + r - 1 > self.top() {
            return CompositeOnHomology::Zero;
        }
        let map = self.composite(s + r - 1, s);
        let induced = map.induced_on_homology(n);
        let rank = induced.rank();
        if rank == 0 {
            return CompositeOnHomology::Zero;
        }
        let column = (0..induced.cols())
            .find(|&j| induced.column(j).iter().any(|&x| x != 0))
            .expect("nonzero matrix has a nonzero column");
        let cycle = map.source().homology(n).representatives()[column].clone();
        CompositeOnHomology::Nonzero { rank, cycle }
    }

    /// Whether every map `W → F_{s+r-1}` becomes null in `F_s`. Over a field this
    /// is `H_n(g^{r-1}) = 0` for each `n` with `H_n(W) ≠ 0`.
    pub fn composite_null_from(&self, w: &GradedComplex, s: i32, r: i32) -> bool {
        w.homology_dims().keys().all(|&n| self.composite_rank(s, r, n) == 0)
    }

    /// Adds zero levels on top until the length is `len`.
    pub fn padded(&self, len: usize) -> Tower {
        if len <= self.length() {
            return self.clone();
        }
        let mut levels = self.levels.clone();
        let mut maps = self.maps.clone();
        while levels.len() <= len {
            let top = levels.last().expect("nonempty").clone();
            maps.push(ComplexMap::zero(&self.zero, &top));
            levels.push(self.zero.clone());
        }
        Self::assemble(self.p, levels, maps)
    }

    /// Levelwise `F_s ⊗ W` with structure maps `g_s ⊗ id`.
    pub fn smash(&self, w: &GradedComplex) -> Result<Tower> {
        if w.p() != self.p {
            return Err(Error::PrimeMismatch(self.p, w.p()));
        }
        let levels = self.levels.iter().map(|c| c.tensor(w)).collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .map(|g| g.tensor_identity(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(self.p, levels, maps))
    }

    pub fn shift(&self, k: i32) -> Tower {
        let levels = self.levels.iter().map(|c| c.shift(k)).collect();
        let maps = self.maps.iter().map(|g| g.shift(k)).collect();
        Self::assemble(self.p, levels, maps)
    }

    /// `self ⊕ other` with the inclusion and projection of each summand.
    pub fn direct_sum(&self, other: &Tower) -> Result<DirectSum> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let len = self.length().max(other.length());
        let (a, b) = (self.padded(len), other.padded(len));
        let levels = a
            .levels
            .iter()
            .zip(&b.levels)
            .map(|(x, y)| x.direct_sum(y))
            .collect::<Result<Vec<_>>>()?;
        let maps = a
            .maps
            .iter()
            .zip(&b.maps)
            .map(|(f, g)| f.direct_sum(g))
            .collect::<Result<Vec<_>>>()?;
        let sum = Self::assemble(self.p, levels, maps);
        let block = |first: bool, include: bool| -> TowerMap {
            let components = (0..=len)
                .map(|s| {
                    let (x, y) = (&a.levels[s], &b.levels[s]);
                    let whole = &sum.levels[s];
                    let part = if first { x } else { y };
                    let comps: BTreeMap<i32, FpMatrix> = part
                        .dims()
                        .iter()
                        .map(|(&n, &k)| {
                            let offset = if first { 0 } else { x.dim(n) };
                            let mut m = FpMatrix::zeros(self.p, whole.dim(n), k);
                            m.set_block(offset, 0, &FpMatrix::identity(self.p, k));
                            (n, if include { m } else { m.transpose() })
                        })
                        .collect();
                    if include {
                        ComplexMap::from_parts(part.clone(), whole.clone(), comps)
                    } else {
                        ComplexMap::from_parts(whole.clone(), part.clone(), comps)
                    }
                })
                .collect();
            let (src, tgt) = match (first, include) {
                (true, true) => (a.clone(), sum.clone()),
                (true, false) => (sum.clone(), a.clone()),
                (false, true) => (b.clone(), sum.clone()),
                (false, false) => (sum.clone(), b.clone()),
            };
            TowerMap {
                source: src,
                target: tgt,
                components,
            }
        };
        Ok(DirectSum {
            include_first: block(true, true),
            project_first: block(true, false),
            include_second: block(false, true),
            project_second: block(false, false),
            sum,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeOnHomology {
    Zero,
    Nonzero { rank: usize, cycle: Vec<u32> },
}

impl CompositeOnHomology {
    pub fn is_zero(&self) -> bool {
        matches!(self, CompositeOnHomology::Zero)
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Tower,
    pub include_first: TowerMap,
    pub project_first: TowerMap,
    pub include_second: TowerMap,
    pub project_second: TowerMap,
}

/// Levelwise chain maps commuting with the structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerMap {
    source: Tower,
    target: Tower,
    components: Vec<ComplexMap>,
}

impl TowerMap {
    /// Pads both towers to a common length; missing components are zero.
    pub fn new(source: Tower, target: Tower, components: Vec<ComplexMap>) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::PrimeMismatch(source.p, target.p));
        }
        let len = source.length().max(target.length());
        let (source, target) = (source.padded(len), target.padded(len));
        if components.len() > len + 1 {
            return Err(Error::Shape("more components than levels".into()));
        }
        let mut checked = Vec::with_capacity(len + 1);
        for s in 0..=len {
            let (x, y) = (&source.levels[s], &target.levels[s]);
            let f = match components.get(s) {
                Some(f) => {
                    if f.source() != x || f.target() != y {
                        return Err(Error::Shape(format!("component {s} has the wrong endpoints")));
                    }
                    ComplexMap::new(x.clone(), y.clone(), f.components().clone())?
                }
                None => ComplexMap::zero(x, y),
            };
            checked.push(f);
        }
        for s in 0..len {
            let lhs = checked[s].compose(&source.maps[s])?;
            let rhs = target.maps[s].compose(&checked[s + 1])?;
            if lhs != rhs {
                return Err(Error::NotTowerMap(s));
            }
        }
        Ok(Self {
            source,
            target,
            components: checked,
        })
    }

    pub fn identity(t: &Tower) -> Self {
        Self {
            source: t.clone(),
            target: t.clone(),
            components: t.levels.iter().map(ComplexMap::identity).collect(),
        }
    }

    pub fn zero(source: &Tower, target: &Tower) -> Self {
        Self::new(source.clone(), target.clone(), Vec::new()).expect("zero map is a tower map")
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn components(&self) -> &[ComplexMap] {
        &self.components
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &TowerMap) -> Result<TowerMap> {
        if first.target != self.source {
            return Err(Error::Shape("composing tower maps whose middle towers differ".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.compose(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }
}

/// Validated tower from explicit levels and structure maps.
pub fn make_tower(levels: Vec<GradedComplex>, maps: Vec<ComplexMap>) -> Result<Tower> {
    Tower::new(levels, maps)
}

/// Levelwise cone of a tower map `f: X → Y`, returning `Z`, `Y → Z` and `Z → ΣX`.
pub fn cofiber_tower(f: &TowerMap) -> Result<(Tower, TowerMap, TowerMap)> {
    let (x, y) = (&f.source, &f.target);
    let p = x.p;
    let cones: Vec<Cone> = f.components.iter().map(cone).collect::<Result<_>>()?;
    let levels: Vec<GradedComplex> = cones.iter().map(|c| c.complex.clone()).collect();
    let maps = (0..x.length())
        .map(|s| {
            let (from, to) = (&levels[s + 1], &levels[s]);
            let comps = from
                .dims()
                .keys()
                .map(|&n| {
                    let gy = y.maps[s].component(n);
                    let gx = x.maps[s].component(n - 1);
                    let mut m = FpMatrix::zeros(p, to.dim(n), from.dim(n));
                    m.set_block(0, 0, &gy);
                    m.set_block(gy.rows(), gy.cols(), &gx);
                    (n, m)
                })
                .collect();
            ComplexMap::from_parts(from.clone(), to.clone(), comps)
        })
        .collect();
    let z = Tower::new(levels, maps)?;
    let to_cofiber = TowerMap::new(
        y.clone(),
        z.clone(),
        cones.iter().map(|c| c.inclusion.clone()).collect(),
    )?;
    let connecting = TowerMap::new(
        z.clone(),
        x.shift(1),
        cones.iter().map(|c| c.projection.clone()).collect(),
    )?;
    Ok((z, to_cofiber, connecting))
}

/// Whether `j ∘ i` is levelwise chain-homotopic to the identity of `Y`, for
/// `i: Y → X` and `j: X → Y`. Over a field that means `j ∘ i - id` is a ghost.
pub fn is_retract(i: &TowerMap, j: &TowerMap) -> Result<bool> {
    if i.source != j.target || i.target != j.source {
        return Err(Error::Shape("retract maps must go Y → X → Y".into()));
    }
    let ji = j.compose(i)?;
    Ok(ji.components.iter().all(|f| {
        f.sub(&ComplexMap::identity(f.source()))
            .expect("same endpoints")
            .is_ghost()
    }))
}
