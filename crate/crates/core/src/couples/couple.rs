use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::couples::{Bidegree, BigradedModule};
use crate::error::{Error, Result};
use crate::flinalg::{subquotient, FpMatrix, Subspace};
use crate::towers::Tower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CoupleMap {
    I,
    J,
    K,
}

impl fmt::Display for CoupleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoupleMap::I => "i",
            CoupleMap::J => "j",
            CoupleMap::K => "k",
        })
    }
}

/// The exact couple of a tower at level `r`.
///
/// `D` is kept for `s` in `[s_min, S]` with `s_min = -(S + 2)`, which is enough
/// for every derived couple up to level `S + 3`; below `0` it is `H(F_0)`.
/// `E` lives in `[0, S]`. Maps are keyed by their source bidegree. Every term
/// carries a lift matrix from its level-`r` coordinates to level-1
/// coordinates (homology classes of `F_s` and `K_s` in the bases chosen by
/// [`crate::complexes::GradedComplex::homology`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCouple {
    p: u32,
    r: i32,
    s_min: i32,
    s_max: i32,
    d_dims: BTreeMap<Bidegree, usize>,
    e_dims: BTreeMap<Bidegree, usize>,
    i: BTreeMap<Bidegree, FpMatrix>,
    j: BTreeMap<Bidegree, FpMatrix>,
    k: BTreeMap<Bidegree, FpMatrix>,
    d_lifts: BTreeMap<Bidegree, FpMatrix>,
    e_lifts: BTreeMap<Bidegree, FpMatrix>,
}

/// A place where a couple fails to be exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    /// `"D"` for `ker i = im k`, `"D'"` for `ker j = im i`, `"E"` for `ker k = im j`.
    pub node: &'static str,
    pub bidegree: Bidegree,
    /// A vector in one of the two subspaces but not the other.
    pub witness: Vec<u32>,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub checked: usize,
    pub failures: Vec<ExactnessFailure>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ExactCouple {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> i32 {
        self.r
    }

    /// Filtration window `[s_min, s_max]` on which `D` is stored.
    pub fn window(&self) -> (i32, i32) {
        (self.s_min, self.s_max)
    }

    pub fn d_dim(&self, b: Bidegree) -> usize {
        self.d_dims.get(&b).copied().unwrap_or(0)
    }

    pub fn e_dim(&self, b: Bidegree) -> usize {
        self.e_dims.get(&b).copied().unwrap_or(0)
    }

    pub fn d_module(&self) -> BigradedModule {
        BigradedModule::new(self.p, self.d_dims.clone())
    }

    pub fn e_module(&self) -> BigradedModule {
        BigradedModule::new(self.p, self.e_dims.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.d_dims.is_empty() && self.e_dims.is_empty()
    }

    pub fn i_target(&self, b: Bidegree) -> Bidegree {
        b - Bidegree::new(1, 1)
    }

    pub fn j_target(&self, b: Bidegree) -> Bidegree {
        b + Bidegree::new(self.r - 1, self.r - 1)
    }

    pub fn k_target(&self, b: Bidegree) -> Bidegree {
        b + Bidegree::new(1, 0)
    }

    fn source_dim(&self, which: CoupleMap, b: Bidegree) -> usize {
        match which {
            CoupleMap::I | CoupleMap::J => self.d_dim(b),
            CoupleMap::K => self.e_dim(b),
        }
    }

    fn target_dim(&self, which: CoupleMap, b: Bidegree) -> usize {
        match which {
            CoupleMap::I => self.d_dim(self.i_target(b)),
            CoupleMap::J => self.e_dim(self.j_target(b)),
            CoupleMap::K => self.d_dim(self.k_target(b)),
        }
    }

    fn store(&self, which: CoupleMap) -> &BTreeMap<Bidegree, FpMatrix> {
        match which {
            CoupleMap::I => &self.i,
            CoupleMap::J => &self.j,
            CoupleMap::K => &self.k,
        }
    }

    /// Matrix of `i`, `j` or `k` out of bidegree `b`, zero where nothing is stored.
    pub fn map(&self, which: CoupleMap, b: Bidegree) -> FpMatrix {
        self.store(which)
            .get(&b)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.p, self.target_dim(which, b), self.source_dim(which, b)))
    }

    /// Replaces one map, keeping dimensions. Used to build broken couples for
    /// negative controls.
    pub fn with_map(&self, which: CoupleMap, b: Bidegree, m: FpMatrix) -> Result<ExactCouple> {
        if m.rows() != self.target_dim(which, b) || m.cols() != self.source_dim(which, b) || m.p() != self.p {
            return Err(Error::Shape(format!("replacement {which} at {b} has the wrong shape")));
        }
        let mut out = self.clone();
        let store = match which {
            CoupleMap::I => &mut out.i,
            CoupleMap::J => &mut out.j,
            CoupleMap::K => &mut out.k,
        };
        store.insert(b, m);
        Ok(out)
    }

    /// `d_r = j ∘ k` out of `b`, landing in `b + (r, r - 1)`.
    pub fn differential(&self, b: Bidegree) -> FpMatrix {
        let mid = self.k_target(b);
        self.map(CoupleMap::J, mid).mul(&self.map(CoupleMap::K, b))
    }

    pub fn differential_target(&self, b: Bidegree) -> Bidegree {
        b + Bidegree::new(self.r, self.r - 1)
    }

    /// Columns are the basis of `D_r^b` in level-1 coordinates.
    pub fn d_lift(&self, b: Bidegree) -> FpMatrix {
        self.d_lifts
            .get(&b)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.p, 0, 0))
    }

    /// Columns are representatives of the basis of `E_r^b` in level-1 coordinates.
    pub fn e_lift(&self, b: Bidegree) -> FpMatrix {
        self.e_lifts
            .get(&b)
            .cloned()
            .unwrap_or_else(|| FpMatrix::zeros(self.p, 0, 0))
    }

    /// Checks `ker = im` at every node of the unrolled sequence
    /// `E^{s-1,t} → D^{s,t} → D^{s-1,t-1}`, `D^{s+1,t+1} → D^{s,t} → E^{s+r-1,t+r-1}`,
    /// `D^{s-r+1,t-r+1} → E^{s,t} → D^{s+1,t}`. The bottom `D` of the window has
    /// no outgoing `i` and is skipped for the first check.
    pub fn verify_les(&self) -> ExactnessReport {
        let mut report = ExactnessReport::default();
        let mut check = |node: &'static str, b: Bidegree, out: FpMatrix, incoming: FpMatrix| {
            report.checked += 1;
            let kernel = out.kernel();
            let image = incoming.image();
            let missing = kernel.basis().iter().find(|v| !image.contains(v));
            let extra = image.basis().iter().find(|v| !kernel.contains(v));
            if let Some(w) = extra.or(missing) {
                report.failures.push(ExactnessFailure {
                    node,
                    bidegree: b,
                    witness: w.clone(),
                    kernel_dim: kernel.dim(),
                    image_dim: image.dim(),
                });
            }
        };
        for &b in self.d_dims.keys() {
            if b.s > self.s_min {
                let from = b - Bidegree::new(1, 0);
                check("D", b, self.map(CoupleMap::I, b), self.map(CoupleMap::K, from));
            }
            let from = b + Bidegree::new(1, 1);
            check("D'", b, self.map(CoupleMap::J, b), self.map(CoupleMap::I, from));
        }
        for &b in self.e_dims.keys() {
            let from = b - Bidegree::new(self.r - 1, self.r - 1);
            check("E", b, self.map(CoupleMap::K, b), self.map(CoupleMap::J, from));
        }
        report
    }

    /// The derived couple at level `r + 1`.
    pub fn derive(&self) -> Result<ExactCouple> {
        if let Some(f) = self.verify_les().failures.first() {
            return Err(Error::NotExact {
                node: f.node,
                bidegree: f.bidegree,
            });
        }
        let p = self.p;
        let r = self.r;

        let mut d_new: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
        for &b in self.d_dims.keys() {
            let image = self.map(CoupleMap::I, b + Bidegree::new(1, 1)).image();
            if image.dim() > 0 {
                d_new.insert(b, image);
            }
        }
        let mut e_new = BTreeMap::new();
        for &b in self.e_dims.keys() {
            let cycles = self.differential(b).kernel();
            let from = b - Bidegree::new(r, r - 1);
            let boundaries = self.differential(from).image();
            let boundaries = if boundaries.ambient_dim() == cycles.ambient_dim() {
                boundaries
            } else {
                Subspace::zero(p, cycles.ambient_dim())
            };
            let sq = subquotient(&cycles, &boundaries)?;
            if sq.dim() > 0 {
                e_new.insert(b, sq);
            }
        }

        let mut out = ExactCouple {
            p,
            r: r + 1,
            s_min: self.s_min,
            s_max: self.s_max,
            d_dims: d_new.iter().map(|(&b, v)| (b, v.dim())).collect(),
            e_dims: e_new.iter().map(|(&b, q)| (b, q.dim())).collect(),
            i: BTreeMap::new(),
            j: BTreeMap::new(),
            k: BTreeMap::new(),
            d_lifts: BTreeMap::new(),
            e_lifts: BTreeMap::new(),
        };
        for (&b, v) in &d_new {
            out.d_lifts.insert(b, self.d_lift(b).mul(&v.matrix()));
        }
        for (&b, q) in &e_new {
            out.e_lifts.insert(b, self.e_lift(b).mul(&q.lift_matrix()));
        }

        for (&b, v) in &d_new {
            // i' out of b
            let to = self.i_target(b);
            if let Some(target) = d_new.get(&to) {
                let i = self.map(CoupleMap::I, b);
                let cols: Vec<Vec<u32>> = v
                    .basis()
                    .iter()
                    .map(|x| target.coordinates(&i.apply(x)).expect("i(im i) ⊂ im i"))
                    .collect();
                out.i.insert(b, FpMatrix::from_columns(p, target.dim(), &cols));
            }
            // j'(i(a)) = [j(a)]
            let above = b + Bidegree::new(1, 1);
            let to = self.j_target(above);
            if let Some(target) = e_new.get(&to) {
                let i = self.map(CoupleMap::I, above);
                let j = self.map(CoupleMap::J, above);
                let cols = v
                    .basis()
                    .iter()
                    .map(|y| {
                        let a = i.solve(y).expect("basis of im i has preimages");
                        target.project(&j.apply(&a))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.j.insert(b, FpMatrix::from_columns(p, target.dim(), &cols));
            }
        }
        for (&b, q) in &e_new {
            let to = self.k_target(b);
            if let Some(target) = d_new.get(&to) {
                let k = self.map(CoupleMap::K, b);
                let cols: Vec<Vec<u32>> = q
                    .complement()
                    .iter()
                    .map(|z| target.coordinates(&k.apply(z)).expect("k of a d-cycle lies in im i"))
                    .collect();
                out.k.insert(b, FpMatrix::from_columns(p, target.dim(), &cols));
            }
        }
        Ok(out)
    }
}

/// The level-1 couple: `D^{s,t} = H_{t-s}(F_s)`, `E^{s,t} = H_{t-s}(K_s)`, with
/// `i`, `j`, `k` induced by `F_{s+1} → F_s → K_s → Σ F_{s+1}`.
pub fn couple_from_tower(tower: &Tower) -> ExactCouple {
    let p = tower.p();
    let top = tower.top();
    let s_min = -(top + 2);
    let mut couple = ExactCouple {
        p,
        r: 1,
        s_min,
        s_max: top,
        d_dims: BTreeMap::new(),
        e_dims: BTreeMap::new(),
        i: BTreeMap::new(),
        j: BTreeMap::new(),
        k: BTreeMap::new(),
        d_lifts: BTreeMap::new(),
        e_lifts: BTreeMap::new(),
    };
    for s in s_min..=top {
        for (n, dim) in tower.level(s).homology_dims() {
            couple.d_dims.insert(Bidegree::from_stem(s, n), dim);
        }
    }
    for s in 0..=top {
        for (n, dim) in tower.cofiber(s as usize).complex.homology_dims() {
            couple.e_dims.insert(Bidegree::from_stem(s, n), dim);
        }
    }
    for (&b, &dim) in &couple.d_dims {
        couple.d_lifts.insert(b, FpMatrix::identity(p, dim));
    }
    for (&b, &dim) in &couple.e_dims {
        couple.e_lifts.insert(b, FpMatrix::identity(p, dim));
    }

    let d_keys: Vec<Bidegree> = couple.d_dims.keys().copied().collect();
    for b in d_keys {
        let to = couple.i_target(b);
        if to.s >= s_min && couple.d_dim(to) > 0 {
            let g = tower.composite(b.s, to.s);
            couple.i.insert(b, g.induced_on_homology(b.stem()));
        }
        if (0..=top).contains(&b.s) && couple.e_dim(b) > 0 {
            let inclusion = &tower.cofiber(b.s as usize).inclusion;
            couple.j.insert(b, inclusion.induced_on_homology(b.stem()));
        }
    }
    let e_keys: Vec<Bidegree> = couple.e_dims.keys().copied().collect();
    for b in e_keys {
        let to = couple.k_target(b);
        if couple.d_dim(to) == 0 {
            continue;
        }
        let n = b.stem();
        let cone = tower.cofiber(b.s as usize);
        let source = cone.complex.homology(n);
        let target = tower.level(to.s).homology(n - 1);
        let projection = cone.projection.component(n);
        let cols: Vec<Vec<u32>> = source
            .representatives()
            .iter()
            .map(|z| {
                target
                    .class_of(&projection.apply(z))
                    .expect("the cone projection is a chain map")
            })
            .collect();
        couple.k.insert(b, FpMatrix::from_columns(p, target.dim(), &cols));
    }
    couple
}
