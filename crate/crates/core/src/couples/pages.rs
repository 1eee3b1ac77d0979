use std::collections::BTreeMap;

use serde::Serialize;

use crate::complexes::GradedComplex;
use crate::couples::{couple_from_tower, Bidegree, BigradedModule, ExactCouple};
use crate::error::{Error, Result};
use crate::flinalg::FpMatrix;
use crate::towers::Tower;

/// `E_r` with its differential `d_r` of bidegree `(r, r - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: i32,
    pub module: BigradedModule,
    /// `d_r` keyed by source bidegree; only nonzero maps are stored.
    pub differentials: BTreeMap<Bidegree, FpMatrix>,
    /// `D_r`, the image of `H(F_{s+r-1}) → H(F_s)`, on the stored window.
    pub d_module: BigradedModule,
}

impl Page {
    pub fn dim(&self, b: Bidegree) -> usize {
        self.module.dim(b)
    }

    pub fn differential_target(&self, b: Bidegree) -> Bidegree {
        b + Bidegree::new(self.r, self.r - 1)
    }

    pub fn differential(&self, b: Bidegree) -> FpMatrix {
        self.differentials.get(&b).cloned().unwrap_or_else(|| {
            FpMatrix::zeros(
                self.module.p(),
                self.module.dim(self.differential_target(b)),
                self.module.dim(b),
            )
        })
    }

    pub fn differential_rank(&self) -> usize {
        self.differentials.values().map(FpMatrix::rank).sum()
    }

    fn from_couple(c: &ExactCouple) -> Page {
        let module = c.e_module();
        let differentials = module
            .entries()
            .keys()
            .map(|&b| (b, c.differential(b)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Page {
            r: c.r(),
            module,
            differentials,
            d_module: c.d_module(),
        }
    }
}

/// Last page index reached by derivation; `d_r = 0` from `r = S + 1` on, so
/// later pages repeat this one.
pub fn stable_page_index(tower: &Tower) -> i32 {
    tower.top() + 2
}

/// Pages `1..=r_max` from one run of the derived-couple iteration. Pages past
/// [`stable_page_index`] are copies of the last derived page with `d_r = 0`.
pub fn pages(tower: &Tower, r_max: i32) -> Result<Vec<Page>> {
    if r_max < 1 {
        return Err(Error::BadPage(r_max));
    }
    let stop = r_max.min(stable_page_index(tower));
    let mut couple = couple_from_tower(tower);
    let mut out = vec![Page::from_couple(&couple)];
    for _ in 1..stop {
        couple = couple.derive()?;
        out.push(Page::from_couple(&couple));
    }
    while (out.len() as i32) < r_max {
        let mut next = out.last().expect("at least one page").clone();
        next.r += 1;
        next.differentials.clear();
        out.push(next);
    }
    Ok(out)
}

/// `E_r` by `r - 1` derivations from the level-1 couple.
pub fn page(tower: &Tower, r: i32) -> Result<Page> {
    Ok(pages(tower, r)?.pop().expect("r >= 1 pages"))
}

/// The derived couple at level `r`, for `1 ≤ r ≤ S + 3`.
pub fn derived_couple(tower: &Tower, r: i32) -> Result<ExactCouple> {
    if r < 1 || r > tower.top() + 3 {
        return Err(Error::BadPage(r));
    }
    let mut couple = couple_from_tower(tower);
    for _ in 1..r {
        couple = couple.derive()?;
    }
    Ok(couple)
}

/// The page of `T ∧ W` predicted from the page of `T`:
/// `dim E^{s,t} = Σ_n dim E^{s,t-n}(T) · dim H_n(W)`.
pub fn kunneth_page(page: &BigradedModule, w: &GradedComplex) -> BigradedModule {
    let h = w.homology_dims();
    let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (&b, &d) in page.entries() {
        for (&n, &hn) in &h {
            *dims.entry(Bidegree { s: b.s, t: b.t + n }).or_default() += d * hn;
        }
    }
    BigradedModule::new(page.p(), dims)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StemComparison {
    pub n: i32,
    pub e_infinity: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationComparison {
    pub bidegree: Bidegree,
    pub e_infinity: usize,
    /// `dim im(H(F_s) → H(F_0)) - dim im(H(F_{s+1}) → H(F_0))`.
    pub graded: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub converges: bool,
    pub stems: Vec<StemComparison>,
    pub mismatches: Vec<FiltrationComparison>,
}

/// `E_∞ = E_{S+1}`, compared with the filtration of `H(F_0)` by the images of
/// `H(F_s)`.
pub fn e_infinity(tower: &Tower) -> Result<(BigradedModule, ConvergenceReport)> {
    let einf = page(tower, tower.top() + 1)?.module;
    let f0 = tower.level(0);
    let homology = f0.homology_dims();

    let mut stems: BTreeMap<i32, usize> = BTreeMap::new();
    for (b, &d) in einf.entries() {
        *stems.entry(b.stem()).or_default() += d;
    }
    let mut all: Vec<i32> = stems.keys().chain(homology.keys()).copied().collect();
    all.sort_unstable();
    all.dedup();
    let stems: Vec<StemComparison> = all
        .into_iter()
        .map(|n| StemComparison {
            n,
            e_infinity: stems.get(&n).copied().unwrap_or(0),
            homology: homology.get(&n).copied().unwrap_or(0),
        })
        .collect();

    let image_dim = |s: i32, n: i32| tower.composite(s, 0).homology_rank(n);
    let mut mismatches = Vec::new();
    for n in stems.iter().map(|c| c.n) {
        for s in 0..=tower.top() {
            let b = Bidegree::from_stem(s, n);
            let graded = image_dim(s, n) - image_dim(s + 1, n);
            if graded != einf.dim(b) {
                mismatches.push(FiltrationComparison {
                    bidegree: b,
                    e_infinity: einf.dim(b),
                    graded,
                });
            }
        }
    }
    let converges = mismatches.is_empty() && stems.iter().all(|c| c.e_infinity == c.homology);
    Ok((
        einf,
        ConvergenceReport {
            converges,
            stems,
            mismatches,
        },
    ))
}
