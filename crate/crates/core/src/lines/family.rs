use crate::complexes::GradedComplex;
use crate::error::{Error, Result};
use crate::towers::{random_complex, Tower};

/// Seeds tried for the random members of the default family.
const RANDOM_BASES: usize = 2;
const RANDOM_BASE_GENERATORS: usize = 4;

/// A finite family of complexes `W` for conditions (3) and (4).
///
/// Members are suspensions `Σ^a B` of a list of base complexes, so per-`W`
/// data can be computed once per base and translated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFamily {
    bases: Vec<GradedComplex>,
    members: Vec<(usize, i32)>,
}

impl WFamily {
    /// Exactly the given complexes. Every one needs nonzero homology.
    pub fn new(ws: Vec<GradedComplex>) -> Result<Self> {
        for w in &ws {
            w.connectivity()?;
        }
        let members = (0..ws.len()).map(|i| (i, 0)).collect();
        Ok(Self { bases: ws, members })
    }

    /// `Σ^a B` and `Σ^a DB` for every base `B` and `|a| ≤ window`.
    pub fn closed(bases: Vec<GradedComplex>, window: i32) -> Result<Self> {
        let mut all: Vec<GradedComplex> = Vec::new();
        for b in bases {
            b.connectivity()?;
            let dual = b.dual();
            for c in [b, dual] {
                if !all.contains(&c) {
                    all.push(c);
                }
            }
        }
        let members = (0..all.len())
            .flat_map(|i| (-window..=window).map(move |a| (i, a)))
            .collect();
        Ok(Self { bases: all, members })
    }

    /// The base complexes of [`WFamily::default_for`] before closing up.
    pub fn default_bases(p: u32, seed: u64) -> Result<Vec<GradedComplex>> {
        let s = |n| GradedComplex::sphere(p, n);
        let mut bases = vec![
            s(0),
            s(0).direct_sum(&s(1))?,
            s(0).direct_sum(&s(2))?,
            s(-1).direct_sum(&s(1))?,
            GradedComplex::disk(p, 1).direct_sum(&s(0))?,
        ];
        let mut k = 0;
        let mut added = 0;
        while added < RANDOM_BASES {
            let w = random_complex(seed.wrapping_add(k), p as u64, RANDOM_BASE_GENERATORS, (0, 2))?;
            k += 1;
            if !w.is_acyclic() {
                bases.push(w);
                added += 1;
            }
        }
        Ok(bases)
    }

    /// Default family for a tower: the default bases closed under `Σ^a` and
    /// duality, with the window wide enough that every suspension of a dual
    /// that can meet the homology of the tower is a member.
    pub fn default_for(tower: &Tower, seed: u64) -> Result<Self> {
        let bases = Self::default_bases(tower.p(), seed)?;
        let (lo, hi) = tower.degree_range().unwrap_or((0, 0));
        let mut spread = 0;
        for b in &bases {
            spread = spread.max(b.connectivity()?.abs()).max(b.top_homology_degree()?.abs());
        }
        Self::closed(bases, lo.abs().max(hi.abs()) + spread + 1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bases(&self) -> &[GradedComplex] {
        &self.bases
    }

    /// `(base index, suspension)` of each member.
    pub fn members(&self) -> &[(usize, i32)] {
        &self.members
    }

    pub fn member(&self, i: usize) -> GradedComplex {
        let (b, a) = self.members[i];
        self.bases[b].shift(a)
    }

    pub fn p(&self) -> Option<u32> {
        self.bases.first().map(GradedComplex::p)
    }

    pub(crate) fn check_prime(&self, p: u32) -> Result<()> {
        match self.p() {
            Some(q) if q != p => Err(Error::PrimeMismatch(p, q)),
            _ => Ok(()),
        }
    }
}
