use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::Serialize;

use crate::couples::{pages, stable_page_index, Bidegree, BigradedModule};
use crate::error::Result;
use crate::lines::{Intercept, LineSpec, MemberReport, VerificationReport, WFamily, Witness};
use crate::towers::Tower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// `D_r`: condition (1).
    D,
    /// `E_r`: condition (2).
    E,
}

/// An entry `(s, t)` of dimension `dim` that sits in the region of intercept
/// `b` iff `s - m·x ≥ b`.
#[derive(Clone, Copy, Debug)]
struct Cell {
    s: i32,
    t: i32,
    dim: usize,
    x: i32,
}

fn value(c: &Cell, m: Rational64) -> Rational64 {
    Rational64::from_integer(c.s as i64) - m * Rational64::from_integer(c.x as i64)
}

fn sup(cells: &[Cell], m: Rational64) -> Intercept {
    cells
        .iter()
        .map(|c| Intercept::Finite(value(c, m)))
        .max()
        .unwrap_or(Intercept::NegInf)
}

fn inside(cells: &[Cell], m: Rational64, b: Rational64) -> Vec<Witness> {
    let mut w: Vec<Witness> = cells
        .iter()
        .filter(|c| value(c, m) >= b)
        .map(|c| Witness {
            s: c.s,
            t: c.t,
            dim: c.dim,
        })
        .collect();
    w.sort();
    w
}

fn floor(x: Rational64) -> i32 {
    x.floor().to_integer() as i32
}

/// Per-base data for conditions (3) and (4).
#[derive(Clone, Debug)]
struct BaseTables {
    homology_degrees: Vec<i32>,
    conn: i32,
    /// `-conn(DB)`, the top degree of homology.
    top: i32,
    /// `E_r(T ∧ B)` for `r = 1..` up to stabilisation.
    pages: Vec<BigradedModule>,
}

/// Everything the condition checks read from a tower, computed once.
///
/// `D_r^{s,t}` is the rank of `H_{t-s}(F_{s+r-1}) → H_{t-s}(F_s)`, read off a
/// table of composite ranks; `E_r` comes from the derived couples.
#[derive(Clone, Debug)]
pub struct Tables {
    top: i32,
    /// Stems carrying homology at some level.
    stems: Vec<i32>,
    /// `(from, to) → n → rank` for `0 ≤ to ≤ from ≤ S`.
    ranks: BTreeMap<(i32, i32), BTreeMap<i32, usize>>,
    pages: Vec<BigradedModule>,
    family: Option<(WFamily, Vec<BaseTables>)>,
}

impl Tables {
    pub fn new(tower: &Tower) -> Result<Self> {
        let top = tower.top();
        let mut ranks = BTreeMap::new();
        let mut stems = BTreeSet::new();
        for from in 0..=top {
            for to in 0..=from {
                let g = tower.composite(from, to);
                let mut row = BTreeMap::new();
                for &n in tower.level(from).dims().keys() {
                    let rank = g.homology_rank(n);
                    if rank > 0 {
                        row.insert(n, rank);
                        stems.insert(n);
                    }
                }
                ranks.insert((from, to), row);
            }
        }
        let pages = pages(tower, stable_page_index(tower))?
            .into_iter()
            .map(|p| p.module)
            .collect();
        Ok(Self {
            top,
            stems: stems.into_iter().collect(),
            ranks,
            pages,
            family: None,
        })
    }

    /// Also smashes the tower with every base of the family.
    pub fn with_family(tower: &Tower, family: &WFamily) -> Result<Self> {
        family.check_prime(tower.p())?;
        let mut tables = Self::new(tower)?;
        let mut bases = Vec::with_capacity(family.bases().len());
        for b in family.bases() {
            let smashed = tower.smash(b)?;
            bases.push(BaseTables {
                homology_degrees: b.homology_dims().keys().copied().collect(),
                conn: b.connectivity()?,
                top: b.top_homology_degree()?,
                pages: pages(&smashed, stable_page_index(&smashed))?
                    .into_iter()
                    .map(|p| p.module)
                    .collect(),
            });
        }
        tables.family = Some((family.clone(), bases));
        Ok(tables)
    }

    pub fn top(&self) -> i32 {
        self.top
    }

    /// `dim D_r^{s, n+s}`; levels below 0 are `F_0`, levels above `S` vanish.
    pub fn d_rank(&self, r: i32, s: i32, n: i32) -> usize {
        let from = s + r - 1;
        if from > self.top {
            return 0;
        }
        self.ranks
            .get(&(from.max(0), s.max(0)))
            .and_then(|row| row.get(&n))
            .copied()
            .unwrap_or(0)
    }

    pub fn e_page(&self, r: i32) -> &BigradedModule {
        let k = (r.max(1) as usize - 1).min(self.pages.len() - 1);
        &self.pages[k]
    }

    /// Nonzero `D_r` entries with `s ≥ s_lo` (and `s ≥ -(r-1)` when `s_lo` is
    /// larger: below that `D_r` repeats `H(F_0)`).
    fn d_cells(&self, r: i32, s_lo: i32) -> Vec<Cell> {
        let mut cells = Vec::new();
        for s in s_lo..=self.top {
            for &n in &self.stems {
                let dim = self.d_rank(r, s, n);
                if dim > 0 {
                    cells.push(Cell { s, t: n + s, dim, x: n });
                }
            }
        }
        cells
    }

    fn e_cells(&self, r: i32) -> Vec<Cell> {
        self.e_page(r)
            .entries()
            .iter()
            .map(|(b, &dim)| Cell {
                s: b.s,
                t: b.t,
                dim,
                x: b.stem(),
            })
            .collect()
    }

    /// Lowest filtration a region `s ≥ m·x + b` can reach for `x` in `xs`.
    fn region_floor(m: Rational64, b: Rational64, xs: impl Iterator<Item = i32>) -> Option<i32> {
        xs.map(|x| floor(m * Rational64::from_integer(x as i64) + b)).min()
    }

    /// `β` for `D_r` or `E_r`: the largest `s - m(t-s)` over nonzero entries.
    pub fn min_intercept(&self, m: Rational64, r: i32, flavor: Flavor) -> Intercept {
        match flavor {
            Flavor::D => sup(&self.d_cells(r, -(r - 1)), m),
            Flavor::E => sup(&self.e_cells(r), m),
        }
    }

    pub fn cond1(&self, spec: LineSpec) -> VerificationReport {
        let floor = Self::region_floor(spec.m, spec.b, self.stems.iter().copied()).unwrap_or(0);
        let cells = self.d_cells(spec.r, floor.min(-(spec.r - 1)));
        VerificationReport::new(
            "1",
            spec,
            inside(&cells, spec.m, spec.b),
            self.min_intercept(spec.m, spec.r, Flavor::D),
        )
    }

    pub fn cond2(&self, spec: LineSpec) -> VerificationReport {
        let cells = self.e_cells(spec.r);
        VerificationReport::new("2", spec, inside(&cells, spec.m, spec.b), sup(&cells, spec.m))
    }

    fn family(&self) -> &(WFamily, Vec<BaseTables>) {
        self.family
            .as_ref()
            .expect("tables built without a W-family; use Tables::with_family")
    }

    /// Cells for member `(base, a)` under condition (3): `(s, n)` with
    /// `n ∈ hdeg(Σ^a B)` where `H_n(g^{r-1}) ≠ 0`, all with `x = w`.
    fn cond3_cells(&self, base: &BaseTables, a: i32, r: i32, s_lo: i32) -> Vec<Cell> {
        let w = base.top + a;
        let mut cells = Vec::new();
        for s in s_lo..=self.top {
            for &n0 in &base.homology_degrees {
                let n = n0 + a;
                let dim = self.d_rank(r, s, n);
                if dim > 0 {
                    cells.push(Cell { s, t: n + s, dim, x: w });
                }
            }
        }
        cells
    }

    /// Cells of `E_r(T ∧ Σ^a B)`, the page of `T ∧ B` moved up by `a` in `t`,
    /// with `x = (t - s) - conn(Σ^a B)`.
    fn cond4_cells(&self, base: &BaseTables, a: i32, r: i32) -> (i32, Vec<Cell>) {
        let w = base.conn + a;
        let k = (r as usize - 1).min(base.pages.len() - 1);
        let cells = base.pages[k]
            .entries()
            .iter()
            .map(|(b, &dim)| {
                let b = *b + Bidegree::new(0, a);
                Cell {
                    s: b.s,
                    t: b.t,
                    dim,
                    x: b.stem() - w,
                }
            })
            .collect();
        (w, cells)
    }

    fn family_report(&self, condition: &str, spec: LineSpec, three: bool) -> VerificationReport {
        let (family, bases) = self.family();
        let mut members = Vec::with_capacity(family.len());
        let mut all = Vec::new();
        let mut beta = Intercept::NegInf;
        for (index, &(b, a)) in family.members().iter().enumerate() {
            let base = &bases[b];
            let (w, cells) = if three {
                let w = base.top + a;
                let lowest = floor(spec.m * Rational64::from_integer(w as i64) + spec.b);
                (w, self.cond3_cells(base, a, spec.r, lowest.min(-(spec.r - 1))))
            } else {
                self.cond4_cells(base, a, spec.r)
            };
            let member_beta = if three {
                // below -(r-1) nothing new appears
                let relevant: Vec<Cell> = cells.iter().copied().filter(|c| c.s >= -(spec.r - 1)).collect();
                sup(&relevant, spec.m)
            } else {
                sup(&cells, spec.m)
            };
            beta = beta.max(member_beta);
            let witnesses = inside(&cells, spec.m, spec.b);
            all.extend(witnesses.iter().cloned());
            members.push(MemberReport {
                index,
                w,
                holds: witnesses.is_empty(),
                witnesses,
            });
        }
        all.sort();
        all.dedup();
        let mut report = VerificationReport::new(condition, spec, all, beta);
        report.members = members;
        report
    }

    pub fn cond3(&self, spec: LineSpec) -> VerificationReport {
        self.family_report("3", spec, true)
    }

    pub fn cond4(&self, spec: LineSpec) -> VerificationReport {
        self.family_report("4", spec, false)
    }

    /// `β` for conditions (3)/(4) over the whole family.
    pub fn family_intercept(&self, m: Rational64, r: i32, three: bool) -> Intercept {
        let spec = LineSpec {
            m,
            b: Rational64::from_integer(0),
            r,
        };
        self.family_report(if three { "3" } else { "4" }, spec, three).beta
    }
}

/// Condition (1): `D_r^{s,t} = 0` whenever `s ≥ m(t-s) + b`.
pub fn check_cond1(tower: &Tower, spec: LineSpec) -> Result<VerificationReport> {
    Ok(Tables::new(tower)?.cond1(spec))
}

/// Condition (2): `E_r^{s,t} = 0` whenever `s ≥ m(t-s) + b`.
pub fn check_cond2(tower: &Tower, spec: LineSpec) -> Result<VerificationReport> {
    Ok(Tables::new(tower)?.cond2(spec))
}

/// Condition (3): for each `W` with `w = -conn(DW)`, every map
/// `W → F_{s+r-1}` dies in `F_s` once `s ≥ m·w + b`.
pub fn check_cond3(tower: &Tower, spec: LineSpec, family: &WFamily) -> Result<VerificationReport> {
    Ok(Tables::with_family(tower, family)?.cond3(spec))
}

/// Condition (4): for each `W` with `w = conn(W)`, `E_r^{s,t}(T ∧ W) = 0`
/// whenever `s ≥ m(t-s-w) + b`.
pub fn check_cond4(tower: &Tower, spec: LineSpec, family: &WFamily) -> Result<VerificationReport> {
    Ok(Tables::with_family(tower, family)?.cond4(spec))
}

pub fn min_intercept(tower: &Tower, m: Rational64, r: i32, flavor: Flavor) -> Result<Intercept> {
    Ok(Tables::new(tower)?.min_intercept(m, r, flavor))
}
