use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::couples::{couple_from_tower, e_infinity, oracle_page, pages, stable_page_index};
use crate::error::Result;
use crate::lines::{verify_lemma_with, Tables, WFamily};
use crate::towers::{random_tower, RandomParams, Tower};

/// Slopes exercised per tower.
const SLOPES: [(i64, i64); 4] = [(-1, 1), (0, 1), (1, 2), (1, 1)];

/// One random tower through every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzRecord {
    pub seed: u64,
    pub p: u32,
    pub levels: usize,
    pub generators: usize,
    /// Bidegrees where the derived page and the cycle/boundary page differ.
    pub oracle_mismatches: usize,
    pub exactness_failures: usize,
    pub converges: bool,
    /// Failing lemma instances by check name.
    pub lemma_failures: BTreeMap<String, usize>,
    /// `(b)` or `(d)` instances where both intercepts fail.
    pub lemma_both_fail: usize,
    pub ok: bool,
}

impl fmt::Display for FuzzRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} p={} S={} gens={} oracle={} les={} converges={} lemma=",
            self.seed,
            self.p,
            self.levels - 1,
            self.generators,
            self.oracle_mismatches,
            self.exactness_failures,
            if self.converges { "yes" } else { "no" },
        )?;
        if self.lemma_failures.is_empty() {
            f.write_str("-")?;
        } else {
            let parts: Vec<String> = self.lemma_failures.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            f.write_str(&parts.join(","))?;
        }
        write!(f, " {}", if self.ok { "ok" } else { "DISCREPANCY" })
    }
}

fn check(seed: u64, tower: &Tower) -> Result<FuzzRecord> {
    let top = stable_page_index(tower);
    let mut oracle_mismatches = 0;
    for pg in pages(tower, top)? {
        let oracle = oracle_page(tower, pg.r)?;
        let mut keys: Vec<_> = pg.module.entries().keys().chain(oracle.entries().keys()).collect();
        keys.sort();
        keys.dedup();
        oracle_mismatches += keys.iter().filter(|&&&b| pg.module.dim(b) != oracle.dim(b)).count();
    }

    let mut exactness_failures = 0;
    let mut couple = couple_from_tower(tower);
    for r in 1..=top {
        let report = couple.verify_les();
        exactness_failures += report.failures.len();
        if !report.failures.is_empty() || r == top {
            break;
        }
        couple = couple.derive()?;
    }

    let (_, convergence) = e_infinity(tower)?;

    let family = WFamily::default_for(tower, seed)?;
    let tables = Tables::with_family(tower, &family)?;
    let mut lemma_failures: BTreeMap<String, usize> = BTreeMap::new();
    let mut lemma_both_fail = 0;
    let mut hard_failures = 0;
    for (n, d) in SLOPES {
        let reports = verify_lemma_with(&tables, Rational64::new(n, d), top);
        // per (case, r): statement then proof for (b), (d)
        let mut by_case: BTreeMap<(String, i32), Vec<bool>> = BTreeMap::new();
        for r in &reports {
            if !r.holds {
                *lemma_failures.entry(r.condition.clone()).or_default() += 1;
            }
            let case: String = r.condition.split('-').take(2).collect::<Vec<_>>().join("-");
            by_case.entry((case, r.conclusion.r)).or_default().push(r.holds);
        }
        for outcomes in by_case.values() {
            if outcomes.iter().all(|h| !h) {
                if outcomes.len() > 1 {
                    lemma_both_fail += 1;
                }
                hard_failures += 1;
            }
        }
    }

    let ok = oracle_mismatches == 0 && exactness_failures == 0 && convergence.converges && hard_failures == 0;
    Ok(FuzzRecord {
        seed,
        p: tower.p(),
        levels: tower.length() + 1,
        generators: tower.level(0).total_dim(),
        oracle_mismatches,
        exactness_failures,
        converges: convergence.converges,
        lemma_failures,
        lemma_both_fail,
        ok,
    })
}

/// Towers for seeds `seed..seed + count`, alternating between F_2 and F_3.
pub fn fuzz(seed: u64, count: u64, max_generators: usize) -> Result<Vec<FuzzRecord>> {
    (seed..seed.saturating_add(count))
        .map(|s| {
            let params = RandomParams {
                p: if s % 2 == 0 { 2 } else { 3 },
                max_generators,
                ..RandomParams::default()
            };
            check(s, &random_tower(s, &params)?)
        })
        .collect()
}
