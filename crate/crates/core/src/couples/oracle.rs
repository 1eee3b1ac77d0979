use std::collections::BTreeMap;

use crate::couples::{Bidegree, BigradedModule};
use crate::error::{Error, Result};
use crate::flinalg::{subquotient, Subspace};
use crate::towers::Tower;

/// `E_r` straight from the filtration of `F_0`, without the exact couple:
/// `E_r^{s,t} = Z_r^s / (Z_{r-1}^{s+1} + B_{r-1}^s)` in degree `n = t - s`, where
/// `Z_r^s = F^s ∩ d^{-1}(F^{s+r})` and `B_{r-1}^s = F^s ∩ d(F^{s-r+1})`.
pub fn oracle_page(tower: &Tower, r: i32) -> Result<BigradedModule> {
    if r < 1 {
        return Err(Error::BadPage(r));
    }
    let p = tower.p();
    let f0 = tower.level(0);
    let top = tower.top();
    // F^s_n as a subspace of (F_0)_n
    let mut filtration: BTreeMap<(i32, i32), Subspace> = BTreeMap::new();
    let mut level = |s: i32, n: i32| -> Subspace {
        let ambient = f0.dim(n);
        if s <= 0 {
            return Subspace::full(p, ambient);
        }
        if s > top {
            return Subspace::zero(p, ambient);
        }
        filtration
            .entry((s, n))
            .or_insert_with(|| tower.composite(s, 0).component(n).image())
            .clone()
    };

    let mut dims = Vec::new();
    for &n in f0.dims().keys() {
        let d = f0.d(n);
        let d_above = f0.d(n + 1);
        for s in 0..=top {
            let fs = level(s, n);
            let z = |level: &mut dyn FnMut(i32, i32) -> Subspace, s: i32, r: i32| -> Result<Subspace> {
                let pre = Subspace::preimage(&d, &level(s + r, n - 1))?;
                level(s, n).intersection(&pre)
            };
            let cycles = z(&mut level, s, r)?;
            let lower = z(&mut level, s + 1, r - 1)?;
            let boundaries = level(s - r + 1, n + 1).image_under(&d_above)?.intersection(&fs)?;
            let denominator = lower.sum(&boundaries)?;
            let dim = subquotient(&cycles, &denominator)?.dim();
            dims.push((Bidegree::from_stem(s, n), dim));
        }
    }
    Ok(BigradedModule::new(p, dims))
}
