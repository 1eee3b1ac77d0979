use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lines::{lattice_step, Flavor, Intercept, LineSpec, Tables, VerificationReport, Witness};
use crate::towers::{cofiber_tower, is_retract, Tower, TowerMap};

/// Checks the two-out-of-three step for `X → Y → Z` with `Z` the levelwise
/// cofiber of `f`: for every pair `r, r' ≤ r_max`, with `b`, `b'` the tightest
/// intercepts at which condition (1) holds for `X` at `r` and for `Z` at `r'`,
/// condition (1) must hold for `Y` at `(r + r' - 1, max(b, b' - r + 1))`.
/// One report per pair. `r_max` defaults to `S + 2`.
pub fn verify_generic_cofiber(f: &TowerMap, m: Rational64, r_max: Option<i32>) -> Result<Vec<VerificationReport>> {
    let (z, _, _) = cofiber_tower(f)?;
    let (x, y) = (f.source(), f.target());
    let r_max = r_max.unwrap_or(y.top() + 2);
    if r_max < 1 {
        return Err(Error::BadPage(r_max));
    }
    let (tx, ty, tz) = (Tables::new(x)?, Tables::new(y)?, Tables::new(&z)?);
    let mut out = Vec::new();
    for r in 1..=r_max {
        let beta_x = tx.min_intercept(m, r, Flavor::D);
        for r2 in 1..=r_max {
            let beta_z = tz.min_intercept(m, r2, Flavor::D);
            let big_r = r + r2 - 1;
            let beta_y = ty.min_intercept(m, big_r, Flavor::D);
            let lift = Rational64::from_integer((r - 1) as i64);
            // an intercept below everything in play, for premises that hold for every b
            let low = [beta_x, beta_z, beta_y]
                .iter()
                .filter_map(|b| b.finite())
                .chain(std::iter::once(Rational64::from_integer(0)))
                .min()
                .expect("nonempty")
                - Rational64::from_integer((r + r2 + 2) as i64);
            let tight = |beta: Intercept| beta.finite().map_or(low, |v| v + lattice_step(m));
            let (b, b2) = (tight(beta_x), tight(beta_z));
            let conclusion = LineSpec {
                m,
                b: b.max(b2 - lift),
                r: big_r,
            };
            let mut report = ty.cond1(conclusion);
            report.condition = "generic-cofiber".into();
            report.premises = vec![LineSpec { m, b, r }, LineSpec { m, b: b2, r: r2 }];
            let expected = beta_x.max(beta_z.shifted(-lift));
            if (beta_y <= expected) != report.holds {
                report.holds = false;
                report.notes.push(format!(
                    "supremum comparison disagrees: beta(Y)={beta_y}, bound={expected}"
                ));
            }
            out.push(report);
        }
    }
    Ok(out)
}

/// If condition (1) holds for `X` at `spec`, it must hold for the retract `Y`.
/// `i: Y → X`, `j: X → Y` with `j ∘ i ≃ id`.
pub fn verify_generic_retract(i: &TowerMap, j: &TowerMap, spec: LineSpec) -> Result<VerificationReport> {
    if !is_retract(i, j)? {
        return Err(Error::NotRetract);
    }
    let x = Tables::new(i.target())?;
    let y = Tables::new(i.source())?;
    Ok(retract_report(&x, &y, spec))
}

pub(crate) fn retract_report(x: &Tables, y: &Tables, spec: LineSpec) -> VerificationReport {
    let premise = x.cond1(spec);
    let mut report = y.cond1(spec);
    report.condition = "generic-retract".into();
    report.premises = vec![spec];
    if !premise.holds {
        report.witnesses.clear();
        report.holds = true;
        report.notes.push("premise fails for X; nothing to inherit".into());
    }
    report
}

/// The ghost reading of condition (1) at slope 0: `g^{r-1}: F_{s+r-1} → F_s`
/// is zero on homology for every `s ≥ b`. Computed map by map with
/// [`crate::complexes::ComplexMap::is_ghost`].
pub fn verify_ghost_corollary(tower: &Tower, r: i32, b: Rational64) -> Result<VerificationReport> {
    let spec = LineSpec::new(Rational64::from_integer(0), b, r)?;
    let mut witnesses = Vec::new();
    let mut beta = Intercept::NegInf;
    let first = (b.ceil().to_integer() as i32).min(-(r - 1));
    for s in first..=tower.top() {
        let g = tower.composite(s + r - 1, s);
        if g.is_ghost() {
            continue;
        }
        if s >= -(r - 1) {
            beta = beta.max(Intercept::Finite(Rational64::from_integer(s as i64)));
        }
        if Rational64::from_integer(s as i64) >= b {
            for &n in g.source().dims().keys() {
                let dim = g.homology_rank(n);
                if dim > 0 {
                    witnesses.push(Witness { s, t: n + s, dim });
                }
            }
        }
    }
    Ok(VerificationReport::new("ghost", spec, witnesses, beta))
}

/// `Y` as a summand of `X`: the report for every `r ≤ r_max` at the tightest
/// intercept for `X`.
pub fn verify_retract_lines(i: &TowerMap, j: &TowerMap, m: Rational64, r_max: i32) -> Result<Vec<VerificationReport>> {
    if !is_retract(i, j)? {
        return Err(Error::NotRetract);
    }
    let x = Tables::new(i.target())?;
    let y = Tables::new(i.source())?;
    let mut out = Vec::new();
    for r in 1..=r_max {
        let beta_x = x.min_intercept(m, r, Flavor::D);
        let beta_y = y.min_intercept(m, r, Flavor::D);
        let b = match beta_x {
            Intercept::Finite(v) => v + lattice_step(m),
            Intercept::NegInf => beta_y.finite().unwrap_or(Rational64::from_integer(0)),
        };
        let mut report = retract_report(&x, &y, LineSpec { m, b, r });
        if beta_y > beta_x && report.holds {
            report.holds = false;
            report.notes.push(format!("beta(Y)={beta_y} exceeds beta(X)={beta_x}"));
        }
        out.push(report);
    }
    Ok(out)
}
