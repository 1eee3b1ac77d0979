use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::Result;
use crate::lines::{lattice_step, Flavor, Intercept, LineSpec, Tables, VerificationReport, WFamily};
use crate::towers::Tower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LemmaCase {
    /// (1) ⇒ (2)
    A,
    /// (2) ⇒ (1)
    B,
    /// (3) ⇒ (4)
    C,
    /// (4) ⇒ (3)
    D,
}

impl LemmaCase {
    pub const ALL: [LemmaCase; 4] = [LemmaCase::A, LemmaCase::B, LemmaCase::C, LemmaCase::D];

    pub fn premise(self) -> u8 {
        match self {
            LemmaCase::A => 1,
            LemmaCase::B => 2,
            LemmaCase::C => 3,
            LemmaCase::D => 4,
        }
    }

    pub fn conclusion(self) -> u8 {
        match self {
            LemmaCase::A => 2,
            LemmaCase::B => 1,
            LemmaCase::C => 4,
            LemmaCase::D => 3,
        }
    }

    fn descends(self) -> bool {
        matches!(self, LemmaCase::B | LemmaCase::D)
    }
}

impl fmt::Display for LemmaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaCase::A => "a",
            LemmaCase::B => "b",
            LemmaCase::C => "c",
            LemmaCase::D => "d",
        })
    }
}

/// Which intercept to use for (b) and (d) when `r ≥ 1 - m`: `b - m`
/// ("statement") or the reindexed `b + m` ("proof"). They agree at `m = 0`
/// and for (a), (c). Only `b + m` survives the corpus for `m > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ShiftVariant {
    Statement,
    Proof,
}

impl fmt::Display for ShiftVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftVariant::Statement => "statement",
            ShiftVariant::Proof => "proof",
        })
    }
}

/// Amount added to the premise intercept.
pub fn lemma_offset(case: LemmaCase, variant: ShiftVariant, m: Rational64, r: i32) -> Rational64 {
    let r_q = Rational64::from_integer(r as i64);
    let one = Rational64::from_integer(1);
    if case.descends() {
        if r_q >= one - m {
            match variant {
                ShiftVariant::Statement => -m,
                ShiftVariant::Proof => m,
            }
        } else {
            one - r_q
        }
    } else if r_q >= -m {
        r_q - one
    } else {
        -m
    }
}

/// The conclusion `(condition, LineSpec)` of the Lemma as stated.
pub fn lemma_shift(case: LemmaCase, m: Rational64, r: i32, b: Rational64) -> (u8, LineSpec) {
    lemma_shift_variant(case, ShiftVariant::Statement, m, r, b)
}

pub fn lemma_shift_variant(
    case: LemmaCase,
    variant: ShiftVariant,
    m: Rational64,
    r: i32,
    b: Rational64,
) -> (u8, LineSpec) {
    let offset = lemma_offset(case, variant, m, r);
    (case.conclusion(), LineSpec { m, b: b + offset, r })
}

/// A premise intercept that exercises the implication as hard as possible:
/// just above `β` of the premise (all intercepts live on a lattice of step
/// `1/den(m)`), or, when the premise holds for every `b`, low enough that the
/// conclusion is tested at its own `β`.
pub(crate) fn tight_intercept(
    premise: Intercept,
    conclusion: Intercept,
    offset: Rational64,
    m: Rational64,
) -> Rational64 {
    match (premise, conclusion) {
        (Intercept::Finite(beta), _) => beta + lattice_step(m),
        (Intercept::NegInf, Intercept::Finite(beta)) => beta - offset,
        (Intercept::NegInf, Intercept::NegInf) => Rational64::from_integer(0),
    }
}

fn run(tables: &Tables, condition: u8, spec: LineSpec) -> VerificationReport {
    match condition {
        1 => tables.cond1(spec),
        2 => tables.cond2(spec),
        3 => tables.cond3(spec),
        _ => tables.cond4(spec),
    }
}

fn beta(tables: &Tables, condition: u8, m: Rational64, r: i32) -> Intercept {
    match condition {
        1 => tables.min_intercept(m, r, Flavor::D),
        2 => tables.min_intercept(m, r, Flavor::E),
        3 => tables.family_intercept(m, r, true),
        _ => tables.family_intercept(m, r, false),
    }
}

/// One instance of the Lemma at the tightest premise intercept. `holds` is
/// false if the conclusion fails (or, which would be an engine bug, the
/// premise does).
pub fn verify_lemma_case(
    tables: &Tables,
    case: LemmaCase,
    variant: ShiftVariant,
    m: Rational64,
    r: i32,
) -> VerificationReport {
    let offset = lemma_offset(case, variant, m, r);
    let premise_beta = beta(tables, case.premise(), m, r);
    let conclusion_beta = beta(tables, case.conclusion(), m, r);
    let b = tight_intercept(premise_beta, conclusion_beta, offset, m);
    let premise_spec = LineSpec { m, b, r };
    let premise = run(tables, case.premise(), premise_spec);
    let (_, conclusion_spec) = lemma_shift_variant(case, variant, m, r, b);
    let mut report = run(tables, case.conclusion(), conclusion_spec);
    report.condition = if case.descends() {
        format!("lemma-{case}-{variant}")
    } else {
        format!("lemma-{case}")
    };
    report.premises = vec![premise_spec];
    if !premise.holds {
        report.holds = false;
        report
            .notes
            .push(format!("premise ({}) fails at its own tight intercept", case.premise()));
    }
    report
}

/// Every case and variant for `r = 1..=r_max` at slope `m`.
pub fn verify_lemma_with(tables: &Tables, m: Rational64, r_max: i32) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        for case in LemmaCase::ALL {
            verify_lemma_case_into(tables, case, m, r, &mut out);
        }
    }
    out
}

fn verify_lemma_case_into(tables: &Tables, case: LemmaCase, m: Rational64, r: i32, out: &mut Vec<VerificationReport>) {
    out.push(verify_lemma_case(tables, case, ShiftVariant::Statement, m, r));
    if case.descends() {
        out.push(verify_lemma_case(tables, case, ShiftVariant::Proof, m, r));
    }
}

pub fn verify_lemma(tower: &Tower, m: Rational64, family: &WFamily, r_max: i32) -> Result<Vec<VerificationReport>> {
    let tables = Tables::with_family(tower, family)?;
    Ok(verify_lemma_with(&tables, m, r_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            lemma_shift(LemmaCase::A, q(0), 3, q(5)),
            (2, LineSpec { m: q(0), b: q(7), r: 3 })
        );
        assert_eq!(
            lemma_shift(LemmaCase::A, q(-5), 3, q(0)),
            (
                2,
                LineSpec {
                    m: q(-5),
                    b: q(5),
                    r: 3
                }
            )
        );
        assert_eq!(
            lemma_shift(LemmaCase::B, q(0), 2, q(4)),
            (1, LineSpec { m: q(0), b: q(4), r: 2 })
        );
        // r < 1 - m
        assert_eq!(lemma_shift(LemmaCase::B, q(-3), 2, q(4)).1.b, q(3));
        assert_eq!(
            lemma_shift(LemmaCase::C, q(1), 2, q(0)),
            (4, LineSpec { m: q(1), b: q(1), r: 2 })
        );
        assert_eq!(lemma_shift(LemmaCase::D, q(2), 1, q(0)).0, 3);
        let half = Rational64::new(1, 2);
        assert_eq!(
            lemma_shift_variant(LemmaCase::B, ShiftVariant::Proof, half, 1, q(0))
                .1
                .b,
            half
        );
        assert_eq!(
            lemma_shift_variant(LemmaCase::B, ShiftVariant::Statement, half, 1, q(0))
                .1
                .b,
            -half
        );
    }

    #[test]
    fn m_zero_adds_r_minus_one() {
        for r in 1..6 {
            assert_eq!(lemma_shift(LemmaCase::A, q(0), r, q(2)).1.b, q(2 + r as i64 - 1));
            assert_eq!(
                lemma_offset(LemmaCase::B, ShiftVariant::Statement, q(0), r),
                lemma_offset(LemmaCase::B, ShiftVariant::Proof, q(0), r)
            );
        }
    }
}
