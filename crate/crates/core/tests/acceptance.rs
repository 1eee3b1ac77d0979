//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

// tolerances are named constants, several of them zero
#![allow(clippy::absurd_extreme_comparisons)]

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use vanishing::complexes::GradedComplex;
use vanishing::couples::{
    couple_from_tower, e_infinity, kunneth_page, oracle_page, page, pages, Bidegree, CoupleMap, ExactCouple,
};
use vanishing::flinalg::FpMatrix;
use vanishing::lines::{
    verify_generic_cofiber, verify_ghost_corollary, verify_lemma_with, verify_retract_lines, LineSpec, Tables,
    VerificationReport, WFamily,
};
use vanishing::towers::{
    random_complex, random_split, random_tower, random_tower_map, FilteredComplex, Generator, RandomParams, Tower,
};

// corpus
const CORPUS_PER_PRIME: u64 = 100;
const PRIMES: [u64; 2] = [2, 3];
const MAX_GENERATORS: usize = 40;
const MAX_LEVELS: usize = 6;

// tolerances
const MAX_ORACLE_MISMATCHES: usize = 0;
const ORACLE_TIME_BUDGET: Duration = Duration::from_secs(180);
const MAX_EXACTNESS_FAILURES: usize = 0;
const MAX_CONVERGENCE_FAILURES: usize = 0;
const MAX_LEMMA_AC_COUNTEREXAMPLES: usize = 0;
const MAX_LEMMA_BD_BOTH_FAIL: usize = 0;
const LEMMA_R_MAX: i32 = 5;
const MIN_MAPS: u64 = 100;
const MAX_COFIBER_COUNTEREXAMPLES: usize = 0;
const MIN_SPLITS: u64 = 100;
const MAX_RETRACT_COUNTEREXAMPLES: usize = 0;
const MAX_REDUCTION_MISMATCHES: usize = 0;
const KUNNETH_PAIRS: u64 = 60;

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn lemma_slopes() -> Vec<Rational64> {
    vec![
        q(-2),
        q(-1),
        Rational64::new(-1, 2),
        q(0),
        Rational64::new(1, 2),
        q(1),
        q(2),
    ]
}

fn generic_slopes() -> Vec<Rational64> {
    vec![q(0), Rational64::new(1, 2), q(1)]
}

fn params(p: u64) -> RandomParams {
    RandomParams {
        p,
        max_levels: MAX_LEVELS,
        max_generators: MAX_GENERATORS,
        ..RandomParams::default()
    }
}

struct Corpus {
    towers: Vec<(u64, Tower)>,
}

impl Corpus {
    fn build() -> Self {
        let mut towers = Vec::new();
        for (k, &p) in PRIMES.iter().enumerate() {
            for i in 0..CORPUS_PER_PRIME {
                let seed = k as u64 * CORPUS_PER_PRIME + i;
                towers.push((
                    seed,
                    random_tower(seed, &params(p)).expect("default params are feasible"),
                ));
            }
        }
        Self { towers }
    }
}

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn t1() -> Tower {
    let generators = vec![
        Generator {
            name: "a".into(),
            degree: 1,
            filtration: 0,
        },
        Generator {
            name: "b".into(),
            degree: 0,
            filtration: 1,
        },
    ];
    let d = FpMatrix::from_entries(2, 2, 2, &[0, 0, 1, 0]).unwrap();
    FilteredComplex::new(2, generators, d).unwrap().to_tower()
}

fn oracle_equivalence(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let (mut mismatches, mut compared, mut levels, mut nonzero_d) = (0, 0, 0, 0);
    for (_, t) in &c.towers {
        levels += t.length() + 1;
        let all = pages(t, t.top() + 2).unwrap();
        nonzero_d += usize::from(all.iter().any(|pg| pg.differential_rank() > 0));
        for pg in all {
            let oracle = oracle_page(t, pg.r).unwrap();
            let mut keys: Vec<Bidegree> = pg
                .module
                .entries()
                .keys()
                .chain(oracle.entries().keys())
                .copied()
                .collect();
            keys.sort();
            keys.dedup();
            compared += keys.len();
            mismatches += keys.iter().filter(|&&b| pg.module.dim(b) != oracle.dim(b)).count();
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches <= MAX_ORACLE_MISMATCHES && elapsed <= ORACLE_TIME_BUDGET,
        format!(
            "{} towers, {compared} bidegrees compared, {mismatches} mismatches, {:.1}s (budget {}s); mean levels {:.2}, {} towers with a nonzero differential",
            c.towers.len(),
            elapsed.as_secs_f64(),
            ORACLE_TIME_BUDGET.as_secs(),
            levels as f64 / c.towers.len() as f64,
            nonzero_d
        ),
    )
}

/// Zeroes the first nonzero `j`; exactness at its source must then break.
fn corrupt(c: &ExactCouple) -> Option<ExactCouple> {
    let b = c
        .d_module()
        .entries()
        .keys()
        .copied()
        .find(|&b| !c.map(CoupleMap::J, b).is_zero())?;
    let m = c.map(CoupleMap::J, b);
    c.with_map(CoupleMap::J, b, FpMatrix::zeros(m.p(), m.rows(), m.cols()))
        .ok()
}

fn couple_exactness(c: &Corpus) -> Outcome {
    let (mut failures, mut couples, mut controls, mut caught) = (0, 0, 0, 0);
    for (_, t) in &c.towers {
        let mut couple = couple_from_tower(t);
        for r in 1..=t.top() + 2 {
            couples += 1;
            let report = couple.verify_les();
            failures += report.failures.len();
            if let Some(broken) = corrupt(&couple) {
                controls += 1;
                caught += usize::from(!broken.verify_les().is_exact() && broken.derive().is_err());
            }
            if r < t.top() + 2 {
                couple = couple.derive().unwrap();
            }
        }
    }
    outcome(
        failures <= MAX_EXACTNESS_FAILURES && controls > 0 && caught == controls,
        format!("{couples} couples, {failures} exactness failures; negative controls caught {caught}/{controls}"),
    )
}

fn convergence(c: &Corpus) -> Outcome {
    let mut failures = 0;
    let mut stems = 0;
    for (_, t) in &c.towers {
        let (einf, report) = e_infinity(t).unwrap();
        let mut by_stem: BTreeMap<i32, usize> = BTreeMap::new();
        for (b, d) in einf.entries() {
            *by_stem.entry(b.stem()).or_default() += d;
        }
        let h = t.level(0).homology_dims();
        let mut all: Vec<i32> = by_stem.keys().chain(h.keys()).copied().collect();
        all.sort();
        all.dedup();
        stems += all.len();
        let bad = all
            .iter()
            .any(|n| by_stem.get(n).copied().unwrap_or(0) != h.get(n).copied().unwrap_or(0));
        failures += usize::from(bad || !report.converges);
    }
    outcome(
        failures <= MAX_CONVERGENCE_FAILURES,
        format!(
            "{} towers, {stems} stems compared, {failures} towers failing",
            c.towers.len()
        ),
    )
}

fn worked_example() -> Outcome {
    let t = t1();
    let e1 = page(&t, 1).unwrap();
    let e2 = page(&t, 2).unwrap();
    let expected: Vec<(Bidegree, usize)> = vec![(Bidegree::new(0, 1), 1), (Bidegree::new(1, 1), 1)];
    let got: Vec<(Bidegree, usize)> = e1.module.entries().iter().map(|(b, d)| (*b, *d)).collect();
    let oracle_agrees = oracle_page(&t, 1).unwrap() == e1.module && oracle_page(&t, 2).unwrap() == e2.module;
    let pass = got == expected && e1.differential_rank() == 1 && e2.module.is_empty() && oracle_agrees;
    outcome(
        pass,
        format!(
            "E_1 = {:?}, rank d_1 = {}, dim E_2 = {}, oracle agrees: {oracle_agrees}",
            got.iter().map(|(b, d)| format!("{b}:{d}")).collect::<Vec<_>>(),
            e1.differential_rank(),
            e2.module.total_dim()
        ),
    )
}

#[derive(Default)]
struct Tally {
    holds: usize,
    fails: usize,
}

fn lemma_verification(c: &Corpus, table: &mut String) -> Outcome {
    let mut tallies: BTreeMap<(String, Rational64), Tally> = BTreeMap::new();
    let (mut ac_counterexamples, mut both_fail, mut instances) = (0, 0, 0);
    let mut first_bad: Option<String> = None;
    for (seed, t) in &c.towers {
        let family = WFamily::default_for(t, *seed).unwrap();
        let tables = Tables::with_family(t, &family).unwrap();
        for m in lemma_slopes() {
            let reports = verify_lemma_with(&tables, m, LEMMA_R_MAX);
            let mut pairs: BTreeMap<(char, i32), Vec<bool>> = BTreeMap::new();
            for r in &reports {
                instances += 1;
                let tally = tallies.entry((r.condition.clone(), m)).or_default();
                if r.holds {
                    tally.holds += 1;
                } else {
                    tally.fails += 1;
                }
                let case = r.condition.chars().nth(6).unwrap();
                if matches!(case, 'a' | 'c') && !r.holds {
                    ac_counterexamples += 1;
                    first_bad.get_or_insert_with(|| format!("seed {seed}: {r:?}"));
                }
                if matches!(case, 'b' | 'd') {
                    pairs.entry((case, r.conclusion.r)).or_default().push(r.holds);
                }
            }
            for outcomes in pairs.values() {
                if outcomes.iter().all(|h| !h) {
                    both_fail += 1;
                }
            }
        }
    }
    table.push_str("  per-candidate outcomes (check, m: holds/fails)\n");
    for ((name, m), t) in &tallies {
        if name.ends_with("statement") || name.ends_with("proof") {
            table.push_str(&format!("    {name:<18} m={m:<5} {:>5}/{}\n", t.holds, t.fails));
        }
    }
    let ac: usize = tallies
        .iter()
        .filter(|((n, _), _)| n == "lemma-a" || n == "lemma-c")
        .map(|(_, t)| t.holds + t.fails)
        .sum();
    let mut detail = format!(
        "{instances} checks; (a)/(c): {ac_counterexamples} counterexamples in {ac}; (b)/(d) instances with both candidates failing: {both_fail}"
    );
    if let Some(bad) = first_bad {
        detail.push_str(&format!("; first: {bad}"));
    }
    outcome(
        ac_counterexamples <= MAX_LEMMA_AC_COUNTEREXAMPLES && both_fail <= MAX_LEMMA_BD_BOTH_FAIL,
        detail,
    )
}

fn genericity() -> Outcome {
    let (mut checks, mut counterexamples) = (0, 0);
    let mut first_bad = None;
    for seed in 0..MIN_MAPS {
        let p = PRIMES[seed as usize % PRIMES.len()];
        let f = random_tower_map(10_000 + seed, &params(p)).unwrap();
        for m in generic_slopes() {
            for r in verify_generic_cofiber(&f, m, None).unwrap() {
                checks += 1;
                if !r.holds {
                    counterexamples += 1;
                    first_bad.get_or_insert_with(|| format!("map seed {}: {r:?}", 10_000 + seed));
                }
            }
        }
    }
    let mut detail = format!("{MIN_MAPS} maps, {checks} (r, r') instances, {counterexamples} counterexamples");
    if let Some(bad) = first_bad {
        detail.push_str(&format!("; first: {bad}"));
    }
    outcome(counterexamples <= MAX_COFIBER_COUNTEREXAMPLES, detail)
}

fn retract_closure() -> Outcome {
    let (mut checks, mut counterexamples) = (0, 0);
    let mut slopes = generic_slopes();
    slopes.extend([q(-1), q(2)]);
    for seed in 0..MIN_SPLITS {
        let p = PRIMES[seed as usize % PRIMES.len()];
        let (x, _, i, j) = random_split(20_000 + seed, &params(p)).unwrap();
        for &m in &slopes {
            let reports = verify_retract_lines(&i, &j, m, x.top() + 2).unwrap();
            checks += reports.len();
            counterexamples += reports.iter().filter(|r| !r.holds).count();
        }
    }
    outcome(
        counterexamples <= MAX_RETRACT_COUNTEREXAMPLES,
        format!("{MIN_SPLITS} split towers, {checks} (m, r) instances, {counterexamples} counterexamples"),
    )
}

fn identical(a: &VerificationReport, b: &VerificationReport) -> bool {
    a.same_outcome(b) && a.premises == b.premises && a.notes == b.notes
}

fn reduction_identities(c: &Corpus) -> Outcome {
    let (mut cond4_checks, mut ghost_checks, mut kunneth_checks, mut mismatches) = (0, 0, 0, 0);
    for (seed, t) in &c.towers {
        let s0 = WFamily::new(vec![GradedComplex::sphere(t.p(), 0)]).unwrap();
        let tables = Tables::with_family(t, &s0).unwrap();
        for r in 1..=t.top() + 2 {
            for m in lemma_slopes() {
                for b in -3..=t.top() as i64 + 3 {
                    let spec = LineSpec::new(m, q(b), r).unwrap();
                    cond4_checks += 1;
                    mismatches += usize::from(!identical(&tables.cond4(spec), &tables.cond2(spec)));
                }
            }
            for b in -3..=t.top() as i64 + 3 {
                ghost_checks += 1;
                let ghost = verify_ghost_corollary(t, r, q(b)).unwrap();
                mismatches += usize::from(!identical(&ghost, &tables.cond1(LineSpec::new(q(0), q(b), r).unwrap())));
            }
        }
        if *seed % (c.towers.len() as u64 / KUNNETH_PAIRS).max(1) == 0 {
            let w = random_complex(30_000 + seed, t.p() as u64, 3, (-1, 2)).unwrap();
            let smashed = t.smash(&w).unwrap();
            let (ours, theirs) = (pages(t, t.top() + 2).unwrap(), pages(&smashed, t.top() + 2).unwrap());
            for (a, b) in ours.iter().zip(&theirs) {
                kunneth_checks += 1;
                mismatches += usize::from(kunneth_page(&a.module, &w) != b.module);
            }
        }
    }
    outcome(
        mismatches <= MAX_REDUCTION_MISMATCHES,
        format!("cond4(S^0) vs cond2: {cond4_checks}; ghost vs cond1: {ghost_checks}; Kunneth pages: {kunneth_checks}; {mismatches} mismatches"),
    )
}

fn cli_determinism() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let t1 = root.join("data/t1.json");
    let t1 = t1.to_str().unwrap();
    let cases: Vec<(Vec<&str>, &str, i32)> = vec![
        (vec!["page", t1, "--r", "1"], "t1_page_1.txt", 0),
        (vec!["page", t1, "--r", "2"], "t1_page_2.txt", 0),
        (vec!["chart", t1, "--r", "1", "--format", "csv"], "t1_chart_1.csv", 0),
        (vec!["chart", t1, "--r", "2", "--format", "csv"], "t1_chart_2.csv", 0),
        (
            vec!["check", t1, "--cond", "2", "--m", "0", "--r", "2", "--b", "0"],
            "t1_check_holds.txt",
            0,
        ),
        (
            vec!["check", t1, "--cond", "2", "--m", "0", "--r", "1", "--b", "1"],
            "t1_check_fails.txt",
            1,
        ),
    ];
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_vanishing"))
            .args(args)
            .output()
            .unwrap()
    };
    let mut bad = Vec::new();
    for (args, name, code) in &cases {
        let expected = std::fs::read(root.join("golden").join(name)).unwrap();
        for _ in 0..2 {
            let o = run(args);
            if o.stdout != expected || o.status.code() != Some(*code) {
                bad.push(name.to_string());
            }
        }
    }
    let fuzz = ["fuzz", "--seed", "42", "--count", "8"];
    let (a, b) = (run(&fuzz), run(&fuzz));
    let fuzz_ok = a.stdout == b.stdout && a.status.code() == Some(0) && !a.stdout.is_empty();
    outcome(
        bad.is_empty() && fuzz_ok,
        format!(
            "{} golden runs, mismatches: {:?}; fuzz reproducible: {fuzz_ok}",
            cases.len() * 2,
            bad
        ),
    )
}

fn main() {
    let total = Instant::now();
    let corpus = Corpus::build();
    let mut table = String::new();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("couple exactness", Box::new(|| couple_exactness(&corpus))),
        ("convergence", Box::new(|| convergence(&corpus))),
        ("worked example T1", Box::new(worked_example)),
        (
            "lemma verification",
            Box::new(|| lemma_verification(&corpus, &mut table)),
        ),
        ("genericity under cofibers", Box::new(genericity)),
        ("retract closure", Box::new(retract_closure)),
        ("reduction identities", Box::new(|| reduction_identities(&corpus))),
        ("CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    let mut lines = Vec::new();
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        lines.push(format!(
            "{} criterion {}: {name} [{:.1}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        ));
    }
    for l in &lines {
        println!("{l}");
    }
    print!("{table}");
    println!(
        "{} of 9 criteria passed in {:.1}s",
        9 - failed,
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
