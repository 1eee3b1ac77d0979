//! The `vanishing` command line: tower and map documents, pages, charts and
//! the condition checks. Exit status 0 means success or "holds", 1 means a
//! condition failed, 2 means bad input.

mod chart;
mod document;
mod fuzz;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::couples::{page, Bidegree};
use crate::error::{Error, Result};
use crate::lines::{
    parse_rational, verify_generic_cofiber, verify_generic_retract, verify_ghost_corollary, verify_lemma, Flavor,
    LineSpec, Tables, VerificationReport, WFamily,
};

pub use chart::{emit_chart, ChartFormat};
pub use document::{
    emit, parse_filtered, parse_map, parse_tower, parse_tower_str, GeneratorEntry, LinearEntry, MapDocument,
    TowerDocument,
};
pub use fuzz::{fuzz, FuzzRecord};

fn rational(s: &str) -> std::result::Result<Rational64, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "vanishing",
    version,
    about = "Spectral-sequence pages and vanishing-line checks for filtered complexes"
)]
struct Cli {
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print E_r with its nonzero differentials.
    Page {
        tower: PathBuf,
        #[arg(long)]
        r: i32,
    },
    /// Check one condition at (m, b, r).
    Check {
        tower: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        cond: u8,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Rational64,
        #[arg(long)]
        r: i32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        b: Rational64,
        /// Tower documents whose F_0 are the complexes W (conditions 3, 4).
        /// Without any, the default family is used.
        #[arg(long = "W", alias = "w", num_args = 1..)]
        w: Vec<PathBuf>,
        /// Seed for the random members of the default family.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest failing intercepts for D_r and E_r.
    MinIntercept {
        tower: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Rational64,
        #[arg(long)]
        r: i32,
    },
    /// Every case of the implications between the four conditions.
    Lemma {
        tower: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Rational64,
        /// Defaults to S + 2.
        #[arg(long)]
        rmax: Option<i32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Two-out-of-three and retract checks.
    Generic {
        #[command(subcommand)]
        kind: Generic,
    },
    /// Condition (1) at slope 0, map by map.
    Ghost {
        tower: PathBuf,
        #[arg(long)]
        r: i32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        b: Rational64,
    },
    /// Random towers through every check.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 40)]
        max_generators: usize,
    },
    /// Render E_r.
    Chart {
        tower: PathBuf,
        #[arg(long)]
        r: i32,
        #[arg(long, value_enum, default_value = "text")]
        format: ChartFormat,
        /// Draw s = m(t - s) + b (svg only); needs --b too.
        #[arg(long, value_parser = rational, allow_hyphen_values = true, requires = "b")]
        m: Option<Rational64>,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, requires = "m")]
        b: Option<Rational64>,
    },
}

#[derive(Debug, Subcommand)]
enum Generic {
    /// Cofiber of the map in a map document.
    Cofiber {
        map: PathBuf,
        /// Slopes to test; defaults to 0, 1/2 and 1.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Vec<Rational64>,
        #[arg(long)]
        rmax: Option<i32>,
    },
    /// Y a retract of X via i: Y → X and j: X → Y.
    Retract {
        i: PathBuf,
        j: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        m: Rational64,
        #[arg(long)]
        r: i32,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        b: Rational64,
    },
}

struct Outcome {
    text: String,
    json: Value,
    failed: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn write_report(out: &mut String, r: &VerificationReport) {
    let verdict = if r.holds { "holds" } else { "fails" };
    writeln!(out, "{} {}: {verdict}", r.condition, r.conclusion).unwrap();
    for p in &r.premises {
        writeln!(out, "  premise {p}").unwrap();
    }
    writeln!(out, "  beta={}", r.beta).unwrap();
    for w in &r.witnesses {
        writeln!(out, "  s={} t={} dim={}", w.s, w.t, w.dim).unwrap();
    }
    for m in r.members.iter().filter(|m| !m.holds) {
        writeln!(out, "  member {} (w={}) fails", m.index, m.w).unwrap();
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
}

fn reports(list: Vec<VerificationReport>) -> Outcome {
    let mut text = String::new();
    for r in &list {
        write_report(&mut text, r);
    }
    Outcome {
        failed: list.iter().any(|r| !r.holds),
        json: to_value(&list),
        text,
    }
}

fn family(tower: &crate::towers::Tower, files: &[PathBuf], seed: u64) -> Result<WFamily> {
    if files.is_empty() {
        return WFamily::default_for(tower, seed);
    }
    let ws = files
        .iter()
        .map(|f| Ok(parse_tower(f)?.level(0).clone()))
        .collect::<Result<Vec<_>>>()?;
    WFamily::new(ws)
}

fn page_text(tower: &Path, r: i32) -> Result<Outcome> {
    let t = parse_tower(tower)?;
    let pg = page(&t, r)?;
    let mut text = format!("E_{r}\n");
    text.push_str(&emit_chart(&pg.module, ChartFormat::Text, None));
    let mut diffs = Vec::new();
    for (b, d) in &pg.differentials {
        let target: Bidegree = pg.differential_target(*b);
        writeln!(text, "d_{r} {b} -> {target}: rank {}", d.rank()).unwrap();
        diffs.push(json!({"s": b.s, "t": b.t, "rank": d.rank()}));
    }
    let entries: Vec<Value> = pg
        .module
        .entries()
        .iter()
        .map(|(b, d)| json!({"s": b.s, "t": b.t, "dim": d}))
        .collect();
    Ok(Outcome {
        text,
        json: json!({"r": r, "entries": entries, "differentials": diffs}),
        failed: false,
    })
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Page { tower, r } => page_text(&tower, r),
        Command::Check {
            tower,
            cond,
            m,
            r,
            b,
            w,
            seed,
        } => {
            let t = parse_tower(&tower)?;
            let spec = LineSpec::new(m, b, r)?;
            let tables = if cond >= 3 {
                Tables::with_family(&t, &family(&t, &w, seed)?)?
            } else {
                Tables::new(&t)?
            };
            let report = match cond {
                1 => tables.cond1(spec),
                2 => tables.cond2(spec),
                3 => tables.cond3(spec),
                _ => tables.cond4(spec),
            };
            let mut text = String::new();
            write_report(&mut text, &report);
            Ok(Outcome {
                failed: !report.holds,
                json: to_value(&report),
                text,
            })
        }
        Command::MinIntercept { tower, m, r } => {
            let t = parse_tower(&tower)?;
            if r < 1 {
                return Err(Error::BadPage(r));
            }
            let tables = Tables::new(&t)?;
            let (d, e) = (
                tables.min_intercept(m, r, Flavor::D),
                tables.min_intercept(m, r, Flavor::E),
            );
            Ok(Outcome {
                text: format!("D_{r}: beta={d}\nE_{r}: beta={e}\n"),
                json: json!({"m": m.to_string(), "r": r, "D": to_value(&d), "E": to_value(&e)}),
                failed: false,
            })
        }
        Command::Lemma { tower, m, rmax, seed } => {
            let t = parse_tower(&tower)?;
            let rmax = rmax.unwrap_or(t.top() + 2);
            if rmax < 1 {
                return Err(Error::BadPage(rmax));
            }
            let fam = WFamily::default_for(&t, seed)?;
            Ok(reports(verify_lemma(&t, m, &fam, rmax)?))
        }
        Command::Generic { kind } => match kind {
            Generic::Cofiber { map, m, rmax } => {
                let f = parse_map(&map)?;
                let slopes = if m.is_empty() {
                    vec![
                        Rational64::from_integer(0),
                        Rational64::new(1, 2),
                        Rational64::from_integer(1),
                    ]
                } else {
                    m
                };
                let mut all = Vec::new();
                for m in slopes {
                    all.extend(verify_generic_cofiber(&f, m, rmax)?);
                }
                Ok(reports(all))
            }
            Generic::Retract { i, j, m, r, b } => {
                let (i, j) = (parse_map(&i)?, parse_map(&j)?);
                Ok(reports(vec![verify_generic_retract(&i, &j, LineSpec::new(m, b, r)?)?]))
            }
        },
        Command::Ghost { tower, r, b } => {
            let t = parse_tower(&tower)?;
            Ok(reports(vec![verify_ghost_corollary(&t, r, b)?]))
        }
        Command::Fuzz {
            seed,
            count,
            max_generators,
        } => {
            let records = fuzz(seed, count, max_generators)?;
            let mut text = String::new();
            for r in &records {
                writeln!(text, "{r}").unwrap();
            }
            let bad = records.iter().filter(|r| !r.ok).count();
            writeln!(text, "{} towers, {bad} with discrepancies", records.len()).unwrap();
            Ok(Outcome {
                failed: bad > 0,
                json: to_value(&records),
                text,
            })
        }
        Command::Chart { tower, r, format, m, b } => {
            let t = parse_tower(&tower)?;
            let pg = page(&t, r)?;
            let line = match (m, b) {
                (Some(m), Some(b)) => Some(LineSpec::new(m, b, r)?),
                _ => None,
            };
            let text = emit_chart(&pg.module, format, line.as_ref());
            Ok(Outcome {
                json: json!({"r": r, "format": format!("{format:?}").to_lowercase()}),
                text,
                failed: false,
            })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if let Some(path) = cli.report {
                let body = serde_json::to_string_pretty(&outcome.json).expect("json") + "\n";
                if let Err(e) = std::fs::write(&path, body) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return 2;
                }
            }
            i32::from(outcome.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
