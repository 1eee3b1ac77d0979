use std::fmt::Write;
use std::str::FromStr;

use clap::ValueEnum;

use crate::couples::{Bidegree, BigradedModule};
use crate::error::{Error, Result};
use crate::lines::LineSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartFormat {
    Text,
    Svg,
    Csv,
}

impl FromStr for ChartFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ChartFormat::Text),
            "svg" => Ok(ChartFormat::Svg),
            "csv" => Ok(ChartFormat::Csv),
            other => Err(Error::Params(format!("unknown chart format \"{other}\""))),
        }
    }
}

/// Renders a page with `t - s` across and `s` up. `line` is drawn in svg only.
pub fn emit_chart(page: &BigradedModule, format: ChartFormat, line: Option<&LineSpec>) -> String {
    match format {
        ChartFormat::Csv => csv(page),
        ChartFormat::Text => text(page),
        ChartFormat::Svg => svg(page, line),
    }
}

fn csv(page: &BigradedModule) -> String {
    let mut out = String::from("s,t,dim\n");
    for (b, d) in page.entries() {
        writeln!(out, "{},{},{}", b.s, b.t, d).unwrap();
    }
    out
}

/// `(stem range, s range)` of the nonzero entries, `(0, 0)` each when empty.
fn window(page: &BigradedModule) -> ((i32, i32), (i32, i32)) {
    let mut it = page.entries().keys();
    let Some(first) = it.next() else {
        return ((0, 0), (0, 0));
    };
    let (mut x, mut y) = ((first.stem(), first.stem()), (first.s, first.s));
    for b in it {
        x = (x.0.min(b.stem()), x.1.max(b.stem()));
        y = (y.0.min(b.s), y.1.max(b.s));
    }
    (x, y)
}

fn text(page: &BigradedModule) -> String {
    let ((x0, x1), (y0, y1)) = window(page);
    let cell = |s: i32, n: i32| {
        let d = page.dim(Bidegree::from_stem(s, n));
        if d == 0 {
            ".".to_string()
        } else {
            d.to_string()
        }
    };
    let mut width = 1;
    for n in x0..=x1 {
        width = width.max(n.to_string().len());
        for s in y0..=y1 {
            width = width.max(cell(s, n).len());
        }
    }
    let label = (y0..=y1).map(|s| s.to_string().len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    for s in (y0..=y1).rev() {
        let row: Vec<String> = (x0..=x1).map(|n| format!("{:>width$}", cell(s, n))).collect();
        writeln!(out, "{s:>label$} | {}", row.join(" ")).unwrap();
    }
    let span = (x1 - x0 + 1) as usize * (width + 1) - 1;
    writeln!(out, "{} +-{}", " ".repeat(label), "-".repeat(span)).unwrap();
    let stems: Vec<String> = (x0..=x1).map(|n| format!("{n:>width$}")).collect();
    writeln!(out, "{}   {}", " ".repeat(label), stems.join(" ")).unwrap();
    out
}

const CELL: i32 = 40;

fn svg(page: &BigradedModule, line: Option<&LineSpec>) -> String {
    let ((x0, x1), (y0, y1)) = window(page);
    let cols = x1 - x0 + 1;
    let rows = y1 - y0 + 1;
    let (w, h) = ((cols + 2) * CELL, (rows + 2) * CELL);
    // centre of cell (n, s)
    let px = |n: f64| (n - x0 as f64 + 1.5) * CELL as f64;
    let py = |s: f64| h as f64 - (s - y0 as f64 + 1.5) * CELL as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="14">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for n in x0..=x1 {
        writeln!(
            out,
            r#"<text x="{:.1}" y="{}" text-anchor="middle" fill="gray">{n}</text>"#,
            px(n as f64),
            h - CELL / 4
        )
        .unwrap();
    }
    for s in y0..=y1 {
        writeln!(
            out,
            r#"<text x="{}" y="{:.1}" text-anchor="middle" fill="gray">{s}</text>"#,
            CELL / 2,
            py(s as f64) + 5.0
        )
        .unwrap();
    }
    for (b, d) in page.entries() {
        let (cx, cy) = (px(b.stem() as f64), py(b.s as f64));
        writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            cx - (CELL / 2 - 4) as f64,
            cy - (CELL / 2 - 4) as f64,
            CELL - 8,
            CELL - 8
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{cx:.1}" y="{:.1}" text-anchor="middle">{d}</text>"#,
            cy + 5.0
        )
        .unwrap();
    }
    if let Some(l) = line {
        let m = *l.m.numer() as f64 / *l.m.denom() as f64;
        let b = *l.b.numer() as f64 / *l.b.denom() as f64;
        let (a, z) = (x0 as f64 - 1.5, x1 as f64 + 1.5);
        writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="red"/>"#,
            px(a),
            py(m * a + b),
            px(z),
            py(m * z + b)
        )
        .unwrap();
        writeln!(out, r#"<text x="4" y="16" fill="red">{l}</text>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
