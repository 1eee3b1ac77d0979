use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flinalg::{validate_prime, FpMatrix};
use crate::towers::{FilteredComplex, FilteredMap, Generator, Tower, TowerMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
    pub filtration: usize,
}

/// `from ↦ Σ coeff · to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearEntry {
    pub from: String,
    pub to: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDocument {
    pub p: u64,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: Vec<LinearEntry>,
}

/// `source` and `target` are tower files, relative to the map file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub entries: Vec<LinearEntry>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn index_of(names: &HashMap<&str, usize>, name: &str, role: &str) -> Result<usize> {
    names
        .get(name)
        .copied()
        .ok_or_else(|| Error::Document(format!("{role} names unknown generator \"{name}\"")))
}

/// Matrix with column `j` the image of source generator `j`.
fn assemble(p: u32, source: &[GeneratorEntry], target: &[GeneratorEntry], entries: &[LinearEntry]) -> Result<FpMatrix> {
    let src: HashMap<&str, usize> = source.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
    let tgt: HashMap<&str, usize> = target.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
    let mut m = FpMatrix::zeros(p, target.len(), source.len());
    let mut done = vec![false; source.len()];
    for e in entries {
        let j = index_of(&src, &e.from, "entry")?;
        if done[j] {
            return Err(Error::Document(format!("\"{}\" has more than one entry", e.from)));
        }
        done[j] = true;
        for (name, c) in &e.to {
            let i = index_of(&tgt, name, &format!("entry for \"{}\"", e.from))?;
            let v = (m.get(i, j) as i64 + c).rem_euclid(p as i64) as u32;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

impl TowerDocument {
    pub fn to_filtered(&self) -> Result<FilteredComplex> {
        let p = validate_prime(self.p)?;
        let d = assemble(p, &self.generators, &self.generators, &self.differential)?;
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                degree: g.degree,
                filtration: g.filtration,
            })
            .collect();
        FilteredComplex::new(p, generators, d)
    }

    pub fn from_filtered(c: &FilteredComplex) -> Self {
        let gens = c.generators();
        let d = c.differential();
        let differential = gens
            .iter()
            .enumerate()
            .filter_map(|(j, g)| {
                let to: Vec<(String, i64)> = (0..gens.len())
                    .filter(|&i| d.get(i, j) != 0)
                    .map(|i| (gens[i].name.clone(), d.get(i, j) as i64))
                    .collect();
                (!to.is_empty()).then(|| LinearEntry {
                    from: g.name.clone(),
                    to,
                })
            })
            .collect();
        Self {
            p: c.p() as u64,
            generators: gens
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    degree: g.degree,
                    filtration: g.filtration,
                })
                .collect(),
            differential,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn parse_tower_str(text: &str) -> Result<FilteredComplex> {
    let doc: TowerDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_filtered()
}

/// Prefixes document errors with the file they came from.
fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Document(msg) => Error::Document(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn parse_filtered(path: &Path) -> Result<FilteredComplex> {
    parse_tower_str(&read(path)?).map_err(|e| located(path, e))
}

/// Reads and validates a tower document.
pub fn parse_tower(path: &Path) -> Result<Tower> {
    Ok(parse_filtered(path)?.to_tower())
}

/// Reads a map document and the two tower files it names.
pub fn parse_map(path: &Path) -> Result<TowerMap> {
    let doc: MapDocument =
        serde_json::from_str(&read(path)?).map_err(|e| located(path, Error::Document(e.to_string())))?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let source = parse_filtered(&dir.join(&doc.source))?;
    let target = parse_filtered(&dir.join(&doc.target))?;
    let gens = |c: &FilteredComplex| -> Vec<GeneratorEntry> {
        c.generators()
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                degree: g.degree,
                filtration: g.filtration,
            })
            .collect()
    };
    let m = assemble(source.p(), &gens(&source), &gens(&target), &doc.entries).map_err(|e| located(path, e))?;
    Ok(FilteredMap::new(source, target, m)
        .map_err(|e| located(path, e))?
        .to_tower_map())
}

/// A tower document for `tower`, on an adapted basis.
pub fn emit(tower: &Tower) -> TowerDocument {
    TowerDocument::from_filtered(&tower.to_filtered())
}
