//! Exhaustive census of small Gauss diagrams, stored as JSON lines.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::error::{Error, Result};
use crate::indices::carter_genus;
use crate::invariants::{dwrithe, wp0_polynomial, writhe_polynomial, F_invariant, L_invariant};
use crate::module::ModuleElement;
use crate::moves::{canonical_code, Budget, Orientation};

/// Largest chord count the census accepts unless told otherwise.
pub const DEFAULT_CAP: usize = 5;

/// Size and coefficients of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub keys: usize,
    pub coefficients: Vec<i64>,
    pub text: String,
}

impl From<&ModuleElement> for ModuleSummary {
    fn from(e: &ModuleElement) -> Self {
        ModuleSummary { keys: e.len(), coefficients: e.coefficients(), text: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub canonical_code: String,
    pub chords: usize,
    pub writhe: i64,
    #[serde(rename = "W")]
    pub w: String,
    pub dwrithe: [i64; 3],
    pub wp0: String,
    pub carter_genus: usize,
    #[serde(rename = "F")]
    pub f: ModuleSummary,
    #[serde(rename = "L")]
    pub l: ModuleSummary,
    pub seed: u64,
    pub budget: Budget,
    pub version: String,
}

impl CensusRecord {
    pub fn new(d: &GaussDiagram, seed: u64, budget: Budget) -> Result<Self> {
        Ok(CensusRecord {
            canonical_code: canonical_code(d, Orientation::Oriented),
            chords: d.slots().len() / 2,
            writhe: d.writhe(),
            w: writhe_polynomial(d).to_string(),
            dwrithe: [dwrithe(d, 1)?, dwrithe(d, 2)?, dwrithe(d, 3)?],
            wp0: wp0_polynomial(d).to_string(),
            carter_genus: carter_genus(&d.shadow()),
            f: (&F_invariant(d, budget)?).into(),
            l: (&L_invariant(d, budget)?).into(),
            seed,
            budget,
            version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }
}

/// Chord sequences on `2n` slots with chords numbered in order of first
/// appearance, one per perfect matching.
fn matchings(n: usize) -> Vec<Vec<u32>> {
    fn go(seq: &mut Vec<u32>, open: &mut Vec<u32>, next: u32, n: u32, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * n as usize {
            out.push(seq.clone());
            return;
        }
        if next <= n {
            seq.push(next);
            open.push(next);
            go(seq, open, next + 1, n, out);
            open.pop();
            seq.pop();
        }
        for i in 0..open.len() {
            let c = open.remove(i);
            seq.push(c);
            go(seq, open, next, n, out);
            seq.pop();
            open.insert(i, c);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), 1, n as u32, &mut out);
    out
}

/// Every Gauss diagram with exactly `n` chords, one per canonical code,
/// sorted by code.
pub fn diagrams_with(n: usize) -> Vec<GaussDiagram> {
    let shapes = matchings(n);
    let codes: BTreeSet<String> = shapes
        .par_iter()
        .flat_map_iter(|seq| {
            (0u32..1 << n).flat_map(move |roles| {
                (0u32..1 << n).map(move |signs| {
                    let slots: Vec<Endpoint> = {
                        let mut seen = vec![false; n + 1];
                        seq.iter()
                            .map(|&c| {
                                let first_over = roles >> (c - 1) & 1 == 1;
                                let first = !seen[c as usize];
                                seen[c as usize] = true;
                                let role = if first == first_over { Role::Over } else { Role::Under };
                                Endpoint { chord: ChordId(c), role }
                            })
                            .collect()
                    };
                    let signs: BTreeMap<ChordId, Sign> = (1..=n as u32)
                        .map(|c| (ChordId(c), if signs >> (c - 1) & 1 == 1 { Sign::Neg } else { Sign::Pos }))
                        .collect();
                    let d = GaussDiagram::new(slots, signs).expect("well-formed by construction");
                    canonical_code(&d, Orientation::Oriented)
                })
            })
        })
        .collect();
    codes
        .into_iter()
        .map(|c| GaussDiagram::parse(&c).expect("canonical codes parse"))
        .collect()
}

/// Counts reported alongside a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub records: usize,
    pub nonzero_w_records: usize,
    pub distinct_nonzero_w: usize,
}

/// Records for every diagram with at most `max_chords` chords, by chord
/// count and then by code.
pub fn census_records(
    max_chords: usize,
    cap: usize,
    seed: u64,
    budget: Budget,
) -> Result<Vec<CensusRecord>> {
    if max_chords > cap {
        return Err(Error::CensusCap { max: max_chords, cap });
    }
    let mut out = Vec::new();
    for n in 0..=max_chords {
        let records: Vec<CensusRecord> = diagrams_with(n)
            .par_iter()
            .map(|d| CensusRecord::new(d, seed, budget))
            .collect::<Result<_>>()?;
        out.extend(records);
    }
    Ok(out)
}

pub fn summarize(records: &[CensusRecord]) -> CensusSummary {
    let nonzero: Vec<&CensusRecord> = records.iter().filter(|r| r.w != "0").collect();
    let distinct: BTreeSet<&str> = nonzero.iter().map(|r| r.w.as_str()).collect();
    CensusSummary {
        records: records.len(),
        nonzero_w_records: nonzero.len(),
        distinct_nonzero_w: distinct.len(),
    }
}

/// Writes the census to `path`, one JSON record per line.
pub fn write_census(
    path: &Path,
    max_chords: usize,
    cap: usize,
    seed: u64,
    budget: Budget,
) -> Result<CensusSummary> {
    let records = census_records(max_chords, cap, seed, budget)?;
    let mut text = Vec::new();
    for r in &records {
        serde_json::to_writer(&mut text, r).map_err(|e| Error::Io(e.to_string()))?;
        text.push(b'\n');
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&text)?;
    Ok(summarize(&records))
}

/// Reads a census file back.
pub fn read_census(path: &Path) -> Result<Vec<CensusRecord>> {
    std::fs::read_to_string(path)?
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Io(e.to_string())))
        .collect()
}
