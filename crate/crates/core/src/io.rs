//! JSON category data files.
//!
//! ```json
//! { "name": "fib", "conductor": 5, "rank": 2, "labels": ["1", "τ"],
//!   "unit": 0, "dual": [0, 1],
//!   "dims": [["1", "0", "0", "0"], ["0", "0", "-1", "-1"]],
//!   "twists": [["1", "0", "0", "0"], ["0", "0", "1", "0"]],
//!   "fusion": [{"x": 0, "y": 0, "z": 0, "n": 1}, ...] }
//! ```
//!
//! Only nonzero fusion coefficients are listed. An `"S"` field, if present,
//! is ignored; S is always recomputed.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fusion::{CategoryData, FusionRules, PremodularData};

#[derive(Serialize, Deserialize)]
struct FusionEntry {
    x: usize,
    y: usize,
    z: usize,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct DataFile {
    name: String,
    conductor: u32,
    rank: usize,
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    dims: Vec<Vec<String>>,
    twists: Vec<Vec<String>>,
    fusion: Vec<FusionEntry>,
}

fn check_len(what: &str, got: usize, rank: usize) -> Result<()> {
    if got != rank {
        return Err(Error::Malformed(format!("{what} has {got} entries, rank is {rank}")));
    }
    Ok(())
}

fn decode(f: DataFile) -> Result<PremodularData> {
    let r = f.rank;
    if r == 0 {
        return Err(Error::Malformed("rank must be positive".into()));
    }
    if f.conductor == 0 {
        return Err(Error::Malformed("conductor must be positive".into()));
    }
    check_len("labels", f.labels.len(), r)?;
    check_len("dual", f.dual.len(), r)?;
    check_len("dims", f.dims.len(), r)?;
    check_len("twists", f.twists.len(), r)?;
    if f.unit >= r {
        return Err(Error::IndexOutOfRange { index: f.unit, rank: r });
    }
    if let Some(&bad) = f.dual.iter().find(|&&d| d >= r) {
        return Err(Error::IndexOutOfRange { index: bad, rank: r });
    }
    let parse = |items: &[Vec<String>]| {
        items
            .iter()
            .map(|c| CycNum::from_strings(f.conductor, c))
            .collect::<Result<Vec<_>>>()
    };
    let dims = parse(&f.dims)?;
    let twists = parse(&f.twists)?;
    let entries: Vec<_> = f.fusion.iter().map(|e| (e.x, e.y, e.z, e.n)).collect();
    let raw = CategoryData {
        name: f.name,
        conductor: f.conductor,
        labels: f.labels,
        unit: f.unit,
        dual: f.dual,
        fusion: FusionRules::from_entries(r, entries)?,
        dims,
        twists,
    };
    PremodularData::new(raw)
}

fn encode(d: &PremodularData) -> DataFile {
    let mut fusion: Vec<FusionEntry> = d
        .fusion()
        .entries()
        .map(|(x, y, z, n)| FusionEntry { x, y, z, n })
        .collect();
    fusion.sort_by_key(|e| (e.x, e.y, e.z));
    DataFile {
        name: d.name().to_string(),
        conductor: d.conductor(),
        rank: d.rank(),
        labels: d.labels().to_vec(),
        unit: d.unit(),
        dual: (0..d.rank()).map(|x| d.dual(x)).collect(),
        dims: d.dims().iter().map(CycNum::to_strings).collect(),
        twists: d.twists().iter().map(CycNum::to_strings).collect(),
        fusion,
    }
}

pub fn from_json_str(text: &str) -> Result<PremodularData> {
    decode(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(d: &PremodularData) -> String {
    let mut s = serde_json::to_string_pretty(&encode(d)).expect("data file serializes");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<PremodularData> {
    from_json_str(&std::fs::read_to_string(path)?)
}

pub fn save(d: &PremodularData, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(d))?;
    Ok(())
}
