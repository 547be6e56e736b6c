//! On-disk formats for sets and functions.
//!
//! Sets: `{"dim": d, "points": [[c1, …, cd], …]}` or plain text with one
//! point per line (space-separated integers, dimension taken from the first
//! line). Functions: `{"dim": d, "values": [{"point": […], "value": v}, …]}`
//! with every `v > 0`. Repeated points are rejected in every format.

use serde::{Deserialize, Serialize};

use super::{FiniteFunction, LatticeSet, Point};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SetFile {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FunctionEntry {
    pub point: Vec<i64>,
    pub value: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FunctionFile {
    pub dim: usize,
    pub values: Vec<FunctionEntry>,
}

impl From<&LatticeSet> for SetFile {
    fn from(set: &LatticeSet) -> Self {
        SetFile {
            dim: set.dim(),
            points: set.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<SetFile> for LatticeSet {
    type Error = Error;

    fn try_from(file: SetFile) -> Result<Self> {
        LatticeSet::from_unique_points(file.dim, file.points.into_iter().map(Point::from))
    }
}

impl From<&FiniteFunction> for FunctionFile {
    fn from(f: &FiniteFunction) -> Self {
        FunctionFile {
            dim: f.dim(),
            values: f
                .iter()
                .map(|(p, v)| FunctionEntry { point: p.coords().to_vec(), value: v })
                .collect(),
        }
    }
}

impl TryFrom<FunctionFile> for FiniteFunction {
    type Error = Error;

    fn try_from(file: FunctionFile) -> Result<Self> {
        if let Some(e) = file.values.iter().find(|e| e.value.is_nan() || e.value <= 0.0) {
            return Err(Error::InvalidValue { point: e.point.clone(), value: e.value });
        }
        FiniteFunction::from_values(
            file.dim,
            file.values.into_iter().map(|e| (Point::from(e.point), e.value)),
        )
    }
}

pub fn set_to_json(set: &LatticeSet) -> String {
    serde_json::to_string(&SetFile::from(set)).expect("set serialization cannot fail")
}

pub fn set_from_json(text: &str) -> Result<LatticeSet> {
    let file: SetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.try_into()
}

pub fn set_to_text(set: &LatticeSet) -> String {
    let mut out = String::new();
    for p in set {
        let line: Vec<String> = p.coords().iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the plain-text set format. Blank lines and `#` comments are skipped.
pub fn set_from_text(text: &str) -> Result<LatticeSet> {
    let mut points = Vec::new();
    let mut dim = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("line {}: `{tok}`: {e}", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: coords.len() });
        }
        points.push(Point::from(coords));
    }
    let dim = dim.ok_or(Error::Empty("text set file has no points"))?;
    LatticeSet::from_unique_points(dim, points)
}

/// Reads either format, choosing JSON when the first non-blank byte is `{`.
pub fn set_from_str(text: &str) -> Result<LatticeSet> {
    if text.trim_start().starts_with('{') {
        set_from_json(text)
    } else {
        set_from_text(text)
    }
}

pub fn function_to_json(f: &FiniteFunction) -> String {
    serde_json::to_string(&FunctionFile::from(f)).expect("function serialization cannot fail")
}

pub fn function_from_json(text: &str) -> Result<FiniteFunction> {
    let file: FunctionFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.try_into()
}
