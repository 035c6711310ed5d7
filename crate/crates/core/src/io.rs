//! JSON space-definition files.
//!
//! ```json
//! {
//!   "name": "SO(5)/U(2)", "s": 2, "dims": [2, 4], "killing": [1, 1],
//!   "gamma": [{"i": 1, "k": 2, "l": 2, "value": "2/3"}],
//!   "casimir": ["1/3", "1/3"], "is_maximal": false, "has_intermediate": true
//! }
//! ```
//!
//! Gamma records use 1-based indices; a record sets every permutation of its
//! indices and unlisted entries are zero. Reals may be written as `"p/q"`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{validate_space_with_tol, HomogeneousSpaceData, StructureConstants};

/// What to do when a loaded file parses but fails validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationPolicy {
    /// Log each violation and return the data anyway.
    Warn,
    #[default]
    Reject,
    /// Return the data unchecked.
    Skip,
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    pub policy: ValidationPolicy,
    pub tol: f64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { policy: ValidationPolicy::Reject, tol: crate::space::DEFAULT_VALIDATION_TOL }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    fn value(&self, field: &str) -> Result<f64> {
        match self {
            Real::Number(v) => Ok(*v),
            Real::Text(s) => parse_real(s).ok_or_else(|| Error::Schema {
                field: field.to_string(),
                message: format!("cannot parse '{s}' as a real or p/q rational"),
            }),
        }
    }
}

/// Parses a decimal or a `p/q` rational.
pub fn parse_real(text: &str) -> Option<f64> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            (q != 0.0).then(|| p / q)
        }
        None => text.parse().ok(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaRecord {
    i: usize,
    k: usize,
    l: usize,
    value: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    name: String,
    s: usize,
    dims: Vec<i64>,
    killing: Vec<Real>,
    gamma: Vec<GammaRecord>,
    casimir: Vec<Real>,
    is_maximal: bool,
    has_intermediate: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    metadata: String,
}

fn reals(list: &[Real], field: &str) -> Result<Vec<f64>> {
    list.iter().enumerate().map(|(n, r)| r.value(&format!("{field}[{n}]"))).collect()
}

fn from_file(file: SpaceFile) -> Result<HomogeneousSpaceData> {
    let s = file.s;
    let mut gamma = StructureConstants::zeros(s);
    let mut assigned = vec![false; s * s * s];
    for (n, rec) in file.gamma.iter().enumerate() {
        let field = format!("gamma[{n}]");
        let idx = [rec.i, rec.k, rec.l];
        if idx.iter().any(|&v| v == 0 || v > s) {
            return Err(Error::Schema {
                field,
                message: format!("indices ({},{},{}) outside 1..={s}", rec.i, rec.k, rec.l),
            });
        }
        let value = rec.value.value(&format!("{field}.value"))?;
        let (i, k, l) = (rec.i - 1, rec.k - 1, rec.l - 1);
        let o = (i * s + k) * s + l;
        if assigned[o] && gamma.get(i, k, l) != value {
            return Err(Error::Schema {
                field,
                message: format!(
                    "conflicting value {value} for gamma({},{},{}), already {}",
                    rec.i,
                    rec.k,
                    rec.l,
                    gamma.get(i, k, l)
                ),
            });
        }
        gamma.set(i, k, l, value);
        for (a, b, c) in [(i, k, l), (i, l, k), (k, i, l), (k, l, i), (l, i, k), (l, k, i)] {
            assigned[(a * s + b) * s + c] = true;
        }
    }
    Ok(HomogeneousSpaceData {
        name: file.name,
        s,
        dims: file.dims,
        killing: reals(&file.killing, "killing")?,
        gamma: gamma.symmetrized(),
        casimir: reals(&file.casimir, "casimir")?,
        is_maximal: file.is_maximal,
        has_intermediate: file.has_intermediate,
        metadata: file.metadata,
    })
}

fn to_file(data: &HomogeneousSpaceData) -> SpaceFile {
    SpaceFile {
        name: data.name.clone(),
        s: data.s,
        dims: data.dims.clone(),
        killing: data.killing.iter().map(|&v| Real::Number(v)).collect(),
        gamma: data
            .gamma
            .nonzero_canonical()
            .into_iter()
            .map(|(i, k, l, v)| GammaRecord { i: i + 1, k: k + 1, l: l + 1, value: Real::Number(v) })
            .collect(),
        casimir: data.casimir.iter().map(|&v| Real::Number(v)).collect(),
        is_maximal: data.is_maximal,
        has_intermediate: data.has_intermediate,
        metadata: data.metadata.clone(),
    }
}

/// Parses a space definition without validating it.
pub fn parse_space(text: &str) -> Result<HomogeneousSpaceData> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: SpaceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            field: if path == "." { "<root>".to_string() } else { path },
            message: e.inner().to_string(),
        }
    })?;
    from_file(file)
}

pub fn space_to_json(data: &HomogeneousSpaceData) -> String {
    serde_json::to_string_pretty(&to_file(data)).expect("space data serializes")
}

pub fn load_space(path: impl AsRef<Path>) -> Result<HomogeneousSpaceData> {
    load_space_with(path, LoadOptions::default())
}

pub fn load_space_with(path: impl AsRef<Path>, opts: LoadOptions) -> Result<HomogeneousSpaceData> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let data = parse_space(&text)?;
    if opts.policy == ValidationPolicy::Skip {
        return Ok(data);
    }
    let report = validate_space_with_tol(&data, opts.tol);
    if !report.is_valid() {
        match opts.policy {
            ValidationPolicy::Reject => return Err(Error::Validation(report)),
            ValidationPolicy::Warn => {
                for v in &report.violations {
                    log::warn!("{}: {v}", path.display());
                }
            }
            ValidationPolicy::Skip => unreachable!(),
        }
    }
    Ok(data)
}

pub fn save_space(data: &HomogeneousSpaceData, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = space_to_json(data);
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}
