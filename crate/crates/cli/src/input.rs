//! Input documents: weighted monomials, optional delta overrides and run options.

use std::path::Path;

use hms_core::tropical::{DeltaOverride, TropicalError, TropicalModel, WeightedPoints};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub alpha: [i64; 2],
    pub rho: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideEntry {
    pub edge: [[i64; 2]; 2],
    pub delta: [i64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub truncation: u32,
    pub k_window: u32,
    pub arity: u32,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { truncation: 8, k_window: 2, arity: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub monomials: Vec<Monomial>,
    #[serde(default)]
    pub delta_overrides: Vec<OverrideEntry>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("constraint error: {0}")]
    Constraint(String),
}

impl InputDocument {
    pub fn monomials(&self) -> Vec<([i64; 2], i64)> {
        self.monomials.iter().map(|m| (m.alpha, m.rho)).collect()
    }

    pub fn overrides(&self) -> Vec<DeltaOverride> {
        self.delta_overrides.iter().map(|o| DeltaOverride { edge: o.edge, delta: o.delta }).collect()
    }

    /// Builds the tropical model; invalid overrides surface as constraint errors.
    pub fn model(&self) -> Result<TropicalModel, ModelError> {
        let points = WeightedPoints::new(self.monomials())?;
        TropicalModel::build(points, &self.overrides()).map_err(|e| match e {
            TropicalError::DeltaConstraint { .. } | TropicalError::UnknownEdge(_) => {
                ModelError::Input(InputError::Constraint(e.to_string()))
            }
            other => ModelError::Tropical(other),
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

pub fn parse_document(text: &str) -> Result<InputDocument, InputError> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => InputError::Schema(e.to_string()),
            _ => InputError::Parse { line: e.line(), column: e.column(), message: e.to_string() },
        }
    })?;
    let mut seen = std::collections::BTreeSet::new();
    for m in &doc.monomials {
        if !seen.insert(m.alpha) {
            return Err(InputError::Schema(format!("duplicate alpha {:?}", m.alpha)));
        }
    }
    let mut edges = std::collections::BTreeSet::new();
    for o in &doc.delta_overrides {
        for p in o.edge {
            if !seen.contains(&p) {
                return Err(InputError::Schema(format!("override edge endpoint {p:?} is not a monomial")));
            }
        }
        let mut key = o.edge;
        key.sort();
        if !edges.insert(key) {
            return Err(InputError::Schema(format!("duplicate override for edge {:?}", o.edge)));
        }
    }
    Ok(doc)
}

pub fn ingest(path: &Path) -> Result<InputDocument, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    parse_document(&text)
}
