//! JSON tensor files: a sparse map from 1-based index strings to rationals.

use echar_core::{Rational, Tensor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub order: usize,
    pub dim: usize,
    /// `"1,2,1" -> "3/4"`
    pub entries: BTreeMap<String, String>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("bad index {0:?}: expected comma-separated 1-based integers")]
    Index(String),
    #[error("bad rational {0:?} at index {1:?}")]
    Value(String, String),
    #[error(transparent)]
    Tensor(#[from] echar_core::Error),
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() || s.trim() != s || s.starts_with('+') {
        return None;
    }
    Rational::from_str(s).ok()
}

fn parse_index(key: &str) -> Result<Vec<usize>, DocumentError> {
    key.split(',')
        .map(|p| match p.parse::<usize>() {
            Ok(v) if p.bytes().all(|b| b.is_ascii_digit()) => Ok(v),
            _ => Err(DocumentError::Index(key.to_string())),
        })
        .collect()
}

impl TensorDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        doc.to_tensor()?;
        Ok(doc)
    }

    pub fn to_tensor(&self) -> Result<Tensor, DocumentError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (k, v) in &self.entries {
            let idx = parse_index(k)?;
            let q = parse_rational(v).ok_or_else(|| DocumentError::Value(v.clone(), k.clone()))?;
            entries.push((idx, q));
        }
        Ok(Tensor::from_one_based(self.order, self.dim, entries)?)
    }

    /// Nonzero entries only, values in lowest terms.
    pub fn from_tensor(a: &Tensor) -> Self {
        let entries = a
            .entries()
            .filter(|(_, v)| **v != Rational::from_integer(0.into()))
            .map(|(idx, v)| {
                let key: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                (key.join(","), v.to_string())
            })
            .collect();
        Self {
            order: a.order(),
            dim: a.dim(),
            entries,
        }
    }

    pub fn print(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain strings serialize")
    }
}
