//! Dataset manifest: which edge lists to analyse and how to label them.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DataType {
    Social,
    Citation,
    Economic,
    #[serde(rename = "Co-occurrence")]
    CoOccurrence,
    Computer,
    Contact,
    Transport,
}

impl DataType {
    pub fn as_str(self) -> &'static str {
        match self {
            DataType::Social => "Social",
            DataType::Citation => "Citation",
            DataType::Economic => "Economic",
            DataType::CoOccurrence => "Co-occurrence",
            DataType::Computer => "Computer",
            DataType::Contact => "Contact",
            DataType::Transport => "Transport",
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Structure {
    Star,
    Bipartite,
    Individual,
    Clique,
    Spatial,
}

impl Structure {
    pub fn as_str(self) -> &'static str {
        match self {
            Structure::Star => "Star",
            Structure::Bipartite => "Bipartite",
            Structure::Individual => "Individual",
            Structure::Clique => "Clique",
            Structure::Spatial => "Spatial",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    /// Single-character label used in plots.
    pub id: String,
    pub name: String,
    pub path: PathBuf,
    pub data_type: DataType,
    pub structure: Structure,
}

/// Parses a manifest (a JSON array of [`CorpusEntry`]). Ids must be single
/// characters and unique.
pub fn parse_manifest(json: &str) -> Result<Vec<CorpusEntry>> {
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(json).map_err(|e| Error::Manifest(e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for entry in &entries {
        if entry.id.chars().count() != 1 {
            return Err(Error::Manifest(format!(
                "id `{}` must be a single character",
                entry.id
            )));
        }
        if !seen.insert(entry.id.as_str()) {
            return Err(Error::Manifest(format!("duplicate id `{}`", entry.id)));
        }
    }
    Ok(entries)
}
