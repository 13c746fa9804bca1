//! JSON persistence for fitted panels.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "grid": { "start": 0.0, "step": 1.0, "count": 120 },
//!   "config": { "panel_size": 5, "lbound": -1.0, "alpha": 1.0,
//!               "transform": "reciprocal", "with_replacement": false },
//!   "stopped_early": false,
//!   "terms": [ { "member_id": "hotel_007", "weight": 3.2, "raw_rho": 3.2,
//!                "score": 0.97, "iteration": 0 } ],
//!   "provenance": { "input_digest": "<sha256 hex>", "created_unix": 1700000000 }
//! }
//! ```

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boost::{BoostConfig, PanelModel, PanelTerm};
use crate::error::{Error, Result};
use crate::series::TimeGrid;

use super::{read_bytes, write_atomic};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    /// SHA-256 of the data file the model was fitted on.
    pub input_digest: String,
    pub created_unix: u64,
}

impl Provenance {
    pub fn for_input(bytes: &[u8]) -> Self {
        let created_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            input_digest: hex::encode(Sha256::digest(bytes)),
            created_unix,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: PanelModel,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridRepr {
    start: f64,
    step: f64,
    count: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigRepr {
    panel_size: usize,
    lbound: f64,
    alpha: f64,
    transform: crate::functional::TransformKind,
    with_replacement: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    member_id: String,
    weight: f64,
    raw_rho: f64,
    score: f64,
    iteration: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Repr {
    format_version: u32,
    grid: GridRepr,
    config: ConfigRepr,
    stopped_early: bool,
    terms: Vec<TermRepr>,
    provenance: Provenance,
}

impl ModelFile {
    pub fn to_json(&self) -> String {
        let m = &self.model;
        let c = m.config();
        let repr = Repr {
            format_version: FORMAT_VERSION,
            grid: GridRepr {
                start: m.grid().start(),
                step: m.grid().step(),
                count: m.grid().count(),
            },
            config: ConfigRepr {
                panel_size: c.panel_size,
                lbound: c.lbound,
                alpha: c.alpha,
                transform: c.transform,
                with_replacement: c.with_replacement,
            },
            stopped_early: m.stopped_early(),
            terms: m
                .terms()
                .iter()
                .map(|t| TermRepr {
                    member_id: t.member_id.clone(),
                    weight: t.weight,
                    raw_rho: t.raw_rho,
                    score: t.score,
                    iteration: t.iteration,
                })
                .collect(),
            provenance: self.provenance.clone(),
        };
        let mut s = serde_json::to_string_pretty(&repr).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json_err = |e: serde_json::Error| Error::Parse {
            context: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        };
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
        let version = value
            .get("format_version")
            .ok_or_else(|| Error::Parse {
                context: "model file".into(),
                message: "missing field `format_version`".into(),
            })?
            .as_u64();
        if version != Some(FORMAT_VERSION as u64) {
            return Err(Error::UnsupportedVersion(format!(
                "format_version {} (supported: {FORMAT_VERSION})",
                value["format_version"]
            )));
        }
        let repr: Repr = serde_json::from_str(text).map_err(|e| {
            if e.to_string().contains("unknown field") {
                Error::UnsupportedVersion(e.to_string())
            } else {
                json_err(e)
            }
        })?;

        let grid = TimeGrid::new(repr.grid.start, repr.grid.step, repr.grid.count)?;
        let config = BoostConfig {
            panel_size: repr.config.panel_size,
            lbound: repr.config.lbound,
            alpha: repr.config.alpha,
            transform: repr.config.transform,
            with_replacement: repr.config.with_replacement,
        };
        let terms = repr
            .terms
            .into_iter()
            .map(|t| PanelTerm {
                member_id: t.member_id,
                weight: t.weight,
                raw_rho: t.raw_rho,
                score: t.score,
                iteration: t.iteration,
            })
            .collect();
        Ok(Self {
            model: PanelModel::new(terms, config, grid, repr.stopped_early)?,
            provenance: repr.provenance,
        })
    }
}

pub fn write_model(path: &Path, model: &PanelModel, provenance: &Provenance) -> Result<()> {
    let file = ModelFile {
        model: model.clone(),
        provenance: provenance.clone(),
    };
    write_atomic(path, file.to_json().as_bytes())
}

pub fn read_model(path: &Path) -> Result<ModelFile> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        context: path.display().to_string(),
        message: e.to_string(),
    })?;
    ModelFile::from_json(&text)
}
