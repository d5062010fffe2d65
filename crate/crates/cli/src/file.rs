//! Module files.
//!
//! ```json
//! { "p": 3, "rank": 2, "dim": 3,
//!   "generators": [[[1,0,0],[1,1,0],[0,0,1]], [[1,0,0],[0,1,0],[1,0,1]]],
//!   "name": "optional", "metadata": { "anything": "ignored" } }
//! ```
//!
//! Each generator is a `dim × dim` matrix in row-major order acting on column
//! vectors from the left. Files written for right modules must transpose every
//! generator. Entries may be any integers; they are reduced mod `p`.

use std::path::Path;

use npj_core::linalg::FpMatrix;
use npj_core::rep::{GroupSpec, Module};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub p: u32,
    pub rank: usize,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl ModuleFile {
    pub fn from_module(m: &Module, name: Option<String>) -> Self {
        ModuleFile {
            p: m.p(),
            rank: m.group().rank(),
            dim: m.dim(),
            generators: m
                .gens()
                .iter()
                .map(|g| {
                    g.row_vecs()
                        .into_iter()
                        .map(|r| r.into_iter().map(i64::from).collect())
                        .collect()
                })
                .collect(),
            name,
            metadata: None,
        }
    }

    /// Checks shapes and builds the validated module.
    pub fn to_module(&self) -> Result<Module, CliError> {
        let group = GroupSpec::new(self.p, self.rank).map_err(|e| CliError::Schema(format!("field p/rank: {e}")))?;
        if self.generators.len() != self.rank {
            return Err(CliError::Schema(format!(
                "field generators: expected {} matrices, found {}",
                self.rank,
                self.generators.len()
            )));
        }
        let mut gens = Vec::with_capacity(self.rank);
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim {
                return Err(CliError::Schema(format!(
                    "field generators[{i}]: expected {} rows, found {}",
                    self.dim,
                    g.len()
                )));
            }
            if let Some((r, row)) = g.iter().enumerate().find(|(_, row)| row.len() != self.dim) {
                return Err(CliError::Schema(format!(
                    "field generators[{i}][{r}]: expected {} entries, found {}",
                    self.dim,
                    row.len()
                )));
            }
            gens.push(FpMatrix::from_rows(self.p, g));
        }
        if self.dim == 0 {
            return Ok(Module::zero(group));
        }
        Module::new(group, gens).map_err(|e| match e {
            npj_core::Error::InvalidModule(v) => CliError::Invalid(v),
            e => CliError::Schema(e.to_string()),
        })
    }
}

/// `p,rank,dim;` then each generator's entries row-major, comma-separated,
/// generators separated by `;`.
pub fn canonical_string(m: &Module) -> String {
    let mut s = format!("{},{},{}", m.p(), m.group().rank(), m.dim());
    for g in m.gens() {
        s.push(';');
        let entries: Vec<String> = g.data().iter().map(u32::to_string).collect();
        s.push_str(&entries.join(","));
    }
    s
}

/// SHA-256 of [`canonical_string`], hex encoded.
pub fn content_hash(m: &Module) -> String {
    hex::encode(Sha256::digest(canonical_string(m).as_bytes()))
}

pub fn parse_module_file(text: &str) -> Result<ModuleFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
}

/// A loaded module together with its display name.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub module: Module,
    pub name: String,
}

/// Reads `path`, or a gallery module written `gallery:NAME`.
pub fn load_module(source: &str) -> Result<Loaded, CliError> {
    if let Some(name) = source.strip_prefix("gallery:") {
        let module = npj_core::gallery::by_name(name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown gallery module {name:?}; known: {}",
                npj_core::gallery::NAMES.join(", ")
            ))
        })?;
        return Ok(Loaded {
            module,
            name: name.to_string(),
        });
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
    let file = parse_module_file(&text).map_err(|e| e.context(source))?;
    let module = file.to_module().map_err(|e| e.context(source))?;
    let name = file.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned())
    });
    Ok(Loaded { module, name })
}
