//! Content-addressed store of `cc` snapshots, one JSON file per
//! `(module hash, step)`, written by atomic rename.

use std::io::Write;
use std::path::{Path, PathBuf};

use npj_core::engine::{cc_extend, cc_sequence, CcConfig, CcSequence, CcSnapshot};
use npj_core::rep::Module;

use crate::error::CliError;
use crate::file::content_hash;

pub const CACHE_ENV: &str = "NPJ_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `--cache-dir`, falling back to the environment variable.
    pub fn from_flag(flag: Option<&Path>) -> Result<Option<Self>, CliError> {
        match flag {
            Some(d) => Cache::new(d).map(Some),
            None => match std::env::var_os(CACHE_ENV) {
                Some(d) if !d.is_empty() => Cache::new(PathBuf::from(d)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, hash: &str, step: usize) -> PathBuf {
        self.dir.join(format!("{hash}-n{step}.json"))
    }

    /// Loads a snapshot; a missing entry is `None`, a corrupt one is reported
    /// and treated as missing.
    pub fn load(&self, hash: &str, step: usize) -> Option<CcSnapshot> {
        let path = self.path(hash, step);
        let text = std::fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CcSnapshot>(&text) {
            Ok(s) if s.history.len() == step => Some(s),
            Ok(_) => {
                log::warn!("cache entry {} has the wrong length; recomputing", path.display());
                None
            }
            Err(e) => {
                log::warn!("ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, hash: &str, snap: &CcSnapshot) -> Result<(), CliError> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, snap)?;
        tmp.flush()?;
        tmp.persist(self.path(hash, snap.history.len()))
            .map_err(|e| CliError::Io(e.error))?;
        Ok(())
    }
}

/// A `cc` run with the step it resumed from (0 = computed from scratch).
#[derive(Clone, Debug)]
pub struct CachedRun {
    pub seq: CcSequence,
    pub resumed_from: usize,
}

/// Runs `cc` for `m`, resuming from the longest cached snapshot with at most
/// `cfg.n_max` steps and storing the result.
pub fn cached_cc(m: &Module, cfg: &CcConfig, cache: Option<&Cache>) -> Result<CachedRun, CliError> {
    let Some(cache) = cache else {
        return Ok(CachedRun {
            seq: cc_sequence(m, cfg),
            resumed_from: 0,
        });
    };
    let hash = content_hash(m);
    let found = (1..=cfg.n_max).rev().find_map(|n| cache.load(&hash, n).map(|s| (n, s)));
    let (resumed_from, seq) = match found {
        Some((n, snap)) => {
            log::info!("resuming from cached step {n}");
            (n, cc_extend(m, &snap, cfg))
        }
        None => (0, cc_sequence(m, cfg)),
    };
    if seq.snapshot.history.len() > resumed_from {
        if let Err(e) = cache.store(&hash, &seq.snapshot) {
            log::warn!("could not write cache entry: {e}");
        }
    }
    Ok(CachedRun { seq, resumed_from })
}
