//! Content-addressed storage of minimal resolutions.
//!
//! The key is a SHA-256 of the canonical presentation text, the window and
//! the algorithm version, so a version bump is a cache miss. Loaded files
//! are re-validated (`d^2 = 0`); a corrupt entry is reported, recomputed
//! and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graded::Presentation;
use crate::resolution::{minimal_resolution, FreeResolution, ResolutionData};

/// Bumped whenever resolution output could change.
pub const ALGORITHM_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_VAR: &str = "GORDUAL_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct ResolutionCache {
    dir: PathBuf,
    version: u32,
}

impl ResolutionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: dir.into(),
            version: ALGORITHM_VERSION,
        }
    }

    /// An explicit directory wins over the environment; `None` when
    /// neither is set.
    pub fn from_env(explicit: Option<&Path>) -> Option<Self> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_DIR_VAR).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn with_version(mut self, version: u32) -> Self {
        self.version = version;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, pres: &Presentation, hom_bound: u32, deg_bound: u32) -> String {
        let mut h = Sha256::new();
        h.update(pres.to_text().as_bytes());
        h.update(format!("\nhom_bound={hom_bound}\ndeg_bound={deg_bound}\nversion={}\n", self.version).as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn store(&self, pres: &Presentation, hom_bound: u32, deg_bound: u32, res: &FreeResolution) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&self.key(pres, hom_bound, deg_bound));
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&res.to_data())?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` on a miss; `CacheCorrupt` when the file exists but does
    /// not parse, belongs to another presentation, or fails validation.
    pub fn load(&self, pres: &Presentation, hom_bound: u32, deg_bound: u32) -> Result<Option<FreeResolution>> {
        let path = self.path(&self.key(pres, hom_bound, deg_bound));
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |msg: String| Error::CacheCorrupt(format!("{}: {msg}", path.display()));
        let data: ResolutionData = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
        if data.presentation != pres.to_text() || data.hom_bound != hom_bound || data.level_bound != deg_bound {
            return Err(corrupt("contents do not match the key".into()));
        }
        FreeResolution::from_data(data).map(Some).map_err(|e| corrupt(e.to_string()))
    }

    /// Load, or compute and store. Corrupt entries are logged and replaced.
    pub fn resolve(&self, pres: &Presentation, hom_bound: u32, deg_bound: u32) -> Result<FreeResolution> {
        match self.load(pres, hom_bound, deg_bound) {
            Ok(Some(res)) => return Ok(res),
            Ok(None) => {}
            Err(Error::CacheCorrupt(msg)) => log::warn!("discarding cache entry: {msg}"),
            Err(e) => return Err(e),
        }
        let res = minimal_resolution(pres, hom_bound, deg_bound)?;
        self.store(pres, hom_bound, deg_bound, &res)?;
        Ok(res)
    }
}
