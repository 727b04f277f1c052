use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::enumerate::{braid_orbits, Guard, OrbitReport};
use super::HurwitzError;
use crate::signature::RamificationProfile;

/// Bumped whenever the composition convention or canonical form changes.
pub const CONVENTION_VERSION: &str = "left-first/bfs-canonical/v1";

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "STRATA_CACHE";

/// Content address of an orbit computation: profile partitions are sorted,
/// since the orbit decomposition does not depend on their order.
pub fn cache_key(profile: &RamificationProfile) -> String {
    let mut h = Sha256::new();
    h.update(CONVENTION_VERSION.as_bytes());
    h.update(format!("|d={}|{}", profile.degree(), profile.sorted()).as_bytes());
    format!("{:x}", h.finalize())
}

/// On-disk store of orbit reports keyed by [`cache_key`].
#[derive(Clone, Debug)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        OrbitCache { dir: dir.into() }
    }

    /// From `STRATA_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, profile: &RamificationProfile) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(profile)))
    }

    pub fn get(&self, profile: &RamificationProfile) -> Option<OrbitReport> {
        let text = fs::read_to_string(self.path(profile)).ok()?;
        let report: OrbitReport = serde_json::from_str(&text).ok()?;
        (report.degree == profile.degree() as usize).then_some(report)
    }

    pub fn put(&self, profile: &RamificationProfile, report: &OrbitReport) -> Result<(), HurwitzError> {
        let io = |e: std::io::Error| HurwitzError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let tmp = self.dir.join(format!("{}.tmp{}", cache_key(profile), std::process::id()));
        let text = serde_json::to_string_pretty(report).map_err(|e| HurwitzError::Cache(e.to_string()))?;
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, self.path(profile)).map_err(io)
    }

    /// Cached report if present. Otherwise computes, stores and returns it;
    /// the flag says whether the cache answered.
    pub fn orbits(&self, profile: &RamificationProfile, guard: Guard) -> Result<(OrbitReport, bool), HurwitzError> {
        if let Some(r) = self.get(profile) {
            return Ok((r, true));
        }
        let r = braid_orbits(profile, guard)?;
        self.put(profile, &r)?;
        Ok((r, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_ignores_order() {
        let a = RamificationProfile::parse("[3],[2,1],[2,1],[3]").unwrap();
        let b = RamificationProfile::parse("[2,1],[3],[3],[2,1]").unwrap();
        assert_eq!(cache_key(&a), cache_key(&b));
        let c = RamificationProfile::parse("[2,1],[2,1],[2,1],[2,1]").unwrap();
        assert_ne!(cache_key(&a), cache_key(&c));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OrbitCache::new(dir.path());
        let p = RamificationProfile::parse("[2,1],[2,1],[2,1],[2,1]").unwrap();
        let (r, hit) = cache.orbits(&p, Guard::default()).unwrap();
        assert!(!hit);
        let (s, hit) = cache.orbits(&p, Guard::default()).unwrap();
        assert!(hit);
        assert_eq!(r, s);
    }
}
