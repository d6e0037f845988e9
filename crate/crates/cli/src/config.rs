//! Run configuration: a JSON file merged with command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "ELEVENVERTEX_SEED";
const DEFAULT_SEED: u64 = 1;

/// Everything a run depends on. Unset fields fall back to per-model defaults, so a
/// config file only needs the values it changes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub suite: Option<String>,
    pub model: Option<String>,
    pub out: Option<PathBuf>,
    /// Number of seeded sample points for randomized checks.
    pub points: Option<usize>,
    pub eta: Option<f64>,
    pub eps: Option<f64>,
    pub nu: Option<f64>,
    pub c: Option<f64>,
    pub lambda: Option<f64>,
    /// Use `S² = −λ²` (the well-posed branch of the LL equation) instead of `S² = λ²`.
    pub elliptic: Option<bool>,
    pub k: Option<f64>,
    /// Number of sites (Gaudin models, chains).
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub grid_n: Option<usize>,
    pub length: Option<f64>,
    /// Record every `every` steps.
    pub every: Option<usize>,
    /// Site positions `z_a`.
    pub z: Option<Vec<f64>>,
    /// Per-site `η_a` for chains.
    pub etas: Option<Vec<f64>>,
    /// Initial canonical pair `(p, q)` for the two-body models.
    pub p0: Option<f64>,
    pub q0: Option<f64>,
    /// Compare a two-body trajectory against the mapped top trajectory.
    pub cross_check: Option<bool>,
    /// Negative control: add 1 to the quadratic bracket entry named `"A,B"` before checking.
    pub corrupt_entry: Option<String>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            seed, suite, model, out, points, eta, eps, nu, c, lambda, elliptic, k, n, dt, steps, grid_n, length,
            every, z, etas, p0, q0, cross_check, corrupt_entry
        )
    }

    /// Seed from the config, then the environment, then the default.
    pub fn resolved_seed(&self) -> Result<u64, ConfigError> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| ConfigError(format!("{SEED_ENV}={v:?} is not an integer"))),
            Err(_) => Ok(DEFAULT_SEED),
        }
    }

    pub fn positive(&self, name: &str, v: Option<f64>, default: f64) -> Result<f64, ConfigError> {
        let x = v.unwrap_or(default);
        if x.is_finite() && x > 0.0 {
            Ok(x)
        } else {
            Err(ConfigError(format!("{name} must be positive, got {x}")))
        }
    }

    pub fn finite(&self, name: &str, v: Option<f64>, default: f64) -> Result<f64, ConfigError> {
        let x = v.unwrap_or(default);
        if x.is_finite() {
            Ok(x)
        } else {
            Err(ConfigError(format!("{name} must be finite")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = RunConfig {
            seed: Some(7),
            model: Some("ll".into()),
            z: Some(vec![0.0, 0.5]),
            dt: Some(1e-3),
            elliptic: Some(true),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn merge_prefers_overrides() {
        let base = RunConfig { seed: Some(1), eta: Some(0.5), ..Default::default() };
        let over = RunConfig { seed: Some(2), ..Default::default() };
        let m = base.merge(over);
        assert_eq!((m.seed, m.eta), (Some(2), Some(0.5)));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"sede": 3}"#).is_err());
    }
}
