//! Run configuration shared by the checks, scans and searches.
//!
//! The on-disk form is `key = value` lines (a TOML subset). Unknown keys are
//! rejected so that typos do not silently fall back to defaults.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Relative tolerance for floating-point comparisons.
    pub rel_tol: f64,
    /// Quadrature points per unit cell for the continuous checks.
    pub grid_per_cell: usize,
    /// Largest scan search space accepted, in instances.
    pub budget: u64,
    pub workers: usize,
    pub seed: u64,
    /// Local search steps per restart.
    pub steps: u64,
    pub restarts: usize,
    /// Cap on instances kept in scan summaries; counts stay exact.
    pub max_recorded: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            rel_tol: 1e-9,
            grid_per_cell: 64,
            budget: 50_000_000,
            workers: 1,
            seed: 0,
            steps: 10_000,
            restarts: 1,
            max_recorded: 1_000,
        }
    }
}

impl Config {
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let config: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_kv_text(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Config(format!("rel_tol must be in [0, 1), got {}", self.rel_tol)));
        }
        if self.grid_per_cell < 2 {
            return Err(Error::GridTooCoarse(self.grid_per_cell));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = Config::default();
        assert_eq!(Config::from_kv_text(&c.to_kv_text()).unwrap(), c);
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let c = Config::from_kv_text("rel_tol = 1e-6\n# comment\nworkers = 4\n").unwrap();
        assert_eq!(c.rel_tol, 1e-6);
        assert_eq!(c.workers, 4);
        assert_eq!(c.grid_per_cell, 64);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::from_kv_text("grid_per_cell = 1").is_err());
        assert!(Config::from_kv_text("rel_tol = -1.0").is_err());
        assert!(Config::from_kv_text("workers = 0").is_err());
        assert!(Config::from_kv_text("colour = 3").is_err());
    }
}
