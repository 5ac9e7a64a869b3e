use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Search settings for the dephased-entropy minimization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Grid points per angle axis; polar angles span `[0, π/2]`, azimuths `[0, 2π)`.
    pub coarse_grid_points_per_axis: usize,
    /// Number of best grid cells refined by the simplex search.
    pub refine_starts: usize,
    /// Simplex stops once the objective spread is below this many bits.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Seed for commands that sample states; the minimization itself is
    /// deterministic and draws no random numbers.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            coarse_grid_points_per_axis: 16,
            refine_starts: 8,
            tolerance: 1e-9,
            max_iterations: 2000,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        for (name, v) in [
            ("grid", self.coarse_grid_points_per_axis),
            ("starts", self.refine_starts),
            ("max_iterations", self.max_iterations),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    /// Sets one field from its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn std::fmt::Display| Error::Config(format!("{key} = {value}: {e}"));
        match key {
            "grid" | "coarse_grid_points_per_axis" => {
                self.coarse_grid_points_per_axis = value.parse().map_err(|e| bad(&e))?
            }
            "starts" | "refine_starts" => self.refine_starts = value.parse().map_err(|e| bad(&e))?,
            "tol" | "tolerance" => self.tolerance = value.parse().map_err(|e| bad(&e))?,
            "max_iterations" | "max_iter" => {
                self.max_iterations = value.parse().map_err(|e| bad(&e))?
            }
            "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses `key=value` lines on top of the defaults. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_kv_str(&std::fs::read_to_string(path)?)
    }
}
