//! Run configuration, read from an optional TOML file.

use std::path::Path;

use hyptr_core::numerics::QuadratureOptions;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Hard limits on the recursion caps.
pub const MAX_G: usize = 4;
pub const MAX_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Multiplies every verification tolerance.
    pub tolerance_scale: f64,
    pub quadrature_initial_nodes: usize,
    pub quadrature_max_nodes: usize,
    pub quadrature_tolerance: f64,
    pub g_cap: usize,
    pub n_cap: usize,
    /// 0 lets rayon decide.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        let q = QuadratureOptions::default();
        Self {
            tolerance_scale: 1.0,
            quadrature_initial_nodes: q.initial_nodes,
            quadrature_max_nodes: q.max_nodes,
            quadrature_tolerance: q.tolerance,
            g_cap: 3,
            n_cap: 3,
            threads: 0,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let cfg = match path {
            None => Self::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| CliError::usage(format!("bad config {}: {e}", p.display())))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.tolerance_scale > 0.0) || !(self.quadrature_tolerance > 0.0) {
            return Err(CliError::usage("tolerances must be positive"));
        }
        if self.quadrature_initial_nodes == 0 || self.quadrature_max_nodes < self.quadrature_initial_nodes {
            return Err(CliError::usage("quadrature node counts must be positive and max >= initial"));
        }
        if self.g_cap == 0 || self.n_cap == 0 || self.g_cap > MAX_G || self.n_cap > MAX_N {
            return Err(CliError::usage(format!("caps must lie in 1..={MAX_G} (g) and 1..={MAX_N} (n)")));
        }
        Ok(())
    }

    pub fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            initial_nodes: self.quadrature_initial_nodes,
            max_nodes: self.quadrature_max_nodes,
            tolerance: self.quadrature_tolerance,
        }
    }

    /// `HYPTR_THREADS` wins over the file.
    pub fn apply_env(&mut self) -> CliResult<()> {
        if let Ok(v) = std::env::var("HYPTR_THREADS") {
            self.threads = v.trim().parse().map_err(|_| CliError::usage(format!("HYPTR_THREADS={v} is not a count")))?;
        }
        Ok(())
    }
}
