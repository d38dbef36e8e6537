//! Run settings: the system config from file, then `--set` overrides, then
//! dedicated flags. Every key is known up front; anything else is an error.

use std::path::Path;

use ambiquant::dynamics::{FlowVariant, Integrator};
use ambiquant::{Potential, SystemConfig, Variant};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub system: SystemConfig,
    pub integrator: String,
    pub dt: f64,
    pub rtol: f64,
    pub atol: f64,
    pub t_end: f64,
    pub x0: f64,
    pub v0: f64,
    pub flow: FlowVariant,
    pub n_basis: usize,
    pub n_max: usize,
    pub n: usize,
    pub x: f64,
    pub p: f64,
    pub variant: Variant,
    pub order: usize,
}

pub const KEYS: [&str; 20] = [
    "m", "alpha", "hbar", "omega", "coeffs", "integrator", "dt", "rtol", "atol", "t_end", "x0", "v0", "flow",
    "n_basis", "n_max", "n", "x", "p", "variant", "order",
];

impl Settings {
    pub fn new(system: SystemConfig) -> Self {
        Settings {
            system,
            integrator: "rk4".into(),
            dt: 1e-3,
            rtol: 1e-10,
            atol: 1e-12,
            t_end: 10.0,
            x0: 1.0,
            v0: 0.0,
            flow: FlowVariant::Newtonian,
            n_basis: 64,
            n_max: 10,
            n: 0,
            x: 0.0,
            p: 1.0,
            variant: Variant::One,
            order: 2,
        }
    }

    /// Apply one `key=value` override. Dashes in keys count as underscores.
    pub fn apply(&mut self, key: &str, value: &str) -> CliResult<()> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "m" => self.system.m = float(&key, value)?,
            "alpha" => self.system.alpha = float(&key, value)?,
            "hbar" => self.system.hbar = float(&key, value)?,
            "omega" => self.system.potential = Potential::Harmonic { omega: float(&key, value)? },
            "coeffs" => {
                let coeffs = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| float(&key, s))
                    .collect::<CliResult<Vec<_>>>()?;
                self.system.potential = Potential::Polynomial { coeffs };
            }
            "integrator" => match value {
                "rk4" | "rk45" => self.integrator = value.into(),
                _ => return Err(bad(&key, value, "rk4 or rk45")),
            },
            "dt" => self.dt = float(&key, value)?,
            "rtol" => self.rtol = float(&key, value)?,
            "atol" => self.atol = float(&key, value)?,
            "t_end" => self.t_end = float(&key, value)?,
            "x0" => self.x0 = float(&key, value)?,
            "v0" => self.v0 = float(&key, value)?,
            "flow" => {
                self.flow = match value {
                    "newtonian" => FlowVariant::Newtonian,
                    "hamiltonian1" => FlowVariant::Hamiltonian1,
                    "hamiltonian2" => FlowVariant::Hamiltonian2,
                    _ => return Err(bad(&key, value, "newtonian, hamiltonian1 or hamiltonian2")),
                }
            }
            "n_basis" => self.n_basis = count(&key, value)?,
            "n_max" => self.n_max = count(&key, value)?,
            "n" => self.n = count(&key, value)?,
            "x" => self.x = float(&key, value)?,
            "p" => self.p = float(&key, value)?,
            "variant" => {
                self.variant = value
                    .parse::<u8>()
                    .ok()
                    .and_then(Variant::from_index)
                    .ok_or_else(|| bad(&key, value, "1 or 2"))?
            }
            "order" => self.order = count(&key, value)?,
            _ => {
                return Err(CliError::Config(format!(
                    "unknown key '{key}' (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn integrator(&self) -> Integrator {
        match self.integrator.as_str() {
            "rk45" => Integrator::Rk45 { rtol: self.rtol, atol: self.atol },
            _ => Integrator::Rk4 { dt: self.dt },
        }
    }
}

/// Parse a config file in the system-config JSON format.
pub fn load_config(path: &Path) -> CliResult<SystemConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Split `key=value`.
pub fn split_override(raw: &str) -> CliResult<(&str, &str)> {
    raw.split_once('=')
        .ok_or_else(|| CliError::Config(format!("override '{raw}' is not of the form key=value")))
}

fn float(key: &str, value: &str) -> CliResult<f64> {
    match value.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(bad(key, value, "a finite number")),
    }
}

fn count(key: &str, value: &str) -> CliResult<usize> {
    value.parse().map_err(|_| bad(key, value, "a non-negative integer"))
}

fn bad(key: &str, value: &str, want: &str) -> CliError {
    CliError::Config(format!("{key}: expected {want}, got '{value}'"))
}
