//! Lagrangians, momentum maps, and the Legendre identities linking each
//! constant of motion to its Hamiltonian.

mod series;

pub use series::{expand_in_alpha, paper_c1, SeriesInAlpha, SeriesReport};

use serde::Serialize;

use crate::dynamics::hamiltonian;
use crate::error::{Error, Result};
use crate::model::{k1, k2, checked_exp, PhaseState, SystemConfig, Variant};

fn check_v1_domain(alpha: f64, v: f64) -> Result<()> {
    if alpha > 0.0 && alpha * v * v >= 1.0 {
        return Err(Error::domain(format!("alpha * v^2 = {} must be below 1", alpha * v * v)));
    }
    Ok(())
}

/// `artanh(v√α)/√α`, continued to `arctan(v√−α)/√−α` for `α < 0`; tends
/// to `v` as `α → 0`.
fn scaled_artanh(alpha: f64, v: f64) -> f64 {
    if alpha == 0.0 {
        return v;
    }
    let root = alpha.abs().sqrt();
    if alpha > 0.0 {
        (v * root).atanh() / root
    } else {
        (v * root).atan() / root
    }
}

/// `L₁ = (mv/√α) artanh(v√α) + (m/2α) ln(1 − αv²) − U`.
pub fn lagrangian1(x: f64, v: f64, cfg: &SystemConfig) -> Result<f64> {
    let (m, alpha) = (cfg.m, cfg.alpha);
    let u = cfg.potential(x);
    if alpha == 0.0 {
        return Ok(0.5 * m * v * v - u);
    }
    check_v1_domain(alpha, v)?;
    Ok(m * v * scaled_artanh(alpha, v) + m / (2.0 * alpha) * (-alpha * v * v).ln_1p() - u)
}

/// `L₂ = ½ m v² e^{−2αU/m} − (m/2α)(1 − e^{−2αU/m})`.
pub fn lagrangian2(x: f64, v: f64, cfg: &SystemConfig) -> Result<f64> {
    let (m, alpha) = (cfg.m, cfg.alpha);
    let u = cfg.potential(x);
    if alpha == 0.0 {
        return Ok(0.5 * m * v * v - u);
    }
    let z = -2.0 * alpha * u / m;
    let e = checked_exp(z, "L2")?;
    Ok(0.5 * m * v * v * e + m / (2.0 * alpha) * z.exp_m1())
}

pub fn lagrangian(variant: Variant, x: f64, v: f64, cfg: &SystemConfig) -> Result<f64> {
    match variant {
        Variant::One => lagrangian1(x, v, cfg),
        Variant::Two => lagrangian2(x, v, cfg),
    }
}

/// Canonical momentum `p = ∂L/∂v` of the given variant.
pub fn momentum_map(variant: Variant, x: f64, v: f64, cfg: &SystemConfig) -> Result<f64> {
    let (m, alpha) = (cfg.m, cfg.alpha);
    match variant {
        Variant::One => {
            check_v1_domain(alpha, v)?;
            Ok(m * scaled_artanh(alpha, v))
        }
        Variant::Two => {
            if alpha == 0.0 {
                return Ok(m * v);
            }
            let e = checked_exp(-2.0 * alpha * cfg.potential(x) / m, "momentum map")?;
            Ok(m * v * e)
        }
    }
}

/// Velocity carried by momentum `p` in the given chart.
pub fn inverse_momentum_map(variant: Variant, x: f64, p: f64, cfg: &SystemConfig) -> Result<f64> {
    let (m, alpha) = (cfg.m, cfg.alpha);
    match variant {
        // velocity is ∂H₁/∂p, which already carries the chart check
        Variant::One => Ok(crate::dynamics::hamilton1_rhs(x, p, cfg)?[0]),
        Variant::Two => {
            if alpha == 0.0 {
                return Ok(p / m);
            }
            let e = checked_exp(2.0 * alpha * cfg.potential(x) / m, "inverse momentum map")?;
            Ok(p / m * e)
        }
    }
}

/// Residuals of the three Legendre identities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegendreResiduals {
    /// `|∂L/∂v − p|`, derivative by central difference.
    pub momentum: f64,
    /// `|p v − L − H|`.
    pub transform: f64,
    /// `|H(x, p(x, v)) − K(x, v)|`.
    pub energy: f64,
}

impl LegendreResiduals {
    pub fn max(&self) -> f64 {
        self.momentum.max(self.transform).max(self.energy)
    }
}

pub fn legendre_consistency(variant: Variant, x: f64, v: f64, cfg: &SystemConfig) -> Result<LegendreResiduals> {
    let p = momentum_map(variant, x, v, cfg)?;
    let l = lagrangian(variant, x, v, cfg)?;
    let h = hamiltonian(variant, x, p, cfg)?;
    let state = PhaseState::velocity(x, v);
    let k = match variant {
        Variant::One => k1(&state, cfg)?,
        Variant::Two => k2(&state, cfg)?,
    };
    let step = 1e-5 * v.abs().max(1.0);
    let dl = (lagrangian(variant, x, v + step, cfg)? - lagrangian(variant, x, v - step, cfg)?) / (2.0 * step);
    Ok(LegendreResiduals {
        momentum: (dl - p).abs(),
        transform: (p * v - l - h).abs(),
        energy: (h - k).abs(),
    })
}
