//! The two Hamiltonians of the dissipative system and their exact gradients.
//!
//! `H₁ = (m/α) ln cosh(p√α/m) + U` for `α > 0`, continued to
//! `H₁ = (m/α) ln cos(p√−α/m) + U` for `α < 0`.
//! `H₂ = (p²/2m) e^{2αU/m} + (m/2α)(1 − e^{−2αU/m})`.

use std::f64::consts::{FRAC_PI_2, LN_2};

use crate::error::{Error, Result};
use crate::model::{checked_exp, SystemConfig, Variant};

/// `ln cosh t` without cancellation near zero or overflow for large `|t|`.
pub(crate) fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    if a < 1.0 {
        let s = (0.5 * a).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        a + (-2.0 * a).exp().ln_1p() - LN_2
    }
}

/// `ln cos φ` for `|φ| < π/2`.
pub(crate) fn ln_cos(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    (-2.0 * s * s).ln_1p()
}

/// Phase `p√|α|/m` of the first Hamiltonian, checked against the `α < 0`
/// chart boundary `|φ| < π/2`.
fn phase1(p: f64, cfg: &SystemConfig) -> Result<f64> {
    let phi = p * cfg.alpha.abs().sqrt() / cfg.m;
    if cfg.alpha < 0.0 && phi.abs() >= FRAC_PI_2 {
        return Err(Error::domain(format!(
            "|p| sqrt(-alpha)/m = {} leaves the chart (must be < pi/2)",
            phi.abs()
        )));
    }
    Ok(phi)
}

pub fn hamiltonian1(x: f64, p: f64, cfg: &SystemConfig) -> Result<f64> {
    let u = cfg.potential(x);
    let (m, alpha) = (cfg.m, cfg.alpha);
    if alpha == 0.0 {
        return Ok(p * p / (2.0 * m) + u);
    }
    let phi = phase1(p, cfg)?;
    let kinetic = if alpha > 0.0 { m / alpha * ln_cosh(phi) } else { m / alpha * ln_cos(phi) };
    Ok(kinetic + u)
}

/// `(∂H₁/∂p, −∂H₁/∂x)`.
pub fn hamilton1_rhs(x: f64, p: f64, cfg: &SystemConfig) -> Result<[f64; 2]> {
    let alpha = cfg.alpha;
    let xdot = if alpha == 0.0 {
        p / cfg.m
    } else {
        let phi = phase1(p, cfg)?;
        let root = alpha.abs().sqrt();
        if alpha > 0.0 {
            phi.tanh() / root
        } else {
            phi.tan() / root
        }
    };
    Ok([xdot, -cfg.force_gradient(x)])
}

pub fn hamiltonian2(x: f64, p: f64, cfg: &SystemConfig) -> Result<f64> {
    let u = cfg.potential(x);
    let (m, alpha) = (cfg.m, cfg.alpha);
    if alpha == 0.0 {
        return Ok(p * p / (2.0 * m) + u);
    }
    let z = 2.0 * alpha * u / m;
    let grow = checked_exp(z, "H2")?;
    checked_exp(-z, "H2")?;
    let h = p * p / (2.0 * m) * grow - m / (2.0 * alpha) * (-z).exp_m1();
    if h.is_finite() {
        Ok(h)
    } else {
        Err(Error::overflow("H2 not representable"))
    }
}

/// `(∂H₂/∂p, −∂H₂/∂x)` with
/// `∂H₂/∂x = U'(x) [ (α p²/m²) e^{2αU/m} + e^{−2αU/m} ]`.
pub fn hamilton2_rhs(x: f64, p: f64, cfg: &SystemConfig) -> Result<[f64; 2]> {
    let (m, alpha) = (cfg.m, cfg.alpha);
    let du = cfg.force_gradient(x);
    if alpha == 0.0 {
        return Ok([p / m, -du]);
    }
    let z = 2.0 * alpha * cfg.potential(x) / m;
    let grow = checked_exp(z, "dH2/dp")?;
    let decay = checked_exp(-z, "dH2/dx")?;
    let dhdx = du * (alpha * p * p / (m * m) * grow + decay);
    if !dhdx.is_finite() {
        return Err(Error::overflow("dH2/dx not representable"));
    }
    Ok([p / m * grow, -dhdx])
}

pub fn hamiltonian(variant: Variant, x: f64, p: f64, cfg: &SystemConfig) -> Result<f64> {
    match variant {
        Variant::One => hamiltonian1(x, p, cfg),
        Variant::Two => hamiltonian2(x, p, cfg),
    }
}

pub fn hamilton_rhs(variant: Variant, x: f64, p: f64, cfg: &SystemConfig) -> Result<[f64; 2]> {
    match variant {
        Variant::One => hamilton1_rhs(x, p, cfg),
        Variant::Two => hamilton2_rhs(x, p, cfg),
    }
}
