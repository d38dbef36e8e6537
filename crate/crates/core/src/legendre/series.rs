//! Taylor coefficients of `H(x, p; α)` in `α` at fixed `(x, p)`, extracted
//! numerically so the printed first-order Hamiltonians can be audited.

use serde::Serialize;

use crate::dynamics::hamiltonian;
use crate::error::{Error, Result};
use crate::model::{SystemConfig, Variant};

/// Largest sample `α₀`; the ladder is `α₀·2^{−j}`, `j = 0..LEVELS`.
const ALPHA0: f64 = 1e-2;
const LEVELS: usize = 7;
/// Accept a coefficient when the last two diagonal Richardson entries agree
/// to this relative tolerance.
const ACCEPT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesInAlpha {
    /// `c_0 .. c_K` with `H = Σ c_k α^k`.
    pub coefficients: Vec<f64>,
    /// Richardson error estimate per coefficient (zero for `c_0`).
    pub error_estimates: Vec<f64>,
    pub order: usize,
}

/// Richardson tableau on a sequence whose error expands in powers of `h²`
/// with `h` halving between entries. Returns the extrapolated value and the
/// difference of the last two diagonal entries.
fn richardson(seq: &[f64]) -> (f64, f64) {
    let n = seq.len();
    let mut table = vec![seq.to_vec()];
    for level in 1..n {
        let prev = &table[level - 1];
        let factor = 4f64.powi(level as i32) - 1.0;
        let row: Vec<f64> = (1..prev.len()).map(|j| prev[j] + (prev[j] - prev[j - 1]) / factor).collect();
        table.push(row);
    }
    let best = table[n - 1][0];
    let prev = *table[n - 2].last().unwrap();
    (best, (best - prev).abs())
}

/// Expand the chosen Hamiltonian in powers of `α` up to `order`.
///
/// Uses the even and odd parts of `α ↦ H(α)` on a halving ladder of `α`;
/// after removing lower coefficients, `part(h)/h^k = c_k + c_{k+2} h² + …`
/// which Richardson extrapolation takes to `h → 0`. The `α` field of `cfg`
/// is ignored.
pub fn expand_in_alpha(variant: Variant, x: f64, p: f64, order: usize, cfg: &SystemConfig) -> Result<SeriesInAlpha> {
    if order < 1 {
        return Err(Error::InvalidParameter("series order must be at least 1".into()));
    }
    let eval = |alpha: f64| {
        hamiltonian(variant, x, p, &cfg.with_alpha(alpha))
            .map_err(|e| Error::Convergence(format!("series sample at alpha = {alpha}: {e}")))
    };
    let c0 = eval(0.0)?;
    let steps: Vec<f64> = (0..LEVELS).map(|j| ALPHA0 / 2f64.powi(j as i32)).collect();
    let mut even = Vec::with_capacity(LEVELS);
    let mut odd = Vec::with_capacity(LEVELS);
    for &h in &steps {
        let (fp, fm) = (eval(h)?, eval(-h)?);
        even.push(0.5 * (fp + fm));
        odd.push(0.5 * (fp - fm));
    }

    let mut coefficients = vec![c0];
    let mut error_estimates = vec![0.0];
    for k in 1..=order {
        let part = if k % 2 == 0 { &even } else { &odd };
        let seq: Vec<f64> = steps
            .iter()
            .zip(part)
            .map(|(&h, &value)| {
                let lower: f64 = (k % 2..k).step_by(2).map(|i| coefficients[i] * h.powi(i as i32)).sum();
                (value - lower) / h.powi(k as i32)
            })
            .collect();
        let (ck, err) = richardson(&seq);
        if !(ck.is_finite() && err <= ACCEPT * ck.abs().max(1.0)) {
            return Err(Error::Convergence(format!(
                "alpha-series coefficient c_{k} did not converge (estimate {ck}, error {err})"
            )));
        }
        coefficients.push(ck);
        error_estimates.push(err);
    }
    Ok(SeriesInAlpha { coefficients, error_estimates, order })
}

/// First-order coefficient as printed with the truncated Hamiltonians:
/// `19p⁴/48m³` for variant 1 and `p²U/m² − 2U²/m` for variant 2.
pub fn paper_c1(variant: Variant, x: f64, p: f64, cfg: &SystemConfig) -> f64 {
    let m = cfg.m;
    match variant {
        Variant::One => 19.0 * p.powi(4) / (48.0 * m.powi(3)),
        Variant::Two => {
            let u = cfg.potential(x);
            p * p * u / (m * m) - 2.0 * u * u / m
        }
    }
}

/// Extracted coefficients side by side with the printed first-order term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub variant: u8,
    pub x: f64,
    pub p: f64,
    pub c: Vec<f64>,
    pub paper_c1: f64,
    /// `c[1] − paper_c1`.
    pub discrepancy: f64,
}

impl SeriesReport {
    pub fn new(variant: Variant, x: f64, p: f64, order: usize, cfg: &SystemConfig) -> Result<Self> {
        let series = expand_in_alpha(variant, x, p, order, cfg)?;
        let printed = paper_c1(variant, x, p, cfg);
        Ok(SeriesReport {
            variant: variant.index(),
            x,
            p,
            discrepancy: series.coefficients[1] - printed,
            c: series.coefficients,
            paper_c1: printed,
        })
    }
}
