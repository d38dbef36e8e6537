use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::{exact_diag, h0, unperturbed_energy, w1, w2, FockOperator};
use crate::error::{Error, Result};
use crate::model::SystemConfig;

/// Matrix elements below this magnitude count as structural zeros.
const SUPPORT_CUTOFF: f64 = 1e-14;

/// First-order correction to level `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationResult {
    pub n: usize,
    pub e0: f64,
    /// `⟨n|Ŵ|n⟩`.
    pub e1: f64,
    /// `e1 / α`, when the perturbation records a nonzero coupling.
    pub e1_per_alpha: Option<f64>,
    /// `⟨k|Ŵ|n⟩ / (E_n⁰ − E_k⁰)` for every `k ≠ n` with a nonzero element.
    pub state_coeffs: BTreeMap<usize, Complex64>,
}

impl PerturbationResult {
    pub fn energy(&self) -> f64 {
        self.e0 + self.e1
    }

    pub fn support(&self) -> Vec<usize> {
        self.state_coeffs.keys().copied().collect()
    }
}

/// Highest level whose `n + 4` neighbour still sits 8 levels below the cutoff.
fn check_margin(n: usize, dim: usize) -> Result<()> {
    if n + 4 + 8 > dim {
        return Err(Error::Margin { n, dim });
    }
    Ok(())
}

/// Rayleigh–Schrödinger first-order energy shift and state correction of
/// level `n` under `w`, relative to the harmonic `Ĥ₀` of `cfg`.
pub fn perturb(n: usize, w: &FockOperator, cfg: &SystemConfig) -> Result<PerturbationResult> {
    check_margin(n, w.dim)?;
    let e0 = unperturbed_energy(n, cfg)?;
    let e1 = w.get(n, n).re;
    let mut state_coeffs = BTreeMap::new();
    for k in (0..w.dim).filter(|&k| k != n) {
        let element = w.get(k, n);
        if element.norm() > SUPPORT_CUTOFF {
            let gap = e0 - unperturbed_energy(k, cfg)?;
            state_coeffs.insert(k, element / gap);
        }
    }
    let e1_per_alpha = w.coupling.filter(|&a| a != 0.0).map(|a| e1 / a);
    Ok(PerturbationResult { n, e0, e1, e1_per_alpha, state_coeffs })
}

/// The printed closed forms for the corrected levels and states, kept for
/// side-by-side comparison with the matrix results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaperClosedForms {
    pub n: usize,
    /// `ħω(n+½) + α·19ħ²ω²(4n²+4n+3)/(192m)`.
    pub energy_w1: f64,
    /// `ħω(n+½) − αħ²ω²(2n²+2n+1)/(4m)`.
    pub energy_w2: f64,
    pub a_minus4: f64,
    pub a_minus2: f64,
    pub a_plus2: f64,
    pub a_plus4: f64,
    /// State-correction coefficients keyed by target level.
    pub coeffs_w1: BTreeMap<usize, f64>,
    pub coeffs_w2: BTreeMap<usize, f64>,
}

/// Transcribe the printed energy and state-correction formulas for level `n`.
///
/// `A₋₂` and `A₋₄` are reported as zero when the target level `n − 2` or
/// `n − 4` does not exist. The `A₂` radical with an unbalanced parenthesis is
/// read as `√((n+2)(n+1))`.
pub fn paper_closed_forms(n: usize, cfg: &SystemConfig, alpha: f64) -> Result<PaperClosedForms> {
    let e0 = unperturbed_energy(n, cfg)?;
    let hw = e0 / (n as f64 + 0.5);
    let m = cfg.m;
    let k = n as f64;
    let energy_w1 = e0 + alpha * 19.0 * hw * hw / (192.0 * m) * (4.0 * k * k + 4.0 * k + 3.0);
    let energy_w2 = e0 - alpha * hw * hw / (4.0 * m) * (2.0 * k * k + 2.0 * k + 1.0);

    let a_minus4 = if n >= 4 { (k * (k - 1.0) * (k - 2.0) * (k - 3.0)).sqrt() } else { 0.0 };
    let a_minus2 = if n >= 2 {
        (k - 2.0) * ((k - 1.0) * (k + 1.0)).sqrt()
            + (k - 1.0) * (k * (k - 1.0)).sqrt()
            + (2.0 * k - 1.0) * ((k - 2.0) * (k - 1.0)).sqrt()
    } else {
        0.0
    };
    let a_plus2 = (k + 1.0) * (k * (k + 2.0)).sqrt()
        + (k + 3.0) * ((k + 1.0) * (k + 2.0)).sqrt()
        + (2.0 * k + 6.0) * ((k + 2.0) * (k + 1.0)).sqrt();
    let a_plus4 = ((k + 4.0) * (k + 3.0) * (k + 2.0) * (k + 1.0)).sqrt();

    let pref1 = alpha * 19.0 * hw / (768.0 * m);
    let pref2 = -alpha * hw / (16.0 * m);
    let mut coeffs_w1 = BTreeMap::new();
    let mut coeffs_w2 = BTreeMap::new();
    let targets = [
        (n.checked_sub(4), a_minus4, 1.0),
        (n.checked_sub(2), a_minus2, -2.0),
        (Some(n + 2), a_plus2, -2.0),
        (Some(n + 4), a_plus4, -1.0),
    ];
    for (level, amplitude, weight1) in targets {
        if let Some(level) = level {
            coeffs_w1.insert(level, pref1 * weight1 * amplitude);
            coeffs_w2.insert(level, pref2 * amplitude);
        }
    }
    Ok(PaperClosedForms {
        n,
        energy_w1,
        energy_w2,
        a_minus4,
        a_minus2,
        a_plus2,
        a_plus4,
        coeffs_w1,
        coeffs_w2,
    })
}

/// One level of the ambiguity table. Every energy column is a total level
/// energy, not a shift.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct AmbiguityRow {
    pub n: usize,
    pub E0: f64,
    pub E1_w1_matrix: f64,
    pub E1_w1_paper: f64,
    pub E1_w2_matrix: f64,
    pub E1_w2_paper: f64,
    pub E_exact_w1: f64,
    pub E_exact_w2: f64,
    /// `E1_w1_matrix − E1_w2_matrix`.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbiguityReport {
    pub alpha: f64,
    pub n_basis: usize,
    pub rows: Vec<AmbiguityRow>,
}

impl AmbiguityReport {
    pub const COLUMNS: [&'static str; 9] = [
        "n",
        "E0",
        "E1_w1_matrix",
        "E1_w1_paper",
        "E1_w2_matrix",
        "E1_w2_paper",
        "E_exact_w1",
        "E_exact_w2",
        "delta",
    ];
}

/// Levels `0..=n_max` of both quantizations: first-order energies from the
/// matrices and from the printed formulas, plus exact eigenvalues of
/// `Ĥ₀ + Ŵᵢ` in the `N`-level basis.
pub fn ambiguity_report(n_max: usize, n_basis: usize, alpha: f64, cfg: &SystemConfig) -> Result<AmbiguityReport> {
    check_margin(n_max, n_basis)?;
    let base = h0(n_basis, cfg)?;
    let w1_op = w1(n_basis, cfg, alpha)?;
    let w2_op = w2(n_basis, cfg, alpha)?;
    let exact1 = exact_diag(&base.plus(&w1_op, "H0+W1"))?;
    let exact2 = exact_diag(&base.plus(&w2_op, "H0+W2"))?;

    let rows = (0..=n_max)
        .map(|n| {
            let r1 = perturb(n, &w1_op, cfg)?;
            let r2 = perturb(n, &w2_op, cfg)?;
            let printed = paper_closed_forms(n, cfg, alpha)?;
            Ok(AmbiguityRow {
                n,
                E0: r1.e0,
                E1_w1_matrix: r1.energy(),
                E1_w1_paper: printed.energy_w1,
                E1_w2_matrix: r2.energy(),
                E1_w2_paper: printed.energy_w2,
                E_exact_w1: exact1[n],
                E_exact_w2: exact2[n],
                delta: r1.energy() - r2.energy(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AmbiguityReport { alpha, n_basis, rows })
}
