//! Harmonic-oscillator number basis: ladder operators, `x̂`, `p̂`, the
//! unperturbed Hamiltonian and the two quartic perturbations.
//!
//! Composite operators (`p̂⁴`, the Weyl-ordered `p²U`, `Û²`) are multiplied
//! out in a basis padded by [`PAD`] levels and then cropped, so every entry
//! of the returned `N × N` block equals the infinite-dimensional matrix
//! element. Only `a`, `a†`, `x̂`, `p̂` themselves carry truncation artifacts.

mod perturb;

pub use perturb::{
    ambiguity_report, paper_closed_forms, perturb, AmbiguityReport, AmbiguityRow, PaperClosedForms,
    PerturbationResult,
};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen::jacobi_eigenvalues;
use crate::error::{Error, Result};
use crate::model::{Potential, SystemConfig};

/// Extra levels used while forming products of up to four ladder factors.
pub const PAD: usize = 4;

/// Smallest basis that holds every `n ± 4` coupling of level 0 plus a margin.
pub const MIN_QUARTIC_DIM: usize = 6;

/// Dense operator on the first `dim` number states.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub dim: usize,
    pub entries: DMatrix<Complex64>,
    pub label: String,
    /// Strength `α` when this operator is a perturbation proportional to it.
    pub coupling: Option<f64>,
}

impl FockOperator {
    pub fn new(entries: DMatrix<Complex64>, label: impl Into<String>) -> Self {
        FockOperator {
            dim: entries.nrows(),
            entries,
            label: label.into(),
            coupling: None,
        }
    }

    fn from_real(entries: DMatrix<f64>, label: impl Into<String>) -> Self {
        Self::new(entries.map(|v| Complex64::new(v, 0.0)), label)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.entries[(i, i)].re).collect()
    }

    /// `max |M − M†|` entrywise.
    pub fn hermiticity_residual(&self) -> f64 {
        let adj = self.entries.adjoint();
        (&self.entries - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imaginary(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn product(&self, other: &FockOperator, label: impl Into<String>) -> FockOperator {
        FockOperator::new(&self.entries * &other.entries, label)
    }

    pub fn plus(&self, other: &FockOperator, label: impl Into<String>) -> FockOperator {
        FockOperator::new(&self.entries + &other.entries, label)
    }

    pub fn scaled(&self, factor: f64, label: impl Into<String>) -> FockOperator {
        FockOperator::new(self.entries.map(|z| z * factor), label)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &FockOperator) -> FockOperator {
        let ab = &self.entries * &other.entries;
        let ba = &other.entries * &self.entries;
        FockOperator::new(ab - ba, format!("[{}, {}]", self.label, other.label))
    }

    fn cropped(&self, dim: usize) -> FockOperator {
        FockOperator {
            dim,
            entries: self.entries.view((0, 0), (dim, dim)).into_owned(),
            label: self.label.clone(),
            coupling: self.coupling,
        }
    }
}

fn harmonic_omega(cfg: &SystemConfig) -> Result<f64> {
    cfg.validate()?;
    match cfg.potential {
        Potential::Harmonic { omega } => Ok(omega),
        Potential::Polynomial { .. } => {
            Err(Error::InvalidParameter("quantum operators need a harmonic potential".into()))
        }
    }
}

fn check_dim(n_basis: usize, min: usize) -> Result<()> {
    if n_basis < min {
        return Err(Error::InvalidParameter(format!("basis size {n_basis} below minimum {min}")));
    }
    Ok(())
}

/// Annihilation `a` (`a|n⟩ = √n |n−1⟩`) and creation `a†` on `N` levels.
pub fn ladder(n_basis: usize) -> Result<(FockOperator, FockOperator)> {
    check_dim(n_basis, 2)?;
    let a = DMatrix::from_fn(n_basis, n_basis, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 });
    let adag = a.transpose();
    Ok((FockOperator::from_real(a, "a"), FockOperator::from_real(adag, "a+")))
}

/// `x̂ = √(ħ/2mω)(a† + a)` and `p̂ = i√(mħω/2)(a† − a)`.
pub fn position_momentum(n_basis: usize, cfg: &SystemConfig) -> Result<(FockOperator, FockOperator)> {
    let omega = harmonic_omega(cfg)?;
    let (a, adag) = ladder(n_basis)?;
    let (m, hbar) = (cfg.m, cfg.hbar);
    let x_scale = (hbar / (2.0 * m * omega)).sqrt();
    let p_scale = (m * hbar * omega / 2.0).sqrt();
    let x = (&adag.entries + &a.entries).map(|z| z * x_scale);
    let p = (&adag.entries - &a.entries).map(|z| z * Complex64::new(0.0, p_scale));
    Ok((FockOperator::new(x, "x"), FockOperator::new(p, "p")))
}

/// `Ĥ₀ = ħω(a†a + ½)`.
pub fn h0(n_basis: usize, cfg: &SystemConfig) -> Result<FockOperator> {
    let omega = harmonic_omega(cfg)?;
    check_dim(n_basis, 1)?;
    let diag = DMatrix::from_fn(n_basis, n_basis, |i, j| {
        if i == j {
            cfg.hbar * omega * (i as f64 + 0.5)
        } else {
            0.0
        }
    });
    Ok(FockOperator::from_real(diag, "H0"))
}

/// Unperturbed level `E_n⁰ = ħω(n + ½)`.
pub fn unperturbed_energy(n: usize, cfg: &SystemConfig) -> Result<f64> {
    Ok(cfg.hbar * harmonic_omega(cfg)? * (n as f64 + 0.5))
}

/// `p̂⁴`, exact on all `N × N` entries.
pub fn p4(n_basis: usize, cfg: &SystemConfig) -> Result<FockOperator> {
    check_dim(n_basis, 1)?;
    let (_, p) = position_momentum(n_basis + PAD, cfg)?;
    let p2 = p.product(&p, "p^2");
    Ok(p2.product(&p2, "p^4").cropped(n_basis))
}

/// `x̂⁴`, exact on all `N × N` entries.
pub fn x4(n_basis: usize, cfg: &SystemConfig) -> Result<FockOperator> {
    check_dim(n_basis, 1)?;
    let (x, _) = position_momentum(n_basis + PAD, cfg)?;
    let x2 = x.product(&x, "x^2");
    Ok(x2.product(&x2, "x^4").cropped(n_basis))
}

/// `Û² = (mω²x̂²/2)(mω²x̂²/2)`.
pub fn u_squared(n_basis: usize, cfg: &SystemConfig) -> Result<FockOperator> {
    let omega = harmonic_omega(cfg)?;
    let (x, _) = position_momentum(n_basis + PAD, cfg)?;
    let u = x.product(&x, "x^2").scaled(0.5 * cfg.m * omega * omega, "U");
    Ok(u.product(&u, "U^2").cropped(n_basis))
}

/// `Ŵ₁ = α·19p̂⁴/(48m³)`.
pub fn w1(n_basis: usize, cfg: &SystemConfig, alpha: f64) -> Result<FockOperator> {
    check_dim(n_basis, MIN_QUARTIC_DIM)?;
    let factor = alpha * 19.0 / (48.0 * cfg.m.powi(3));
    let mut op = p4(n_basis, cfg)?.scaled(factor, "W1");
    op.coupling = Some(alpha);
    Ok(op)
}

/// Weyl-symmetrized `p²U(x)` for the harmonic potential:
/// `(mω²/12)[x²p² + p²x² + xpxp + pxpx + xp²x + px²p]`.
pub fn weyl_p2u(n_basis: usize, cfg: &SystemConfig) -> Result<FockOperator> {
    check_dim(n_basis, MIN_QUARTIC_DIM)?;
    let omega = harmonic_omega(cfg)?;
    let (x, p) = position_momentum(n_basis + PAD, cfg)?;
    let xx = x.product(&x, "x^2");
    let pp = p.product(&p, "p^2");
    let xp = x.product(&p, "xp");
    let px = p.product(&x, "px");
    let terms = [
        &xx.entries * &pp.entries,
        &pp.entries * &xx.entries,
        &xp.entries * &xp.entries,
        &px.entries * &px.entries,
        &x.entries * &pp.entries * &x.entries,
        &p.entries * &xx.entries * &p.entries,
    ];
    let sum = terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc + t);
    let scale = cfg.m * omega * omega / 12.0;
    Ok(FockOperator::new(sum.map(|z| z * scale), "weyl(p^2 U)").cropped(n_basis))
}

/// `Ŵ₂ = α[weyl(p²U)/m² − (2/m)Û²]`.
pub fn w2(n_basis: usize, cfg: &SystemConfig, alpha: f64) -> Result<FockOperator> {
    check_dim(n_basis, MIN_QUARTIC_DIM)?;
    let m = cfg.m;
    let kinetic = weyl_p2u(n_basis, cfg)?.scaled(alpha / (m * m), "");
    let potential = u_squared(n_basis, cfg)?.scaled(-2.0 * alpha / m, "");
    let mut op = kinetic.plus(&potential, "W2");
    op.coupling = Some(alpha);
    Ok(op)
}

/// Eigenvalues of a Hermitian operator, ascending.
///
/// Real operators go straight to the Jacobi solver. A complex Hermitian
/// `A + iB` is embedded as the real symmetric `[[A, −B], [B, A]]`, whose
/// spectrum is that of the original with every eigenvalue doubled.
pub fn exact_diag(op: &FockOperator) -> Result<Vec<f64>> {
    let n = op.dim;
    let scale = op.entries.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    if op.hermiticity_residual() > 1e-10 * scale {
        return Err(Error::InvalidParameter(format!("operator {} is not Hermitian", op.label)));
    }
    if op.max_imaginary() == 0.0 {
        return jacobi_eigenvalues(&op.entries.map(|z| z.re));
    }
    let embedded = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = op.entries[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let doubled = jacobi_eigenvalues(&embedded)?;
    Ok(doubled.into_iter().step_by(2).collect())
}
