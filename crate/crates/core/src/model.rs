//! The physical system: mass, dissipation parameter, potential, and the two
//! constants of motion of `m ẍ = −U'(x) (1 − α ẋ²)`.
//!
//! Every function with a removable singularity at `α = 0` takes an explicit
//! analytic branch there, and uses `ln_1p`/`exp_m1` so that the small-α
//! regime converges smoothly onto the conservative formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the potential energy `U(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Potential {
    /// `U(x) = m ω² x² / 2`.
    Harmonic { omega: f64 },
    /// `U(x) = Σ c_k x^k`, coefficients in ascending order.
    Polynomial { coeffs: Vec<f64> },
}

impl Potential {
    /// Ascending polynomial coefficients of `U` for a particle of mass `m`.
    pub fn coefficients(&self, m: f64) -> Vec<f64> {
        match self {
            Potential::Harmonic { omega } => vec![0.0, 0.0, 0.5 * m * omega * omega],
            Potential::Polynomial { coeffs } => coeffs.clone(),
        }
    }

    pub fn omega(&self) -> Option<f64> {
        match self {
            Potential::Harmonic { omega } => Some(*omega),
            Potential::Polynomial { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub m: f64,
    pub alpha: f64,
    pub hbar: f64,
    pub potential: Potential,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            m: 1.0,
            alpha: 0.0,
            hbar: 1.0,
            potential: Potential::Harmonic { omega: 1.0 },
        }
    }
}

impl SystemConfig {
    pub fn harmonic(m: f64, omega: f64, alpha: f64) -> Self {
        SystemConfig {
            m,
            alpha,
            hbar: 1.0,
            potential: Potential::Harmonic { omega },
        }
    }

    pub fn polynomial(m: f64, alpha: f64, coeffs: Vec<f64>) -> Self {
        SystemConfig {
            m,
            alpha,
            hbar: 1.0,
            potential: Potential::Polynomial { coeffs },
        }
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        SystemConfig {
            alpha,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {}", self.m)));
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite".into()));
        }
        match &self.potential {
            Potential::Harmonic { omega } if !(omega.is_finite() && *omega > 0.0) => Err(
                Error::InvalidParameter(format!("omega must be positive, got {omega}")),
            ),
            Potential::Polynomial { coeffs } if coeffs.iter().any(|c| !c.is_finite()) => Err(
                Error::InvalidParameter("polynomial coefficients must be finite".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn potential(&self, x: f64) -> f64 {
        potential_eval(&self.potential, x, self)
    }

    /// `dU/dx`.
    pub fn force_gradient(&self, x: f64) -> f64 {
        match &self.potential {
            Potential::Harmonic { omega } => self.m * omega * omega * x,
            Potential::Polynomial { coeffs } => horner(&derivative(coeffs), x),
        }
    }
}

/// Which coordinate accompanies `x` in a [`PhaseState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    Velocity,
    /// Canonical momentum of the first (`1`) or second (`2`) Hamiltonian.
    Momentum(Variant),
}

/// The two Hamiltonian formulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// Built on the logarithmic constant of motion `K¹`.
    One,
    /// Built on the exponential constant of motion `K²`.
    Two,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::One, Variant::Two];

    pub fn index(self) -> u8 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Variant::One),
            2 => Some(Variant::Two),
            _ => None,
        }
    }
}

/// A point in phase space, tagged with its chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub x: f64,
    /// Velocity or canonical momentum, depending on `chart`.
    pub w: f64,
    pub chart: Chart,
}

impl PhaseState {
    pub fn velocity(x: f64, v: f64) -> Self {
        PhaseState { x, w: v, chart: Chart::Velocity }
    }

    pub fn momentum(variant: Variant, x: f64, p: f64) -> Self {
        PhaseState { x, w: p, chart: Chart::Momentum(variant) }
    }

    fn expect_velocity(&self) -> Result<f64> {
        match self.chart {
            Chart::Velocity => Ok(self.w),
            Chart::Momentum(_) => Err(Error::domain("state is not in the velocity chart")),
        }
    }
}

pub fn potential_eval(pot: &Potential, x: f64, cfg: &SystemConfig) -> f64 {
    match pot {
        Potential::Harmonic { omega } => 0.5 * cfg.m * omega * omega * x * x,
        Potential::Polynomial { coeffs } => horner(coeffs, x),
    }
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

fn check_velocity_domain(alpha: f64, v: f64) -> Result<()> {
    if alpha > 0.0 && alpha * v * v >= 1.0 {
        return Err(Error::domain(format!(
            "alpha * v^2 = {} must be below 1 (alpha = {alpha}, v = {v})",
            alpha * v * v
        )));
    }
    Ok(())
}

/// `exp(z)` that reports overflow instead of saturating.
pub(crate) fn checked_exp(z: f64, what: &str) -> Result<f64> {
    let e = z.exp();
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::overflow(format!("exp({z}) in {what}")))
    }
}

/// `K¹ = −(m/2α) ln(1 − αv²) + U(x)`.
pub fn k1(state: &PhaseState, cfg: &SystemConfig) -> Result<f64> {
    characteristic_curve(state, cfg)
}

/// `K² = ½ m v² e^{−2αU/m} + (m/2α)(1 − e^{−2αU/m})`.
pub fn k2(state: &PhaseState, cfg: &SystemConfig) -> Result<f64> {
    let v = state.expect_velocity()?;
    let m = cfg.m;
    let u = cfg.potential(state.x);
    if cfg.alpha == 0.0 {
        return Ok(0.5 * m * v * v + u);
    }
    let z = -2.0 * cfg.alpha * u / m;
    let e = checked_exp(z, "K2")?;
    let kinetic = 0.5 * m * v * v * e;
    let k = kinetic - m / (2.0 * cfg.alpha) * z.exp_m1();
    if k.is_finite() {
        Ok(k)
    } else {
        Err(Error::overflow("K2 not representable"))
    }
}

/// Characteristic function `C(x, v)` of the constant-of-motion equation; any
/// function of it is conserved.
pub fn characteristic_curve(state: &PhaseState, cfg: &SystemConfig) -> Result<f64> {
    let v = state.expect_velocity()?;
    let m = cfg.m;
    let u = cfg.potential(state.x);
    if cfg.alpha == 0.0 {
        return Ok(0.5 * m * v * v + u);
    }
    check_velocity_domain(cfg.alpha, v)?;
    Ok(-m / (2.0 * cfg.alpha) * (-cfg.alpha * v * v).ln_1p() + u)
}

/// The function `G` with `K² = G(C)`: `G(C) = (m/2α)(1 − e^{−2αC/m})`.
pub fn k2_from_characteristic(c: f64, cfg: &SystemConfig) -> Result<f64> {
    if cfg.alpha == 0.0 {
        return Ok(c);
    }
    let z = -2.0 * cfg.alpha * c / cfg.m;
    checked_exp(z, "G(C)")?;
    Ok(-cfg.m / (2.0 * cfg.alpha) * z.exp_m1())
}

/// A fixed point `(x_c, 0)` of the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub x: f64,
    pub v: f64,
}

const ROOT_TOL: f64 = 1e-12;

/// All zeros of `U'` in `[lo, hi]`, as fixed points with `v = 0`.
///
/// Roots of a polynomial are separated by roots of its derivative, so the
/// search recurses on `U''`, `U'''`, ... to split the interval into monotone
/// pieces and bisects every sign change. Roots of even multiplicity are
/// picked up at the breakpoints. The result never depends on `α`.
pub fn critical_points(cfg: &SystemConfig, lo: f64, hi: f64) -> Result<Vec<CriticalPoint>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!("bad search interval [{lo}, {hi}]")));
    }
    let du = derivative(&cfg.potential.coefficients(cfg.m));
    Ok(polynomial_roots(&du, lo, hi)
        .into_iter()
        .map(|x| CriticalPoint { x, v: 0.0 })
        .collect())
}

fn trim(coeffs: &[f64]) -> &[f64] {
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1] == 0.0 {
        end -= 1;
    }
    &coeffs[..end]
}

pub(crate) fn polynomial_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let p = trim(coeffs);
    match p.len() {
        // identically zero: every point is a root; report none rather than a continuum
        0 | 1 => return Vec::new(),
        2 => {
            let r = -p[0] / p[1];
            return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let mut breaks = vec![lo];
    breaks.extend(polynomial_roots(&derivative(p), lo, hi));
    breaks.push(hi);

    let scale = p.iter().fold(0.0_f64, |s, c| s.max(c.abs()));
    let f = |x: f64| horner(p, x);
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots.last().is_none_or(|&last| (r - last).abs() > 10.0 * ROOT_TOL) {
            roots.push(r);
        }
    };
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa.abs() <= ROOT_TOL * scale {
            push(a, &mut roots);
        }
        if fa.signum() * fb.signum() < 0.0 && fb.abs() > ROOT_TOL * scale {
            push(bisect(&f, a, b, fa), &mut roots);
        }
    }
    if let Some(&b) = breaks.last() {
        if f(b).abs() <= ROOT_TOL * scale {
            push(b, &mut roots);
        }
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while (b - a).abs() > ROOT_TOL * (1.0 + a.abs().max(b.abs())) {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(m: f64, alpha: f64) -> SystemConfig {
        SystemConfig::polynomial(m, alpha, vec![])
    }

    #[test]
    fn potential_examples() {
        let cfg = SystemConfig::harmonic(1.0, 1.0, 0.0);
        assert_eq!(cfg.potential(0.0), 0.0);
        assert_eq!(cfg.potential(2.0), 2.0);
        let poly = SystemConfig::polynomial(1.0, 0.0, vec![0.0, 0.0, 0.5]);
        assert_eq!(poly.potential(3.0), 4.5);
    }

    #[test]
    fn k1_examples() {
        let s = PhaseState::velocity(0.0, 1.0);
        let k = k1(&s, &free(1.0, -1.0)).unwrap();
        // 40-digit reference: ln(2)/2
        assert!((k - 0.346_573_590_279_972_65).abs() < 1e-15);

        let cfg = SystemConfig::harmonic(1.0, 1.3, 0.4);
        let s = PhaseState::velocity(0.7, 0.0);
        assert_eq!(k1(&s, &cfg).unwrap(), cfg.potential(0.7));

        let s = PhaseState::velocity(0.0, 2.0);
        assert_eq!(k1(&s, &free(1.0, 0.0)).unwrap(), 2.0);
        assert!((k1(&s, &free(1.0, 1e-12)).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn k1_domain_boundary() {
        let cfg = free(1.0, 0.25);
        assert!(k1(&PhaseState::velocity(0.0, 1.999), &cfg).is_ok());
        assert!(matches!(k1(&PhaseState::velocity(0.0, 2.0), &cfg), Err(Error::Domain(_))));
        assert!(matches!(k1(&PhaseState::velocity(0.0, -3.0), &cfg), Err(Error::Domain(_))));
        // negative alpha: defined everywhere
        assert!(k1(&PhaseState::velocity(0.0, 1e3), &free(1.0, -0.25)).is_ok());
    }

    #[test]
    fn k1_rejects_momentum_chart() {
        let s = PhaseState::momentum(Variant::One, 0.0, 1.0);
        assert!(k1(&s, &free(1.0, 0.1)).is_err());
    }

    #[test]
    fn k2_examples() {
        let s = PhaseState::velocity(0.0, 1.7);
        for alpha in [-0.3, 0.0, 0.2, 5.0] {
            let cfg = SystemConfig::harmonic(2.0, 1.0, alpha);
            assert_eq!(k2(&s, &cfg).unwrap(), 0.5 * 2.0 * 1.7 * 1.7);
        }
        // v = 0, U = 1: 1 - e^{-1}
        let cfg = SystemConfig::polynomial(1.0, 0.5, vec![1.0]);
        let k = k2(&PhaseState::velocity(0.0, 0.0), &cfg).unwrap();
        assert!((k - 0.632_120_558_828_557_7).abs() < 1e-15);

        let cfg = SystemConfig::polynomial(1.0, 0.0, vec![1.0]);
        assert_eq!(k2(&PhaseState::velocity(0.0, 2.0), &cfg).unwrap(), 3.0);
    }

    #[test]
    fn k2_reports_overflow() {
        let cfg = SystemConfig::polynomial(1.0, -10.0, vec![100.0]);
        assert!(matches!(k2(&PhaseState::velocity(0.0, 1.0), &cfg), Err(Error::Overflow(_))));
    }

    #[test]
    fn k2_through_characteristic() {
        let cfg = SystemConfig::harmonic(1.0, 1.0, 0.5);
        for (x, v) in [(0.0, 0.0), (0.3, 0.9), (-1.2, -1.1), (2.0, 0.2)] {
            let s = PhaseState::velocity(x, v);
            let c = characteristic_curve(&s, &cfg).unwrap();
            assert_eq!(c, k1(&s, &cfg).unwrap());
            let g = k2_from_characteristic(c, &cfg).unwrap();
            let direct = k2(&s, &cfg).unwrap();
            assert!((g - direct).abs() <= 1e-12 * direct.abs().max(1e-300), "{g} vs {direct}");
        }
        let s = PhaseState::velocity(1.5, 0.0);
        assert_eq!(characteristic_curve(&s, &cfg).unwrap(), cfg.potential(1.5));
    }

    #[test]
    fn critical_points_examples() {
        let cfg = SystemConfig::harmonic(1.0, 2.0, 0.0);
        let cps = critical_points(&cfg, -5.0, 5.0).unwrap();
        assert_eq!(cps, vec![CriticalPoint { x: 0.0, v: 0.0 }]);

        // U = x^3/3 - x^2/2 so U' = x(x - 1)
        let cfg = SystemConfig::polynomial(1.0, 0.0, vec![0.0, 0.0, -0.5, 1.0 / 3.0]);
        let xs: Vec<f64> = critical_points(&cfg, -2.0, 3.0).unwrap().iter().map(|c| c.x).collect();
        assert_eq!(xs.len(), 2);
        assert!(xs[0].abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12, "{xs:?}");

        let other = critical_points(&cfg.with_alpha(0.3), -2.0, 3.0).unwrap();
        assert_eq!(other, critical_points(&cfg, -2.0, 3.0).unwrap());
    }

    #[test]
    fn critical_points_double_root_and_empty() {
        // U' = (x - 1)^2 = 1 - 2x + x^2
        let cfg = SystemConfig::polynomial(1.0, 0.0, vec![0.0, 1.0, -1.0, 1.0 / 3.0]);
        let xs: Vec<f64> = critical_points(&cfg, -3.0, 3.0).unwrap().iter().map(|c| c.x).collect();
        assert_eq!(xs.len(), 1);
        assert!((xs[0] - 1.0).abs() < 1e-9);

        let cfg = SystemConfig::polynomial(1.0, 0.0, vec![0.0, 1.0]);
        assert!(critical_points(&cfg, -3.0, 3.0).unwrap().is_empty());
        assert!(critical_points(&cfg, 3.0, -3.0).is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let json = r#"{ "m": 1.0, "alpha": -0.1, "hbar": 1.0, "potential": {"kind": "harmonic", "omega": 1.0} }"#;
        let cfg: SystemConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg, SystemConfig { alpha: -0.1, ..SystemConfig::default() });
        let bad = r#"{ "m": 1.0, "alpha": -0.1, "hbar": 1.0, "mass": 2, "potential": {"kind": "harmonic", "omega": 1.0} }"#;
        assert!(serde_json::from_str::<SystemConfig>(bad).is_err());
        let poly = r#"{ "m": 2.0, "alpha": 0.0, "hbar": 1.0, "potential": {"kind": "polynomial", "coeffs": [0, 1]} }"#;
        let cfg: SystemConfig = serde_json::from_str(poly).unwrap();
        assert_eq!(cfg.potential, Potential::Polynomial { coeffs: vec![0.0, 1.0] });
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        assert!(SystemConfig::default().validate().is_ok());
        assert!(SystemConfig { m: 0.0, ..Default::default() }.validate().is_err());
        assert!(SystemConfig { hbar: -1.0, ..Default::default() }.validate().is_err());
        assert!(SystemConfig { alpha: f64::NAN, ..Default::default() }.validate().is_err());
        assert!(SystemConfig::harmonic(1.0, 0.0, 0.0).validate().is_err());
    }
}
