//! Cross-checks of the library against independent constructions.

mod common;

use ambiquant::dynamics::{conservation_drift, integrate, ConstantOfMotion, FlowVariant, Integrator};
use ambiquant::fock::{p4, u_squared, w1, w2, weyl_p2u};
use ambiquant::legendre::{expand_in_alpha, lagrangian, SeriesReport};
use ambiquant::model::{k1, k2, PhaseState, SystemConfig, Variant};
use common::{lagrangian_from_constant, LadderPoly};
use num_complex::Complex64;

#[test]
fn gauss_legendre_integrates_polynomials() {
    let v = common::integrate(|x| x.powi(7) - 3.0 * x * x, -1.0, 2.0, 2, 8);
    let exact = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0);
    assert!((v - exact).abs() < 1e-12);
}

#[test]
fn lagrangians_follow_from_constants_by_quadrature() {
    for alpha in [-0.5, -0.1, 0.1, 0.25] {
        let cfg = SystemConfig::harmonic(1.0, 1.0, alpha);
        let vmax = if alpha > 0.0 { (0.5 / alpha).sqrt().min(1.8) } else { 1.8 };
        for i in 0..7 {
            let x = -1.5 + 0.5 * i as f64;
            for j in 0..9 {
                let v = -vmax + 2.0 * vmax * j as f64 / 8.0;
                for variant in Variant::ALL {
                    let k = |s: f64| {
                        let st = PhaseState::velocity(x, s);
                        match variant {
                            Variant::One => k1(&st, &cfg).unwrap(),
                            Variant::Two => k2(&st, &cfg).unwrap(),
                        }
                    };
                    let oracle = lagrangian_from_constant(k, v);
                    let direct = lagrangian(variant, x, v, &cfg).unwrap();
                    assert!((oracle - direct).abs() < 1e-8, "{variant:?} a={alpha} x={x} v={v}: {oracle} vs {direct}");
                }
            }
        }
    }
}

fn ladder_ops(cfg: &SystemConfig) -> (LadderPoly, LadderPoly) {
    let omega = cfg.potential.omega().unwrap();
    let sx = (cfg.hbar / (2.0 * cfg.m * omega)).sqrt();
    let sp = (cfg.m * cfg.hbar * omega / 2.0).sqrt();
    (LadderPoly::position(sx), LadderPoly::momentum(sp))
}

fn weyl_oracle(cfg: &SystemConfig) -> LadderPoly {
    let (x, p) = ladder_ops(cfg);
    let omega = cfg.potential.omega().unwrap();
    let orderings: [[&LadderPoly; 4]; 6] = [
        [&x, &x, &p, &p],
        [&p, &p, &x, &x],
        [&x, &p, &x, &p],
        [&p, &x, &p, &x],
        [&x, &p, &p, &x],
        [&p, &x, &x, &p],
    ];
    let sum = orderings
        .iter()
        .map(|f| LadderPoly::product(f))
        .reduce(|a, b| a.plus(&b))
        .unwrap();
    sum.scale(cfg.m * omega * omega / 12.0)
}

#[test]
fn weyl_operator_matches_ladder_expansion() {
    let cfg = SystemConfig { hbar: 0.8, ..SystemConfig::harmonic(1.3, 1.7, 0.0) };
    let n = 20;
    let op = weyl_p2u(n, &cfg).unwrap();
    let oracle = weyl_oracle(&cfg);
    for i in 0..n {
        for j in 0..n {
            let d = (op.get(i, j) - oracle.element(i, j)).norm();
            assert!(d < 1e-12, "({i},{j}) differs by {d}");
        }
    }
    // ground state in natural units: (2n^2 + 2n + 1)/8 at n = 0
    let unit = SystemConfig::harmonic(1.0, 1.0, 0.0);
    assert!((weyl_oracle(&unit).element(0, 0) - Complex64::new(0.125, 0.0)).norm() < 1e-15);
    assert!((weyl_p2u(8, &unit).unwrap().get(0, 0).re - 0.125).abs() < 1e-15);
}

#[test]
fn quartic_operators_match_ladder_expansion() {
    let cfg = SystemConfig { hbar: 1.4, ..SystemConfig::harmonic(0.9, 1.1, 0.0) };
    let (x, p) = ladder_ops(&cfg);
    let omega: f64 = 1.1;
    let n = 16;
    let p4_oracle = LadderPoly::product(&[&p, &p, &p, &p]);
    let u2_oracle = LadderPoly::product(&[&x, &x, &x, &x]).scale((0.5 * 0.9 * omega * omega).powi(2));
    let alpha = 0.37;
    let w1_oracle = p4_oracle.scale(alpha * 19.0 / (48.0 * 0.9f64.powi(3)));
    let w2_oracle = weyl_oracle(&cfg).scale(alpha / 0.81).plus(&u2_oracle.scale(-2.0 * alpha / 0.9));
    let pairs = [
        (p4(n, &cfg).unwrap(), &p4_oracle),
        (u_squared(n, &cfg).unwrap(), &u2_oracle),
        (w1(n, &cfg, alpha).unwrap(), &w1_oracle),
        (w2(n, &cfg, alpha).unwrap(), &w2_oracle),
    ];
    for (op, oracle) in &pairs {
        for i in 0..n {
            for j in 0..n {
                let d = (op.get(i, j) - oracle.element(i, j)).norm();
                assert!(d < 1e-11, "{} ({i},{j}) differs by {d}", op.label);
            }
        }
    }
}

#[test]
fn rk4_drift_shrinks_with_fourth_power_of_step() {
    let cfg = SystemConfig::harmonic(1.0, 1.0, -0.1);
    let drift = |dt: f64| {
        let traj = integrate(FlowVariant::Newtonian, PhaseState::velocity(1.0, 0.0), 10.0, &cfg, Integrator::Rk4 { dt })
            .unwrap();
        conservation_drift(&traj, ConstantOfMotion::K1, &cfg).unwrap()
    };
    let ratio = drift(4e-3) / drift(2e-3);
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn first_order_coefficients_match_desk_expansion() {
    // ln cosh y = y^2/2 - y^4/12 + ... gives c1 = -p^4/(12 m^3) for the first
    // Hamiltonian; expanding both exponentials gives c1 = p^2 U/m^2 - U^2/m
    // for the second.
    let cfg = SystemConfig::harmonic(1.3, 0.9, 0.0);
    for (x, p) in [(0.0, 1.0), (0.4, -0.8), (-1.1, 1.6), (0.9, 0.2)] {
        let s1 = expand_in_alpha(Variant::One, x, p, 2, &cfg).unwrap();
        let oracle1 = -p.powi(4) / (12.0 * 1.3f64.powi(3));
        assert!((s1.coefficients[1] - oracle1).abs() < 1e-9, "{} vs {oracle1}", s1.coefficients[1]);
        // next term of ln cosh: y^6/45, so c2 = p^6/(45 m^5)
        let c2 = p.powi(6) / (45.0 * 1.3f64.powi(5));
        assert!((s1.coefficients[2] - c2).abs() < 1e-6, "{} vs {c2}", s1.coefficients[2]);

        let u = cfg.potential(x);
        let s2 = expand_in_alpha(Variant::Two, x, p, 1, &cfg).unwrap();
        let oracle2 = p * p * u / (1.3 * 1.3) - u * u / 1.3;
        assert!((s2.coefficients[1] - oracle2).abs() < 1e-9);
    }
    // at (x = 0, p = 1, m = 1) the printed 19/48 and the expansion's -1/12 differ
    let unit = SystemConfig::harmonic(1.0, 1.0, 0.0);
    let r = SeriesReport::new(Variant::One, 0.0, 1.0, 1, &unit).unwrap();
    assert!((r.c[1] + 1.0 / 12.0).abs() < 1e-10);
    assert!((r.discrepancy - (-1.0 / 12.0 - 19.0 / 48.0)).abs() < 1e-10);
}

#[test]
fn high_precision_reference_values() {
    // references evaluated with 40-digit arithmetic; two ulps allowed
    let cfg = SystemConfig::harmonic(1.0, 1.0, 0.25);
    let p = ambiquant::legendre::momentum_map(Variant::One, 0.0, 1.0, &cfg).unwrap();
    assert!((p - 1.098_612_288_668_109_7).abs() < 5e-16, "{p}");
    let h = ambiquant::dynamics::hamiltonian1(0.0, 1.0, &cfg).unwrap();
    assert!((h - 0.480_458_027_833_110_1).abs() < 5e-16, "{h}");
}
