use ambiquant::dynamics::{flow_equivalence, integrate, ConstantOfMotion, FlowVariant};
use ambiquant::fock::{ambiguity_report, AmbiguityReport, AmbiguityRow};
use ambiquant::legendre::{momentum_map, SeriesReport};
use ambiquant::model::{Chart, PhaseState};
use ambiquant::selftest;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{csv, json, num, Format};
use crate::settings::Settings;

fn initial_state(s: &Settings) -> CliResult<PhaseState> {
    let cfg = &s.system;
    Ok(match s.flow.chart() {
        Chart::Velocity => PhaseState::velocity(s.x0, s.v0),
        Chart::Momentum(v) => PhaseState::momentum(v, s.x0, momentum_map(v, s.x0, s.v0, cfg)?),
    })
}

/// Trajectory of the chosen flow from `(x0, v0)`.
pub fn simulate(s: &Settings, format: Format) -> CliResult<String> {
    let traj = integrate(s.flow, initial_state(s)?, s.t_end, &s.system, s.integrator())?;
    let variant = match traj.chart() {
        Chart::Velocity => None,
        Chart::Momentum(v) => Some(v.index()),
    };
    match (format, variant) {
        (Format::Csv, None) => Ok(csv(
            &["t", "x", "v"],
            traj.samples.iter().map(|p| vec![num(p.t), num(p.state.x), num(p.state.w)]),
        )),
        (Format::Csv, Some(i)) => Ok(csv(
            &["t", "x", "p", "variant"],
            traj.samples.iter().map(|p| vec![num(p.t), num(p.state.x), num(p.state.w), i.to_string()]),
        )),
        (Format::Json, None) => json(
            &traj.samples.iter().map(|p| json!({"t": p.t, "x": p.state.x, "v": p.state.w})).collect::<Vec<_>>(),
        ),
        (Format::Json, Some(i)) => json(
            &traj
                .samples
                .iter()
                .map(|p| json!({"t": p.t, "x": p.state.x, "p": p.state.w, "variant": i}))
                .collect::<Vec<_>>(),
        ),
    }
}

/// Both constants along the Newtonian flow, with the larger of their
/// relative deviations from `t = 0`.
pub fn conserve(s: &Settings, format: Format) -> CliResult<String> {
    let cfg = &s.system;
    let traj = integrate(FlowVariant::Newtonian, PhaseState::velocity(s.x0, s.v0), s.t_end, cfg, s.integrator())?;
    let values = traj
        .samples
        .iter()
        .map(|p| Ok((p.t, ConstantOfMotion::K1.eval(&p.state, cfg)?, ConstantOfMotion::K2.eval(&p.state, cfg)?)))
        .collect::<ambiquant::Result<Vec<_>>>()?;
    let (_, k1_0, k2_0) = values[0];
    let rel = |k: f64, k0: f64| (k - k0).abs() / k0.abs().max(1e-12);
    let rows = values.iter().map(|&(t, k1, k2)| (t, k1, k2, rel(k1, k1_0).max(rel(k2, k2_0))));
    match format {
        Format::Csv => Ok(csv(&["t", "K1", "K2", "drift"], rows.map(|(t, a, b, d)| vec![num(t), num(a), num(b), num(d)]))),
        Format::Json => json(&rows.map(|(t, a, b, d)| json!({"t": t, "K1": a, "K2": b, "drift": d})).collect::<Vec<_>>()),
    }
}

pub fn equivalence(s: &Settings, format: Format) -> CliResult<String> {
    let report = flow_equivalence(PhaseState::velocity(s.x0, s.v0), s.t_end, &s.system, s.integrator())?;
    match format {
        Format::Csv => Ok(csv(
            &["a", "b", "max_deviation"],
            report.pairs.iter().map(|p| vec![p.a.name().into(), p.b.name().into(), num(p.max_deviation)]),
        )),
        Format::Json => json(&report),
    }
}

pub fn expand(s: &Settings, format: Format) -> CliResult<String> {
    let report = SeriesReport::new(s.variant, s.x, s.p, s.order, &s.system)?;
    match format {
        Format::Csv => {
            let mut header = vec!["variant".to_string(), "x".into(), "p".into()];
            header.extend((0..report.c.len()).map(|k| format!("c{k}")));
            header.extend(["paper_c1".into(), "discrepancy".into()]);
            let mut row = vec![report.variant.to_string(), num(report.x), num(report.p)];
            row.extend(report.c.iter().map(|&c| num(c)));
            row.extend([num(report.paper_c1), num(report.discrepancy)]);
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok(csv(&header, [row]))
        }
        Format::Json => json(&report),
    }
}

fn table(rows: &[AmbiguityRow], report: &AmbiguityReport, format: Format) -> CliResult<String> {
    match format {
        Format::Csv => Ok(csv(
            &AmbiguityReport::COLUMNS,
            rows.iter().map(|r| {
                let mut cells = vec![r.n.to_string()];
                cells.extend(
                    [r.E0, r.E1_w1_matrix, r.E1_w1_paper, r.E1_w2_matrix, r.E1_w2_paper, r.E_exact_w1, r.E_exact_w2, r.delta]
                        .map(num),
                );
                cells
            }),
        )),
        Format::Json => json(&json!({"alpha": report.alpha, "n_basis": report.n_basis, "rows": rows})),
    }
}

/// The ambiguity table restricted to level `n`.
pub fn perturb(s: &Settings, format: Format) -> CliResult<String> {
    let report = ambiguity_report(s.n, s.n_basis, s.system.alpha, &s.system)?;
    table(&report.rows[s.n..], &report, format)
}

pub fn ambiguity(s: &Settings, format: Format) -> CliResult<String> {
    let report = ambiguity_report(s.n_max, s.n_basis, s.system.alpha, &s.system)?;
    table(&report.rows, &report, format)
}

/// Table of checks; the output is written even when a check fails.
pub fn selftest(format: Format) -> (CliResult<String>, Option<CliError>) {
    let checks = selftest::run_all();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match format {
        Format::Csv => Ok(csv(
            &["status", "check", "value", "threshold"],
            checks.iter().map(|c| {
                vec![
                    if c.passed { "PASS" } else { "FAIL" }.into(),
                    c.name.into(),
                    num(c.value),
                    num(c.threshold),
                ]
            }),
        )),
        Format::Json => json(&checks),
    };
    let err = (failed > 0).then_some(CliError::SelftestFailed { failed, total: checks.len() });
    (text, err)
}
