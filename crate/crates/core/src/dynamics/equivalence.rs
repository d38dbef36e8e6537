use serde::Serialize;

use super::{integrate, to_velocity, FlowVariant, Integrator, Trajectory};
use crate::error::{Error, Result};
use crate::legendre::momentum_map;
use crate::model::{Chart, PhaseState, SystemConfig, Variant};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDeviation {
    pub a: FlowVariant,
    pub b: FlowVariant,
    /// Largest Euclidean distance in `(x, v)` over the comparison grid.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub t_end: f64,
    pub pairs: Vec<PairDeviation>,
}

impl EquivalenceReport {
    pub fn worst(&self) -> f64 {
        self.pairs.iter().map(|p| p.max_deviation).fold(0.0, f64::max)
    }
}

/// Integrate all three flows from the same physical initial condition and
/// compare them in the velocity chart.
///
/// Each pair is compared on the time grid of whichever trajectory has fewer
/// samples; the other one is evaluated there by Hermite interpolation in its
/// own chart and then mapped to `(x, v)`.
pub fn flow_equivalence(
    state0_v: PhaseState,
    t_end: f64,
    cfg: &SystemConfig,
    integrator: Integrator,
) -> Result<EquivalenceReport> {
    if state0_v.chart != Chart::Velocity {
        return Err(Error::InvalidParameter("flow equivalence starts from a velocity-chart state".into()));
    }
    let start = |flow: FlowVariant| -> Result<PhaseState> {
        Ok(match flow {
            FlowVariant::Newtonian => state0_v,
            FlowVariant::Hamiltonian1 => PhaseState::momentum(
                Variant::One,
                state0_v.x,
                momentum_map(Variant::One, state0_v.x, state0_v.w, cfg)?,
            ),
            FlowVariant::Hamiltonian2 => PhaseState::momentum(
                Variant::Two,
                state0_v.x,
                momentum_map(Variant::Two, state0_v.x, state0_v.w, cfg)?,
            ),
        })
    };
    let trajectories = FlowVariant::ALL
        .iter()
        .map(|&flow| {
            let s0 = start(flow).map_err(|e| e.context(flow.name()))?;
            integrate(flow, s0, t_end, cfg, integrator)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::with_capacity(3);
    for i in 0..3 {
        for j in i + 1..3 {
            pairs.push(PairDeviation {
                a: trajectories[i].flow,
                b: trajectories[j].flow,
                max_deviation: pair_deviation(&trajectories[i], &trajectories[j], cfg)?,
            });
        }
    }
    Ok(EquivalenceReport { t_end, pairs })
}

fn pair_deviation(a: &Trajectory, b: &Trajectory, cfg: &SystemConfig) -> Result<f64> {
    let (coarse, fine) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut worst: f64 = 0.0;
    for sample in &coarse.samples {
        let other = fine
            .state_at(sample.t)
            .ok_or_else(|| Error::InvalidParameter(format!("time {} outside trajectory", sample.t)))?;
        let p = to_velocity(&sample.state, cfg).map_err(|e| e.context(coarse.flow.name()))?;
        let q = to_velocity(&other, cfg).map_err(|e| e.context(fine.flow.name()))?;
        worst = worst.max((p.x - q.x).hypot(p.w - q.w));
    }
    Ok(worst)
}
