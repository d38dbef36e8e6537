//! Newtonian and Hamiltonian flows of the dissipative system, integration,
//! and first-integral checks.

mod equivalence;
mod hamiltonian;
mod integrator;
mod trajectory;

use serde::{Deserialize, Serialize};

pub use equivalence::{flow_equivalence, EquivalenceReport, PairDeviation};
pub use hamiltonian::{
    hamilton1_rhs, hamilton2_rhs, hamilton_rhs, hamiltonian, hamiltonian1, hamiltonian2,
};
pub use integrator::Integrator;
pub use trajectory::{Sample, Trajectory};

use crate::error::{Error, Result};
use crate::legendre::inverse_momentum_map;
use crate::model::{k1, k2, Chart, PhaseState, SystemConfig, Variant};

/// Which vector field drives a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowVariant {
    /// `ẋ = v, v̇ = −U'(x)(1 − αv²)/m` in the velocity chart.
    Newtonian,
    Hamiltonian1,
    Hamiltonian2,
}

impl FlowVariant {
    pub const ALL: [FlowVariant; 3] =
        [FlowVariant::Newtonian, FlowVariant::Hamiltonian1, FlowVariant::Hamiltonian2];

    pub fn chart(self) -> Chart {
        match self {
            FlowVariant::Newtonian => Chart::Velocity,
            FlowVariant::Hamiltonian1 => Chart::Momentum(Variant::One),
            FlowVariant::Hamiltonian2 => Chart::Momentum(Variant::Two),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FlowVariant::Newtonian => "newtonian",
            FlowVariant::Hamiltonian1 => "hamiltonian1",
            FlowVariant::Hamiltonian2 => "hamiltonian2",
        }
    }

    pub fn rhs(self, state: [f64; 2], cfg: &SystemConfig) -> Result<[f64; 2]> {
        let [x, w] = state;
        match self {
            FlowVariant::Newtonian => {
                if cfg.alpha > 0.0 && cfg.alpha * w * w >= 1.0 {
                    return Err(Error::domain(format!("alpha * v^2 = {} >= 1", cfg.alpha * w * w)));
                }
                eom_rhs(&PhaseState::velocity(x, w), cfg)
            }
            FlowVariant::Hamiltonian1 => hamilton1_rhs(x, w, cfg),
            FlowVariant::Hamiltonian2 => hamilton2_rhs(x, w, cfg),
        }
    }
}

/// `(dx/dt, dv/dt) = (v, −U'(x)(1 − αv²)/m)`.
pub fn eom_rhs(state: &PhaseState, cfg: &SystemConfig) -> Result<[f64; 2]> {
    if state.chart != Chart::Velocity {
        return Err(Error::domain("equation of motion needs a velocity-chart state"));
    }
    let v = state.w;
    Ok([v, -cfg.force_gradient(state.x) * (1.0 - cfg.alpha * v * v) / cfg.m])
}

/// Integrate `flow` from `state0` at `t = 0` up to `t_end`.
pub fn integrate(
    flow: FlowVariant,
    state0: PhaseState,
    t_end: f64,
    cfg: &SystemConfig,
    integrator: Integrator,
) -> Result<Trajectory> {
    if state0.chart != flow.chart() {
        return Err(Error::InvalidParameter(format!(
            "initial state chart {:?} does not match flow {}",
            state0.chart,
            flow.name()
        )));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidParameter(format!("t_end must be >= 0, got {t_end}")));
    }
    integrator.validate()?;
    let f = |y: &[f64; 2]| flow.rhs(*y, cfg);
    let y0 = [state0.x, state0.w];
    let steps = match integrator {
        Integrator::Rk4 { dt } => integrator::rk4(f, y0, t_end, dt),
        Integrator::Rk45 { rtol, atol } => integrator::rk45(f, y0, t_end, rtol, atol),
    }
    .map_err(|e| e.context(flow.name()))?;
    let chart = flow.chart();
    Ok(Trajectory {
        flow,
        method: integrator,
        samples: steps
            .into_iter()
            .map(|(t, y, rate)| Sample {
                t,
                state: PhaseState { x: y[0], w: y[1], chart },
                rate,
            })
            .collect(),
    })
}

/// One of the two constants of motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantOfMotion {
    K1,
    K2,
}

impl ConstantOfMotion {
    /// Evaluate on a state in any chart; momentum states are first mapped
    /// back to velocity.
    pub fn eval(self, state: &PhaseState, cfg: &SystemConfig) -> Result<f64> {
        let vs = to_velocity(state, cfg)?;
        match self {
            ConstantOfMotion::K1 => k1(&vs, cfg),
            ConstantOfMotion::K2 => k2(&vs, cfg),
        }
    }
}

pub fn to_velocity(state: &PhaseState, cfg: &SystemConfig) -> Result<PhaseState> {
    match state.chart {
        Chart::Velocity => Ok(*state),
        Chart::Momentum(variant) => Ok(PhaseState::velocity(
            state.x,
            inverse_momentum_map(variant, state.x, state.w, cfg)?,
        )),
    }
}

const DRIFT_FLOOR: f64 = 1e-12;

fn max_relative_drift(traj: &Trajectory, value: impl Fn(&PhaseState) -> Result<f64>) -> Result<f64> {
    let k0 = value(&traj.first().state)?;
    let scale = k0.abs().max(DRIFT_FLOOR);
    traj.samples.iter().try_fold(0.0_f64, |acc, s| {
        Ok(acc.max((value(&s.state)? - k0).abs() / scale))
    })
}

/// `max_t |K(t) − K(0)| / max(|K(0)|, 1e-12)` along a trajectory.
pub fn conservation_drift(traj: &Trajectory, which: ConstantOfMotion, cfg: &SystemConfig) -> Result<f64> {
    max_relative_drift(traj, |s| which.eval(s, cfg))
}

/// Relative drift of the flow's own Hamiltonian along a Hamiltonian
/// trajectory.
pub fn hamiltonian_drift(traj: &Trajectory, cfg: &SystemConfig) -> Result<f64> {
    let variant = match traj.chart() {
        Chart::Momentum(v) => v,
        Chart::Velocity => {
            return Err(Error::InvalidParameter("hamiltonian drift needs a momentum-chart trajectory".into()))
        }
    };
    max_relative_drift(traj, |s| hamiltonian(variant, s.x, s.w, cfg))
}
