use serde::Serialize;

use super::{FlowVariant, Integrator};
use crate::model::{Chart, PhaseState};

/// One accepted integrator step: time, state, and the vector field there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: PhaseState,
    /// `(dx/dt, dw/dt)` at this sample, kept for Hermite interpolation.
    pub rate: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub flow: FlowVariant,
    pub method: Integrator,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn chart(&self) -> Chart {
        self.flow.chart()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    /// State at time `t` by cubic Hermite interpolation between the
    /// bracketing samples. Node times return the stored state exactly.
    /// Returns `None` outside `[t_0, t_end]`.
    pub fn state_at(&self, t: f64) -> Option<PhaseState> {
        let first = self.first();
        let last = self.last();
        if t < first.t || t > last.t {
            return None;
        }
        let i = self.samples.partition_point(|s| s.t < t);
        let right = &self.samples[i];
        if right.t == t {
            return Some(right.state);
        }
        let left = &self.samples[i - 1];
        let h = right.t - left.t;
        let s = (t - left.t) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let blend = |a: f64, da: f64, b: f64, db: f64| h00 * a + h10 * h * da + h01 * b + h11 * h * db;
        Some(PhaseState {
            x: blend(left.state.x, left.rate[0], right.state.x, right.rate[0]),
            w: blend(left.state.w, left.rate[1], right.state.w, right.rate[1]),
            chart: left.state.chart,
        })
    }
}
