//! Explicit Runge–Kutta schemes for 2-dimensional autonomous systems.
//!
//! Classical RK4 with a fixed step, and Dormand–Prince 5(4) with local
//! error control. Both land exactly on `t_end` and keep every accepted step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type State = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Integrator {
    Rk4 { dt: f64 },
    Rk45 { rtol: f64, atol: f64 },
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::Rk4 { dt: 1e-3 }
    }
}

impl Integrator {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Integrator::Rk4 { dt } => dt.is_finite() && dt > 0.0,
            Integrator::Rk45 { rtol, atol } => {
                rtol.is_finite() && atol.is_finite() && rtol > 0.0 && atol > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bad integrator settings {self:?}")))
        }
    }
}

/// Accepted step `(t, y, f(y))`.
pub(crate) type Step = (f64, State, State);

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

fn exit(t: f64, e: Error) -> Error {
    match e {
        Error::Domain(reason) => Error::DomainExit { time: t, reason },
        other => other,
    }
}

pub(crate) fn rk4<F>(f: F, y0: State, t_end: f64, dt: f64) -> Result<Vec<Step>>
where
    F: Fn(&State) -> Result<State>,
{
    let mut y = y0;
    let mut t = 0.0;
    let mut k1 = f(&y).map_err(|e| exit(0.0, e))?;
    let mut out = vec![(t, y, k1)];
    let mut k: u64 = 0;
    while t < t_end {
        let mut t_next = (k + 1) as f64 * dt;
        if t_next >= t_end - 1e-9 * dt {
            t_next = t_end;
        }
        let h = t_next - t;
        let k2 = f(&axpy(&y, h, &[(0.5, &k1)])).map_err(|e| exit(t, e))?;
        let k3 = f(&axpy(&y, h, &[(0.5, &k2)])).map_err(|e| exit(t, e))?;
        let k4 = f(&axpy(&y, h, &[(1.0, &k3)])).map_err(|e| exit(t, e))?;
        y = axpy(&y, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)]);
        t = t_next;
        k1 = f(&y).map_err(|e| exit(t, e))?;
        out.push((t, y, k1));
        k += 1;
    }
    Ok(out)
}

// Dormand–Prince tableau (node times unused: the systems here are autonomous)
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// difference between 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const MAX_STEPS: usize = 10_000_000;

pub(crate) fn rk45<F>(f: F, y0: State, t_end: f64, rtol: f64, atol: f64) -> Result<Vec<Step>>
where
    F: Fn(&State) -> Result<State>,
{
    let mut y = y0;
    let mut t = 0.0;
    let mut k1 = f(&y).map_err(|e| exit(0.0, e))?;
    let mut out = vec![(t, y, k1)];
    if t_end == 0.0 {
        return Ok(out);
    }
    let mut h = initial_step(&y, &k1, rtol, atol).min(t_end);
    let min_step = 1e-14 * t_end.max(1.0);

    while t < t_end {
        if out.len() > MAX_STEPS {
            return Err(Error::Convergence(format!("RK45 exceeded {MAX_STEPS} steps at t = {t}")));
        }
        let last = t + h >= t_end - min_step;
        if last {
            h = t_end - t;
        }
        let attempt = (|| -> Result<(State, State, f64)> {
            let k2 = f(&axpy(&y, h, &[(A21, &k1)]))?;
            let k3 = f(&axpy(&y, h, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(&axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
            let k5 = f(&axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
            let k6 = f(&axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]))?;
            let y_new = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = f(&y_new)?;
            let mut err: f64 = 0.0;
            for i in 0..2 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = atol + rtol * y[i].abs().max(y_new[i].abs());
                err = err.max((e / scale).abs());
            }
            Ok((y_new, k7, err))
        })();

        match attempt {
            Ok((y_new, k7, err)) if err <= 1.0 => {
                t = if last { t_end } else { t + h };
                y = y_new;
                k1 = k7;
                out.push((t, y, k1));
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h *= factor;
            }
            Ok((_, _, err)) => {
                h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            }
            Err(Error::Domain(reason)) => {
                // a stage stepped outside the chart; shrink and retry
                h *= 0.25;
                if h < min_step {
                    return Err(Error::DomainExit { time: t, reason });
                }
                continue;
            }
            Err(e) => return Err(exit(t, e)),
        }
        if h < min_step && t < t_end {
            return Err(Error::Convergence(format!("RK45 step size underflow at t = {t}")));
        }
    }
    Ok(out)
}

fn initial_step(y: &State, f0: &State, rtol: f64, atol: f64) -> f64 {
    let norm = |v: &State| {
        let a = v[0] / (atol + rtol * y[0].abs());
        let b = v[1] / (atol + rtol * y[1].abs());
        ((a * a + b * b) / 2.0).sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.clamp(1e-8, 0.1)
}
