//! Fixed-step RK4 integration of `ẋ = (A − BK)x`.

use alloc::vec::Vec;

use crate::control::SystemHx;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `n×1` states, one per time.
    pub states: Vec<QMatrix>,
    /// Euclidean norm over all `4n` real components.
    pub norms: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &QMatrix {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn final_norm(&self) -> f64 {
        *self.norms.last().expect("trajectory holds the initial state")
    }
}

pub fn state_norm(x: &QMatrix) -> f64 {
    libm::sqrt(x.as_slice().iter().map(|q| q.norm_sqr()).sum())
}

/// Integrates from `t = 0` to `horizon` with `round(horizon / dt)` steps.
pub fn simulate_closed_loop(
    sys: &SystemHx,
    k: &QMatrix,
    x0: &QMatrix,
    dt: f64,
    horizon: f64,
) -> Result<Trajectory> {
    let acl = sys.closed_loop(k)?;
    simulate_linear(&acl, x0, dt, horizon)
}

/// Integrates `ẋ = M x`.
pub fn simulate_linear(m: &QMatrix, x0: &QMatrix, dt: f64, horizon: f64) -> Result<Trajectory> {
    let n = m.require_square()?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument("dt must be positive and finite"));
    }
    if !(horizon >= dt && horizon.is_finite()) {
        return Err(Error::InvalidArgument("horizon must be finite and at least dt"));
    }
    if x0.shape() != (n, 1) {
        return Err(Error::DimensionMismatch {
            op: "simulate",
            left: (n, 1),
            right: x0.shape(),
        });
    }
    if !x0.is_finite() {
        return Err(Error::Divergence { step: 0 });
    }
    let steps = libm::round(horizon / dt) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut norms = Vec::with_capacity(steps + 1);
    let mut x = x0.clone();
    times.push(0.0);
    norms.push(state_norm(&x));
    states.push(x.clone());
    for step in 1..=steps {
        x = rk4_step(m, &x, dt);
        if !x.is_finite() {
            return Err(Error::Divergence { step });
        }
        times.push(step as f64 * dt);
        norms.push(state_norm(&x));
        states.push(x.clone());
    }
    Ok(Trajectory { times, states, norms })
}

fn rk4_step(m: &QMatrix, x: &QMatrix, dt: f64) -> QMatrix {
    let axpy = |a: &QMatrix, s: f64, b: &QMatrix| a + &b.map(|q| q * s);
    let k1 = m * x;
    let k2 = m * &axpy(x, dt / 2.0, &k1);
    let k3 = m * &axpy(x, dt / 2.0, &k2);
    let k4 = m * &axpy(x, dt, &k3);
    let incr = &(&(&k1 + &k2.map(|q| q * 2.0)) + &k3.map(|q| q * 2.0)) + &k4;
    axpy(x, dt / 6.0, &incr)
}
