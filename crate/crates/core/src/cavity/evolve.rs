use num_complex::Complex64;

use super::{CavityParams, EffectiveHamiltonian, InitialStateKind, LatticeState};
use crate::error::{Error, Result};

/// Largest accepted RK4 step, in units of `1/J`.
pub const MAX_STEP_PER_HOPPING: f64 = 0.02;

/// Lattice evolution record.
///
/// Scalar observables are kept at every step; full amplitude snapshots only
/// every `stride` steps (plus the final step).
#[derive(Debug, Clone)]
pub struct LatticeTrajectory {
    pub times: Vec<f64>,
    /// `Σ_j |c_{A,j}|²`.
    pub population: Vec<f64>,
    pub population_b: Vec<f64>,
    pub norm_sqr: Vec<f64>,
    pub snapshot_times: Vec<f64>,
    pub snapshots: Vec<LatticeState>,
}

impl LatticeTrajectory {
    pub(crate) fn with_capacity(steps: usize, snapshots: usize) -> Self {
        Self {
            times: Vec::with_capacity(steps),
            population: Vec::with_capacity(steps),
            population_b: Vec::with_capacity(steps),
            norm_sqr: Vec::with_capacity(steps),
            snapshot_times: Vec::with_capacity(snapshots),
            snapshots: Vec::with_capacity(snapshots),
        }
    }

    pub(crate) fn record(&mut self, t: f64, state: &LatticeState, snapshot: bool) {
        self.times.push(t);
        self.population.push(state.population_a());
        self.population_b.push(state.population_b());
        self.norm_sqr.push(state.norm_sqr());
        if snapshot {
            self.snapshot_times.push(t);
            self.snapshots.push(state.clone());
        }
    }

    /// `|c_x|²` for every snapshot.
    pub fn photon_distributions(&self) -> Vec<Vec<f64>> {
        self.snapshots.iter().map(LatticeState::photon_distribution).collect()
    }
}

/// RK4 evolution of `i∂ψ/∂t = Hψ`, recording every step.
pub fn evolve(params: &CavityParams, init: InitialStateKind, t_max: f64, dt: f64) -> Result<LatticeTrajectory> {
    evolve_strided(params, init, t_max, dt, 1)
}

/// As [`evolve`], keeping amplitude snapshots every `stride` steps.
pub fn evolve_strided(
    params: &CavityParams,
    init: InitialStateKind,
    t_max: f64,
    dt: f64,
    stride: usize,
) -> Result<LatticeTrajectory> {
    params.validate()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    let limit = MAX_STEP_PER_HOPPING / params.hopping;
    if dt > limit * (1.0 + 1e-12) {
        return Err(Error::StepSizeGuard { dt, hopping: params.hopping, limit });
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
    }
    params.check_padding(t_max)?;
    let stride = stride.max(1);

    let h = EffectiveHamiltonian::rotating(params)?;
    let steps = ((t_max / dt) - 1e-9).ceil().max(1.0) as usize;
    let dim = params.dim();
    let zero = Complex64::new(0.0, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);

    let mut psi = init.prepare(params)?.to_flat();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![zero; dim], vec![zero; dim], vec![zero; dim], vec![zero; dim]);
    let mut stage = vec![zero; dim];
    let mut traj = LatticeTrajectory::with_capacity(steps + 1, steps / stride + 2);
    traj.record(0.0, &LatticeState::from_flat(params, &psi), true);

    let deriv = |y: &[Complex64], out: &mut [Complex64]| {
        h.apply(y, out);
        out.iter_mut().for_each(|v| *v *= minus_i);
    };
    for n in 1..=steps {
        deriv(&psi, &mut k1);
        for i in 0..dim {
            stage[i] = psi[i] + k1[i] * (0.5 * dt);
        }
        deriv(&stage, &mut k2);
        for i in 0..dim {
            stage[i] = psi[i] + k2[i] * (0.5 * dt);
        }
        deriv(&stage, &mut k3);
        for i in 0..dim {
            stage[i] = psi[i] + k3[i] * dt;
        }
        deriv(&stage, &mut k4);
        for i in 0..dim {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }
        let t = n as f64 * dt;
        if psi.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(t));
        }
        traj.record(t, &LatticeState::from_flat(params, &psi), n % stride == 0 || n == steps);
    }
    Ok(traj)
}
