//! Two emitters on a continuum waveguide with a retarded interaction.
//!
//! Each amplitude obeys
//! `c_i' = -(γ/2)·[c_i(t) + β·e^{iφ}·c_j(t − T)·Θ(t − T)]`
//! with `γ = γ₀ + γ₁D` and `β = γ₁D/γ`. Atom A sits at `x = 0` and atom B at
//! `x = T` (group velocity 1), so positions and times share a unit.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::dde::{self, DdeProblem, HistoryBuffer};
use crate::error::{Error, Result};

/// Physical parameters of the continuum model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoAtomParams {
    gamma0: f64,
    gamma1d: f64,
    beta: f64,
    retardation: f64,
    phase: f64,
}

impl TwoAtomParams {
    /// Lossy model from the local decay rate `gamma0 > 0` and the coupling
    /// efficiency `beta ∈ [0, 1)`.
    pub fn new(gamma0: f64, beta: f64, retardation: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma0 must be > 0 (use TwoAtomParams::lossless for gamma0 = 0), got {gamma0}"
            )));
        }
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta must lie in [0, 1), got {beta}")));
        }
        check_retardation(retardation)?;
        Ok(Self { gamma0, gamma1d: beta * gamma0 / (1.0 - beta), beta, retardation, phase: 0.0 })
    }

    /// Lossless diagnostic mode: `γ₀ = 0`, `β = 1`, waveguide rate `gamma1d`.
    pub fn lossless(gamma1d: f64, retardation: f64) -> Result<Self> {
        if !(gamma1d.is_finite() && gamma1d > 0.0) {
            return Err(Error::InvalidParameter(format!("gamma1d must be > 0, got {gamma1d}")));
        }
        check_retardation(retardation)?;
        Ok(Self { gamma0: 0.0, gamma1d, beta: 1.0, retardation, phase: 0.0 })
    }

    /// Set the propagation phase φ between the atoms (radians).
    pub fn with_phase(mut self, phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::InvalidParameter(format!("phase must be finite, got {phase}")));
        }
        self.phase = phase;
        Ok(self)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn gamma1d(&self) -> f64 {
        self.gamma1d
    }

    /// Total single-atom rate γ = γ₀ + γ₁D.
    pub fn gamma(&self) -> f64 {
        self.gamma0 + self.gamma1d
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn retardation(&self) -> f64 {
        self.retardation
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_lossless(&self) -> bool {
        self.gamma0 == 0.0
    }

    /// Position of atom B; atom A is at the origin.
    pub fn separation(&self) -> f64 {
        self.retardation
    }

    /// Strength `γβ/2 = γ₁D/2` of the retarded coupling.
    pub fn delayed_coupling(&self) -> f64 {
        0.5 * self.gamma1d
    }

    fn dde(&self, initial: [Complex64; 2]) -> Result<DdeProblem> {
        let zero = Complex64::new(0.0, 0.0);
        let local = Complex64::new(-0.5 * self.gamma(), 0.0);
        let cross = -Complex64::from_polar(self.delayed_coupling(), self.phase);
        DdeProblem::new(
            DMatrix::from_row_slice(2, 2, &[local, zero, zero, local]),
            DMatrix::from_row_slice(2, 2, &[zero, cross, cross, zero]),
            self.retardation,
            DVector::from_row_slice(&initial),
        )
    }
}

fn check_retardation(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("retardation T must be finite and >= 0, got {t}")))
    }
}

/// Antisymmetric initial amplitudes `(1/√2, −1/√2)`.
pub fn dark_state() -> [Complex64; 2] {
    [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(-FRAC_1_SQRT_2, 0.0)]
}

/// Atomic amplitudes on the integration grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    params: TwoAtomParams,
    times: Vec<f64>,
    c_a: Vec<Complex64>,
    c_b: Vec<Complex64>,
    population: Vec<f64>,
    history: HistoryBuffer,
}

impl Trajectory {
    pub fn params(&self) -> &TwoAtomParams {
        &self.params
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn c_a(&self) -> &[Complex64] {
        &self.c_a
    }

    pub fn c_b(&self) -> &[Complex64] {
        &self.c_b
    }

    /// `P(t) = |c_A|² + |c_B|²` on the grid.
    pub fn population(&self) -> &[f64] {
        &self.population
    }

    pub fn step(&self) -> f64 {
        self.history.step()
    }

    pub fn end_time(&self) -> f64 {
        self.history.end_time()
    }

    /// Interpolated amplitudes `(c_A, c_B)`; zero before `t = 0`.
    pub fn amplitudes_at(&self, t: f64) -> Result<[Complex64; 2]> {
        let v = self.history.eval(t)?;
        Ok([v[0], v[1]])
    }
}

/// Elementwise `|c_A|² + |c_B|²`.
pub fn population(c_a: &[Complex64], c_b: &[Complex64]) -> Vec<f64> {
    c_a.iter().zip(c_b).map(|(a, b)| a.norm_sqr() + b.norm_sqr()).collect()
}

/// Integrate the two-atom equations from arbitrary initial amplitudes.
pub fn evolve(params: &TwoAtomParams, initial: [Complex64; 2], t_max: f64, dt: f64) -> Result<Trajectory> {
    let history = dde::integrate(&params.dde(initial)?, t_max, dt)?;
    let c_a = history.component(0);
    let c_b = history.component(1);
    Ok(Trajectory { params: *params, times: history.times(), population: population(&c_a, &c_b), c_a, c_b, history })
}

/// Evolve the antisymmetric (dark) state.
pub fn evolve_dark_state(params: &TwoAtomParams, t_max: f64, dt: f64) -> Result<Trajectory> {
    evolve(params, dark_state(), t_max, dt)
}

/// Closed-form method-of-steps amplitude `c_A(t)` of the dark state at φ = 0.
///
/// With `cA = −cB` the pair reduces to `c' = −(γ/2)c + (γβ/2)c(t − T)`,
/// whose solution with zero pre-history is
/// `c(t) = Σ_{n ≤ t/T} (γβ/2)^n (t − nT)^n / n! · e^{−γ(t − nT)/2} · c(0)`.
/// For `T = 0` the series collapses to `e^{−γ(1−β)t/2}·c(0)`.
pub fn series_solution(params: &TwoAtomParams, t: f64) -> Result<Complex64> {
    if params.phase != 0.0 {
        return Err(Error::InvalidParameter("series solution requires phase = 0".into()));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t must be finite and >= 0, got {t}")));
    }
    let c0 = FRAC_1_SQRT_2;
    let half_gamma = 0.5 * params.gamma();
    let coupling = params.delayed_coupling();
    let delay = params.retardation;
    if delay == 0.0 {
        return Ok(Complex64::new((-(half_gamma - coupling) * t).exp() * c0, 0.0));
    }
    let terms = (t / delay).floor() as usize;
    let mut sum = 0.0;
    let mut factorial = 1.0;
    for n in 0..=terms {
        if n > 0 {
            factorial *= n as f64;
        }
        let s = t - n as f64 * delay;
        if s < 0.0 {
            break;
        }
        sum += (coupling * s).powi(n as i32) / factorial * (-half_gamma * s).exp();
    }
    Ok(Complex64::new(sum * c0, 0.0))
}

/// Right- and left-moving field amplitudes at `(x, t)`.
///
/// Atom `i` radiates `√(γ₁D/2)·c_i(t − |x − x_i|)` into each direction, with
/// propagation phase `φ·|x − x_i|/d` so that the field reaching the other atom
/// carries exactly `e^{iφ}`. `|E_R|² + |E_L|²` integrated over `x` is the
/// photon probability.
pub fn field_at(traj: &Trajectory, x: f64, t: f64) -> Result<(Complex64, Complex64)> {
    let p = &traj.params;
    let d = p.separation();
    if d <= 0.0 {
        return Err(Error::InvalidParameter("field reconstruction needs T > 0".into()));
    }
    if t > traj.end_time() * (1.0 + 1e-12) {
        return Err(Error::OutOfRange { t, start: 0.0, end: traj.end_time() });
    }
    let amplitude = (0.5 * p.gamma1d).sqrt();
    let positions = [0.0, d];
    let mut right = Complex64::new(0.0, 0.0);
    let mut left = Complex64::new(0.0, 0.0);
    for (i, &xi) in positions.iter().enumerate() {
        let dist = (x - xi).abs();
        let retarded = t - dist;
        if retarded < 0.0 {
            continue;
        }
        let c = traj.amplitudes_at(retarded)?[i];
        let e = c * Complex64::from_polar(amplitude, p.phase * dist / d);
        if x >= xi {
            right += e;
        }
        if x <= xi {
            left += e;
        }
    }
    Ok((right, left))
}

/// `I(x, t) = |E_R|² + |E_L|²`.
pub fn intensity_at(traj: &Trajectory, x: f64, t: f64) -> Result<f64> {
    let (r, l) = field_at(traj, x, t)?;
    Ok(r.norm_sqr() + l.norm_sqr())
}

/// Space-time intensity matrix, rows indexed by time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub x: Vec<f64>,
    pub t: Vec<f64>,
    pub intensity: Vec<f64>,
}

impl FieldGrid {
    pub fn at(&self, it: usize, ix: usize) -> f64 {
        self.intensity[it * self.x.len() + ix]
    }

    pub fn row(&self, it: usize) -> &[f64] {
        let n = self.x.len();
        &self.intensity[it * n..(it + 1) * n]
    }

    pub fn peak(&self) -> f64 {
        self.intensity.iter().copied().fold(0.0, f64::max)
    }

    /// Copy scaled so the largest entry is 1 (unchanged when all zero).
    pub fn normalized(&self) -> FieldGrid {
        let peak = self.peak();
        let scale = if peak > 0.0 { 1.0 / peak } else { 1.0 };
        FieldGrid {
            x: self.x.clone(),
            t: self.t.clone(),
            intensity: self.intensity.iter().map(|v| v * scale).collect(),
        }
    }
}

/// Evaluate the intensity on the product grid `t_grid × x_grid`.
pub fn field_intensity_map(traj: &Trajectory, x_grid: &[f64], t_grid: &[f64]) -> Result<FieldGrid> {
    let end = traj.end_time();
    if let Some(&t) = t_grid.iter().find(|&&t| t > end * (1.0 + 1e-12)) {
        return Err(Error::OutOfRange { t, start: 0.0, end });
    }
    let mut intensity = Vec::with_capacity(x_grid.len() * t_grid.len());
    for &t in t_grid {
        for &x in x_grid {
            intensity.push(intensity_at(traj, x, t)?);
        }
    }
    Ok(FieldGrid { x: x_grid.to_vec(), t: t_grid.to_vec(), intensity })
}

/// Default map grid: 801 points over `[−2T, 3T]` and the trajectory grid
/// thinned to at most 600 rows.
pub fn default_field_grid(traj: &Trajectory) -> (Vec<f64>, Vec<f64>) {
    let d = traj.params.separation();
    let nx = 801;
    let x = (0..nx).map(|i| -2.0 * d + 5.0 * d * i as f64 / (nx - 1) as f64).collect();
    let stride = traj.times.len().div_ceil(600).max(1);
    let t = traj.times.iter().step_by(stride).copied().collect();
    (x, t)
}
