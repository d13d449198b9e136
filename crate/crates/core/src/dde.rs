//! Fixed-delay linear delay differential equations.
//!
//! Solves `y'(t) = A·y(t) + B·y(t − T)·Θ(t − T)` with `y ≡ 0` for `t < 0`
//! by the method of steps: classical RK4 on a uniform grid that contains every
//! multiple of `T`, with the retarded argument read back from a cubic Hermite
//! interpolant of the already computed solution.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Linear DDE with one constant delay.
#[derive(Debug, Clone)]
pub struct DdeProblem {
    instantaneous: DMatrix<Complex64>,
    delayed: DMatrix<Complex64>,
    delay: f64,
    initial: DVector<Complex64>,
}

impl DdeProblem {
    pub fn new(
        instantaneous: DMatrix<Complex64>,
        delayed: DMatrix<Complex64>,
        delay: f64,
        initial: DVector<Complex64>,
    ) -> Result<Self> {
        let dim = initial.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("DDE dimension must be at least 1".into()));
        }
        if instantaneous.shape() != (dim, dim) || delayed.shape() != (dim, dim) {
            return Err(Error::InvalidParameter(format!(
                "matrices must be {dim}x{dim}, got {:?} and {:?}",
                instantaneous.shape(),
                delayed.shape()
            )));
        }
        if !(delay.is_finite() && delay >= 0.0) {
            return Err(Error::InvalidParameter(format!("delay must be finite and >= 0, got {delay}")));
        }
        Ok(Self { instantaneous, delayed, delay, initial })
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    pub fn initial(&self) -> &DVector<Complex64> {
        &self.initial
    }
}

/// Dense solution on a uniform grid `t_i = i·step`.
///
/// Each interval `[t_i, t_{i+1}]` keeps the one-sided derivatives at both of
/// its ends, so the Hermite interpolant stays exact across the derivative
/// jumps at multiples of the delay.
#[derive(Debug, Clone)]
pub struct HistoryBuffer {
    dim: usize,
    step: f64,
    delay: f64,
    values: Vec<Complex64>,
    slope_start: Vec<Complex64>,
    slope_end: Vec<Complex64>,
}

impl HistoryBuffer {
    fn with_capacity(dim: usize, step: f64, delay: f64, intervals: usize) -> Self {
        Self {
            dim,
            step,
            delay,
            values: Vec::with_capacity((intervals + 1) * dim),
            slope_start: Vec::with_capacity(intervals * dim),
            slope_end: Vec::with_capacity(intervals * dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Grid spacing actually used (possibly adjusted to divide the delay).
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }

    /// Number of stored grid nodes.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }

    pub fn end_time(&self) -> f64 {
        self.time(self.len().saturating_sub(1))
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }

    /// Stored state at node `i`.
    pub fn value(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// Time series of one component.
    pub fn component(&self, k: usize) -> Vec<Complex64> {
        self.values.iter().skip(k).step_by(self.dim).copied().collect()
    }

    fn intervals(&self) -> usize {
        self.slope_start.len() / self.dim
    }

    /// Hermite interpolant inside interval `i` at fraction `theta` ∈ [0, 1].
    fn interpolate_into(&self, i: usize, theta: f64, out: &mut [Complex64]) {
        let d = self.dim;
        if theta == 0.0 {
            out.copy_from_slice(self.value(i));
            return;
        }
        if theta == 1.0 {
            out.copy_from_slice(self.value(i + 1));
            return;
        }
        let (t2, t3) = (theta * theta, theta * theta * theta);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = (t3 - 2.0 * t2 + theta) * self.step;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = (t3 - t2) * self.step;
        let y0 = &self.values[i * d..(i + 1) * d];
        let y1 = &self.values[(i + 1) * d..(i + 2) * d];
        let d0 = &self.slope_start[i * d..(i + 1) * d];
        let d1 = &self.slope_end[i * d..(i + 1) * d];
        for k in 0..d {
            out[k] = y0[k] * h00 + d0[k] * h10 + y1[k] * h01 + d1[k] * h11;
        }
    }

    /// Evaluate the solution at an arbitrary time. The pre-history (`t < 0`)
    /// is identically zero.
    pub fn eval_into(&self, t: f64, out: &mut [Complex64]) -> Result<()> {
        let end = self.end_time();
        if t < 0.0 {
            out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            return Ok(());
        }
        if !(t <= end * (1.0 + 1e-12) + 1e-300) || self.intervals() == 0 {
            if t == 0.0 {
                out.copy_from_slice(self.value(0));
                return Ok(());
            }
            return Err(Error::OutOfRange { t, start: 0.0, end });
        }
        let x = t / self.step;
        let i = (x.floor() as usize).min(self.intervals() - 1);
        let theta = (x - i as f64).clamp(0.0, 1.0);
        self.interpolate_into(i, theta, out);
        Ok(())
    }

    pub fn eval(&self, t: f64) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        self.eval_into(t, &mut out)?;
        Ok(out)
    }
}

fn matvec_add(m: &DMatrix<Complex64>, x: &[Complex64], out: &mut [Complex64]) {
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = *o;
        for (j, xj) in x.iter().enumerate() {
            acc += m[(i, j)] * xj;
        }
        *o = acc;
    }
}

struct Rhs<'a> {
    a: &'a DMatrix<Complex64>,
    b: &'a DMatrix<Complex64>,
}

impl Rhs<'_> {
    fn eval(&self, y: &[Complex64], delayed: Option<&[Complex64]>, out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        matvec_add(self.a, y, out);
        if let Some(yd) = delayed {
            matvec_add(self.b, yd, out);
        }
    }
}

/// Integrate `problem` on `[0, t_max]`.
///
/// The step is shrunk to `T/m` with `m = ⌈T/dt⌉` so every multiple of
/// the delay is a grid node; the grid is extended to the first node at or
/// beyond `t_max`.
pub fn integrate(problem: &DdeProblem, t_max: f64, dt: f64) -> Result<HistoryBuffer> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
    }
    let delay = problem.delay;
    let (step, lag) = if delay > 0.0 {
        let limit = delay / 10.0;
        if dt > limit * (1.0 + 1e-12) {
            return Err(Error::AccuracyGuard { dt, delay, limit });
        }
        let m = ((delay / dt) - 1e-9).ceil().max(1.0) as usize;
        (delay / m as f64, Some(m))
    } else {
        (dt, None)
    };
    let steps = ((t_max / step) - 1e-9).ceil().max(1.0) as usize;

    // With no delay the retarded term is the current state.
    let merged;
    let rhs = match lag {
        Some(_) => Rhs { a: &problem.instantaneous, b: &problem.delayed },
        None => {
            merged = &problem.instantaneous + &problem.delayed;
            Rhs { a: &merged, b: &problem.delayed }
        }
    };

    let d = problem.dim();
    let mut hist = HistoryBuffer::with_capacity(d, step, delay, steps);
    hist.values.extend_from_slice(problem.initial.as_slice());

    let zero = Complex64::new(0.0, 0.0);
    let mut y = problem.initial.as_slice().to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![zero; d], vec![zero; d], vec![zero; d], vec![zero; d]);
    let mut stage = vec![zero; d];
    let (mut lag0, mut lag_mid, mut lag1) = (vec![zero; d], vec![zero; d], vec![zero; d]);

    for n in 0..steps {
        // Retarded interval for this step, if the delayed term is already on.
        let source = lag.and_then(|m| n.checked_sub(m));
        if let Some(j) = source {
            hist.interpolate_into(j, 0.0, &mut lag0);
            hist.interpolate_into(j, 0.5, &mut lag_mid);
            hist.interpolate_into(j, 1.0, &mut lag1);
        }
        let r0 = source.map(|_| lag0.as_slice());
        let rm = source.map(|_| lag_mid.as_slice());
        let r1 = source.map(|_| lag1.as_slice());

        rhs.eval(&y, r0, &mut k1);
        for k in 0..d {
            stage[k] = y[k] + k1[k] * (0.5 * step);
        }
        rhs.eval(&stage, rm, &mut k2);
        for k in 0..d {
            stage[k] = y[k] + k2[k] * (0.5 * step);
        }
        rhs.eval(&stage, rm, &mut k3);
        for k in 0..d {
            stage[k] = y[k] + k3[k] * step;
        }
        rhs.eval(&stage, r1, &mut k4);
        for k in 0..d {
            y[k] += (k1[k] + (k2[k] + k3[k]) * 2.0 + k4[k]) * (step / 6.0);
        }
        if y.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite((n + 1) as f64 * step));
        }

        // Slope at the end of this interval, as a limit from inside it.
        rhs.eval(&y, r1, &mut k4);
        hist.slope_start.extend_from_slice(&k1);
        hist.slope_end.extend_from_slice(&k4);
        hist.values.extend_from_slice(&y);
    }
    Ok(hist)
}
