//! Characteristic roots of the retarded dark-state equation.
//!
//! The antisymmetric reduction `c' = −(γ/2)c + (γβ/2)c(t − T)` has solutions
//! `e^{st}` with `s + γ/2 = (γβ/2)·e^{−sT}`. Substituting `w = (s + γ/2)T`
//! gives `w·e^w = (γβT/2)·e^{γT/2}`, so every root is a Lambert-W branch:
//! `s_k = W_k((γβT/2)·e^{γT/2})/T − γ/2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambert::lambert_w;
use crate::two_atom::TwoAtomParams;

const MAX_NEWTON_STEPS: usize = 100;

/// Default number of branches returned by [`characteristic_roots`].
pub const DEFAULT_BRANCHES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacteristicRoot {
    /// Laplace variable, units of 1/time.
    pub s: Complex64,
    /// Lambert-W branch index the root was seeded from.
    pub branch: i64,
    /// `|s + γ/2 − (γβ/2)e^{−sT}|`.
    pub residual: f64,
}

fn characteristic(params: &TwoAtomParams, s: Complex64) -> (Complex64, Complex64) {
    let b = params.delayed_coupling();
    let t = params.retardation();
    let e = (-s * t).exp() * b;
    (s + 0.5 * params.gamma() - e, Complex64::new(1.0, 0.0) + e * t)
}

/// Residual of the characteristic equation at `s`.
pub fn residual(params: &TwoAtomParams, s: Complex64) -> f64 {
    characteristic(params, s).0.norm()
}

fn polish(params: &TwoAtomParams, seed: Complex64, branch: i64) -> Result<CharacteristicRoot> {
    let gamma = params.gamma();
    let mut s = seed;
    for _ in 0..MAX_NEWTON_STEPS {
        let (f, df) = characteristic(params, s);
        // Rounding in `s + γ/2` alone is of order ε·|s|.
        if f.norm() <= 1e-12 * gamma.max(s.norm() * 1e-3) {
            return Ok(CharacteristicRoot { s, branch, residual: f.norm() });
        }
        let step = f / df;
        s -= step;
        if step.norm() <= 4.0 * f64::EPSILON * s.norm().max(gamma) {
            let r = residual(params, s);
            return Ok(CharacteristicRoot { s, branch, residual: r });
        }
    }
    Err(Error::NonConvergence { branch, iterations: MAX_NEWTON_STEPS })
}

/// Branch indices in the order 0, −1, 1, −2, 2, …
fn branch_sequence(n: usize) -> impl Iterator<Item = i64> {
    (0..n as i64).map(|i| if i % 2 == 1 { -(i + 1) / 2 } else { i / 2 })
}

/// The `n_branches` roots with the largest real part, sorted by descending
/// `Re s`.
///
/// Degenerate cases return a single root: `T = 0` gives `s = −γ(1 − β)/2`
/// and `β = 0` gives `s = −γ/2`.
pub fn characteristic_roots(params: &TwoAtomParams, n_branches: usize) -> Result<Vec<CharacteristicRoot>> {
    if n_branches == 0 {
        return Err(Error::InvalidParameter("n_branches must be >= 1".into()));
    }
    if params.phase() != 0.0 {
        return Err(Error::InvalidParameter("characteristic roots are implemented for phase = 0".into()));
    }
    let gamma = params.gamma();
    let b = params.delayed_coupling();
    let t = params.retardation();
    if t == 0.0 || b == 0.0 {
        let s = Complex64::new(-0.5 * gamma + if t == 0.0 { b } else { 0.0 }, 0.0);
        return Ok(vec![CharacteristicRoot { s, branch: 0, residual: residual(params, s) }]);
    }

    // Evaluate the Lambert argument in log space so large γT cannot overflow.
    let log_arg = (b * t).ln() + 0.5 * gamma * t;
    let arg = Complex64::new(log_arg.exp(), 0.0);
    // Extra branches guard against the ordering of Re s not following |k|.
    let mut roots = branch_sequence(n_branches + 2)
        .map(|k| {
            let w = lambert_w(arg, k);
            polish(params, w / t - 0.5 * gamma, k)
        })
        .collect::<Result<Vec<_>>>()?;
    roots.sort_by(|a, b| b.s.re.total_cmp(&a.s.re).then(b.s.im.total_cmp(&a.s.im)));
    roots.truncate(n_branches);
    // Keep conjugate pairs together when the cut falls between them.
    if let Some(last) = roots.last().copied() {
        if last.s.im != 0.0 && !roots.iter().any(|r| (r.s - last.s.conj()).norm() <= 1e-9 * last.s.norm()) {
            roots.push(polish(params, last.s.conj(), -last.branch)?);
        }
    }
    Ok(roots)
}

/// Long-time decay rate of the population, `Γ = −2·max Re s`.
pub fn dominant_decay_rate(roots: &[CharacteristicRoot]) -> Result<f64> {
    roots
        .iter()
        .map(|r| r.s.re)
        .max_by(f64::total_cmp)
        .map(|re| -2.0 * re)
        .ok_or(Error::Empty("characteristic root list"))
}

/// Small-retardation estimate `γ₀ / (1 + γ₁D·T/2)`.
pub fn asymptotic_rate(params: &TwoAtomParams) -> f64 {
    params.gamma0() / (1.0 + 0.5 * params.gamma1d() * params.retardation())
}

/// Convenience: dominant rate from [`DEFAULT_BRANCHES`] roots.
pub fn spectral_rate(params: &TwoAtomParams) -> Result<f64> {
    dominant_decay_rate(&characteristic_roots(params, DEFAULT_BRANCHES)?)
}
