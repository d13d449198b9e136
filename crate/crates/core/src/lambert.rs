//! Complex Lambert W function on an arbitrary branch.
//!
//! `W_k(z)` solves `w·e^w = z` on branch `k`. Seeds come from the branch-point
//! series near `z = -1/e`, from `ln(1 + z)` for the principal branch at
//! moderate `|z|`, and from the logarithmic asymptotic expansion otherwise;
//! Halley iteration then converges to machine precision.

use num_complex::Complex64;
use std::f64::consts::{E, PI};

const MAX_HALLEY_STEPS: usize = 64;

fn seed(z: Complex64, k: i64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    // Distance to the branch point -1/e.
    let p2 = (z * E + one) * 2.0;
    let near_branch_point = p2.norm() < 0.3;
    if near_branch_point {
        let p = p2.sqrt();
        let lower = z.im < 0.0 || (z.im == 0.0 && z.re < 0.0);
        // Branch 0 is the `+p` sheet; branches ±1 touch the point from the
        // half-plane matching their sign.
        let s = match k {
            0 => Some(1.0),
            -1 if z.im >= 0.0 => Some(-1.0),
            1 if lower => Some(-1.0),
            _ => None,
        };
        if let Some(s) = s {
            let p = p * s;
            return -one + p - p * p / 3.0 + p * p * p * (11.0 / 72.0);
        }
    }
    if k == 0 && z.norm() < 3.0 {
        return (one + z).ln();
    }
    let l1 = z.ln() + Complex64::new(0.0, 2.0 * PI * k as f64);
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

/// Branch `k` of the Lambert W function at `z`.
///
/// Returns `-∞` for `W_k(0)` with `k != 0`, matching the limit along each
/// branch.
pub fn lambert_w(z: Complex64, k: i64) -> Complex64 {
    if z.re.is_nan() || z.im.is_nan() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    if z == Complex64::new(0.0, 0.0) {
        return if k == 0 { z } else { Complex64::new(f64::NEG_INFINITY, 0.0) };
    }
    let one = Complex64::new(1.0, 0.0);
    let mut w = seed(z, k);
    for _ in 0..MAX_HALLEY_STEPS {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + one;
        // At the branch point itself Halley's denominator vanishes.
        if wp1.norm() < 1e-300 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (wp1 * 2.0));
        w -= step;
        if step.norm() <= 1e-15 * (1.0 + w.norm()) {
            break;
        }
    }
    w
}
