//! Observables derived from population and photon-distribution series.

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum number of samples accepted by [`fit_exponential`].
pub const MIN_FIT_SAMPLES: usize = 10;

/// Default moving-average width for [`decay_rate_curve`].
pub const DEFAULT_SMOOTH_WINDOW: usize = 5;

/// Least-squares exponential fit `P ∝ e^{−Γt}` over a time window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub gamma_fit: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub n_points: usize,
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::InvalidParameter(format!("series lengths differ: {a} vs {b}")));
    }
    if a == 0 {
        return Err(Error::Empty("time series"));
    }
    Ok(())
}

fn log_population(p: &[f64], times: &[f64]) -> Result<Vec<f64>> {
    p.iter()
        .zip(times)
        .map(|(&v, &t)| if v > 0.0 { Ok(v.ln()) } else { Err(Error::NonPositivePopulation { t, value: v }) })
        .collect()
}

/// Ordinary least squares `y = slope·x + intercept`; returns
/// `(slope, intercept, r²)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(&x, &y)| (y - slope * x - intercept).powi(2)).sum();
    let r2 = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    (slope, intercept, r2)
}

/// Instantaneous decay rate `Γ(t) = −d ln P/dt`.
///
/// Central differences inside, one-sided at both ends, then a centred moving
/// average over `smooth_window` points (truncated at the edges).
pub fn decay_rate_curve(p: &[f64], times: &[f64], smooth_window: usize) -> Result<Vec<f64>> {
    check_lengths(p.len(), times.len())?;
    if smooth_window == 0 || smooth_window.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("smooth_window must be odd and >= 1, got {smooth_window}")));
    }
    let n = p.len();
    if n < 2 {
        return Err(Error::InsufficientSamples { start: times[0], end: times[0], count: n, required: 2 });
    }
    let lp = log_population(p, times)?;
    let mut raw = Vec::with_capacity(n);
    raw.push(-(lp[1] - lp[0]) / (times[1] - times[0]));
    for i in 1..n - 1 {
        raw.push(-(lp[i + 1] - lp[i - 1]) / (times[i + 1] - times[i - 1]));
    }
    raw.push(-(lp[n - 1] - lp[n - 2]) / (times[n - 1] - times[n - 2]));

    let half = smooth_window / 2;
    if half == 0 {
        return Ok(raw);
    }
    Ok((0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            raw[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect())
}

/// Fit `ln P` linearly over `window = (t_start, t_end)`; `gamma_fit` is the
/// negated slope.
pub fn fit_exponential(p: &[f64], times: &[f64], window: (f64, f64)) -> Result<FitResult> {
    check_lengths(p.len(), times.len())?;
    let (start, end) = window;
    if !(start < end) {
        return Err(Error::InvalidParameter(format!("fit window must satisfy start < end, got [{start}, {end}]")));
    }
    let first = times[0];
    let last = times[times.len() - 1];
    let slack = 1e-9 * (last - first).abs().max(1.0);
    if start < first - slack || end > last + slack {
        return Err(Error::OutOfRange { t: if start < first { start } else { end }, start: first, end: last });
    }
    let (ts, ps): (Vec<f64>, Vec<f64>) =
        times.iter().zip(p).filter(|(&t, _)| t >= start - slack && t <= end + slack).map(|(&t, &v)| (t, v)).unzip();
    if ts.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples { start, end, count: ts.len(), required: MIN_FIT_SAMPLES });
    }
    let lp = log_population(&ps, &ts)?;
    let (slope, _, r_squared) = linear_fit(&ts, &lp);
    if !slope.is_finite() {
        return Err(Error::NonFinite(start));
    }
    Ok(FitResult { gamma_fit: -slope, window, r_squared, n_points: ts.len() })
}

/// Mean of `values` over the samples whose time lies in `window`.
pub fn window_mean(values: &[f64], times: &[f64], window: (f64, f64)) -> Result<f64> {
    check_lengths(values.len(), times.len())?;
    let picked: Vec<f64> =
        times.iter().zip(values).filter(|(&t, _)| t >= window.0 && t <= window.1).map(|(_, &v)| v).collect();
    if picked.is_empty() {
        return Err(Error::InsufficientSamples { start: window.0, end: window.1, count: 0, required: 1 });
    }
    Ok(picked.iter().sum::<f64>() / picked.len() as f64)
}

/// Probability mass tolerated in the edge zone before a packet counts as
/// having reached the boundary.
const EDGE_MASS: f64 = 1e-6;

/// Propagation speed of a photon wave packet.
///
/// `distributions[i][x]` is `|c_x|²` at `times[i]`; the centroid
/// `⟨x⟩ = Σ x|c_x|² / Σ|c_x|²` is fitted linearly in time. Fails if more than
/// a negligible fraction of the packet sits within 5% of either lattice end.
pub fn centroid_velocity(distributions: &[Vec<f64>], times: &[f64]) -> Result<f64> {
    check_lengths(distributions.len(), times.len())?;
    if distributions.len() < 2 {
        return Err(Error::InsufficientSamples { start: times[0], end: times[0], count: 1, required: 2 });
    }
    let mut centroids = Vec::with_capacity(times.len());
    for (dist, &t) in distributions.iter().zip(times) {
        let n = dist.len();
        let total: f64 = dist.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Empty("photon distribution"));
        }
        let margin = (n / 20).max(1);
        let edge: f64 = dist[..margin].iter().chain(&dist[n - margin..]).sum();
        if edge > EDGE_MASS * total {
            return Err(Error::EdgeReached(t));
        }
        centroids.push(dist.iter().enumerate().map(|(x, w)| x as f64 * w).sum::<f64>() / total);
    }
    Ok(linear_fit(times, &centroids).0)
}
