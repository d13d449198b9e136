//! Tight-binding cavity array with atom ensembles at two sites.
//!
//! A chain of `N` cavities (frequency `ω_c`, hopping `J`) carries one
//! excitation shared with `N_A` atoms in cavity `x_A` and `N_B` atoms in
//! cavity `x_B`. Local emission into free space enters as the complex atomic
//! frequency `ω_i − iγ₀/2`, which makes the single-excitation Hamiltonian
//! complex-symmetric and non-Hermitian. The ensemble at `x_B` acts as a
//! mirror whose reflectivity is set by `√N_B·g_B`.

mod evolve;
mod hamiltonian;
mod oracle;

pub use evolve::{evolve, evolve_strided, LatticeTrajectory, MAX_STEP_PER_HOPPING};
pub use hamiltonian::{build_effective_hamiltonian, EffectiveHamiltonian};
pub use oracle::{exact_diag_oracle, MAX_ORACLE_DIM};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Local decay rate used when none is given, in units of `J`.
pub const DEFAULT_GAMMA0_PER_HOPPING: f64 = 0.05;

/// Lattice model parameters. Sites are numbered `1..=n_sites`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityParams {
    pub n_sites: usize,
    pub hopping: f64,
    pub omega_c: f64,
    pub x_a: usize,
    pub x_b: usize,
    pub n_a: usize,
    pub n_b: usize,
    pub g_a: f64,
    pub g_b: f64,
    pub omega_a: f64,
    pub omega_b: f64,
    pub gamma0: f64,
}

impl CavityParams {
    /// On-resonance chain sized so that no reflection from either end can
    /// reach the atoms before `t_max`: `N = 2⌈2J·t_max⌉ + Δx + 1` with the
    /// pair centred. `mirror` is `√N_B·g_B`.
    #[allow(clippy::too_many_arguments)]
    pub fn centered(
        hopping: f64,
        separation: usize,
        g_a: f64,
        n_a: usize,
        mirror: f64,
        n_b: usize,
        gamma0: f64,
        t_max: f64,
    ) -> Result<Self> {
        if !(hopping.is_finite() && hopping > 0.0) {
            return Err(Error::InvalidParameter(format!("hopping J must be > 0, got {hopping}")));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidParameter(format!("t_max must be positive, got {t_max}")));
        }
        if n_b == 0 {
            return Err(Error::InvalidParameter("N_B must be >= 1".into()));
        }
        let pad = (2.0 * hopping * t_max).ceil() as usize;
        let params = Self {
            n_sites: 2 * pad + separation + 1,
            hopping,
            omega_c: 0.0,
            x_a: pad + 1,
            x_b: pad + 1 + separation,
            n_a,
            n_b,
            g_a,
            g_b: mirror / (n_b as f64).sqrt(),
            omega_a: 0.0,
            omega_b: 0.0,
            gamma0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n_sites == 0 {
            return bad("lattice needs at least one cavity".into());
        }
        if !(self.hopping.is_finite() && self.hopping > 0.0) {
            return bad(format!("hopping J must be > 0, got {}", self.hopping));
        }
        if !(1 <= self.x_a && self.x_a < self.x_b && self.x_b <= self.n_sites) {
            return bad(format!(
                "need 1 <= x_A < x_B <= N, got x_A = {}, x_B = {}, N = {}",
                self.x_a, self.x_b, self.n_sites
            ));
        }
        if self.n_a == 0 || self.n_b == 0 {
            return bad("ensemble sizes N_A, N_B must be >= 1".into());
        }
        if !(self.gamma0.is_finite() && self.gamma0 >= 0.0) {
            return bad(format!("gamma0 must be >= 0, got {}", self.gamma0));
        }
        for (name, v) in [
            ("g_A", self.g_a),
            ("g_B", self.g_b),
            ("omega_c", self.omega_c),
            ("omega_A", self.omega_a),
            ("omega_B", self.omega_b),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        if !self.separation().is_multiple_of(2) {
            return bad(format!(
                "separation x_B - x_A = {} must be even for destructive round-trip interference",
                self.separation()
            ));
        }
        Ok(())
    }

    /// Fail unless both chain ends are at least `2J·t_max` sites away.
    pub fn check_padding(&self, t_max: f64) -> Result<()> {
        let padding = (self.x_a - 1).min(self.n_sites - self.x_b);
        let required = 2.0 * self.hopping * t_max;
        if (padding as f64) < required {
            return Err(Error::CausalPadding { padding, required, t_max });
        }
        Ok(())
    }

    /// `Δx = x_B − x_A`.
    pub fn separation(&self) -> usize {
        self.x_b - self.x_a
    }

    /// Total dimension `N_A + N_B + N` of the single-excitation sector.
    pub fn dim(&self) -> usize {
        self.n_a + self.n_b + self.n_sites
    }

    /// `√N_B·g_B`.
    pub fn mirror_coupling(&self) -> f64 {
        (self.n_b as f64).sqrt() * self.g_b
    }

    /// Band-centre emission rate into the chain, `g_A²/J`.
    pub fn markovian_rate(&self) -> f64 {
        self.g_a * self.g_a / self.hopping
    }

    /// Index of cavity `x` (1-based) in the flat state vector.
    pub(crate) fn photon_index(&self, x: usize) -> usize {
        self.n_a + self.n_b + x - 1
    }
}

/// Peak group velocity of the band `ω_k = ω_c − 2J cos k`, reached at
/// `k = ±π/2`.
pub fn peak_group_velocity(hopping: f64) -> f64 {
    2.0 * hopping
}

/// Shortest time for a photon to travel from A to B and back: `Δx/J`.
pub fn round_trip_time(params: &CavityParams) -> f64 {
    2.0 * params.separation() as f64 / peak_group_velocity(params.hopping)
}

/// Phase collected on one A → B → A trip at `k = π/2`, including the π
/// from reflection at the mirror.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundTripPhase {
    pub total: f64,
    /// `total` reduced to `[0, 2π)`.
    pub reduced: f64,
    pub destructive: bool,
}

pub fn round_trip_phase(params: &CavityParams) -> RoundTripPhase {
    let dx = params.separation();
    let total = PI * dx as f64 + PI;
    // Δx is an integer, so the reduction is exact in units of π.
    let reduced = PI * ((dx + 1) % 2) as f64;
    let destructive = dx.is_multiple_of(2);
    if !destructive {
        log::warn!("separation {dx} is odd: round-trip phase {total:.6} ≡ 0 (mod 2π) interferes constructively");
    }
    RoundTripPhase { total, reduced, destructive }
}

/// Amplitudes of the single-excitation state.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub atoms_a: Vec<Complex64>,
    pub atoms_b: Vec<Complex64>,
    pub photons: Vec<Complex64>,
}

impl LatticeState {
    pub fn zeros(params: &CavityParams) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { atoms_a: vec![z; params.n_a], atoms_b: vec![z; params.n_b], photons: vec![z; params.n_sites] }
    }

    /// Split a flat `[A atoms | B atoms | cavities]` vector.
    pub fn from_flat(params: &CavityParams, flat: &[Complex64]) -> Self {
        let (a, rest) = flat.split_at(params.n_a);
        let (b, photons) = rest.split_at(params.n_b);
        Self { atoms_a: a.to_vec(), atoms_b: b.to_vec(), photons: photons.to_vec() }
    }

    pub fn to_flat(&self) -> Vec<Complex64> {
        self.atoms_a.iter().chain(&self.atoms_b).chain(&self.photons).copied().collect()
    }

    /// `Σ_j |c_{A,j}|²`.
    pub fn population_a(&self) -> f64 {
        self.atoms_a.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn population_b(&self) -> f64 {
        self.atoms_b.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.population_a() + self.population_b() + self.photons.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// `P(x) = |c_x|²` for `x = 1..=N` (index 0 is cavity 1).
    pub fn photon_distribution(&self) -> Vec<f64> {
        self.photons.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Initial single-excitation states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialStateKind {
    /// Only atom 1 of ensemble A excited.
    SingleAtom,
    /// `(1/√N_A)·Σ_j σ⁺_{A,j}`.
    Superradiant,
    /// Gaussian photon packet centred on cavity `center` with carrier `k0`
    /// and momentum width `sigma_k`.
    PhotonWavePacket { center: f64, k0: f64, sigma_k: f64 },
}

impl InitialStateKind {
    pub fn label(&self) -> &'static str {
        match self {
            InitialStateKind::SingleAtom => "single_atom",
            InitialStateKind::Superradiant => "superradiant",
            InitialStateKind::PhotonWavePacket { .. } => "photon_wave_packet",
        }
    }

    /// Normalised state for `params`.
    pub fn prepare(&self, params: &CavityParams) -> Result<LatticeState> {
        let mut state = LatticeState::zeros(params);
        match *self {
            InitialStateKind::SingleAtom => state.atoms_a[0] = Complex64::new(1.0, 0.0),
            InitialStateKind::Superradiant => {
                let amp = Complex64::new(1.0 / (params.n_a as f64).sqrt(), 0.0);
                state.atoms_a.iter_mut().for_each(|c| *c = amp);
            }
            InitialStateKind::PhotonWavePacket { center, k0, sigma_k } => {
                if !(sigma_k.is_finite() && sigma_k > 0.0 && center.is_finite() && k0.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "wave packet needs finite center/k0 and sigma_k > 0, got ({center}, {k0}, {sigma_k})"
                    )));
                }
                // |c_x|² ∝ exp(−(x − x0)²/(2σ_x²)) with σ_x = 1/(2σ_k).
                let sigma_x = 0.5 / sigma_k;
                for (i, c) in state.photons.iter_mut().enumerate() {
                    let x = (i + 1) as f64;
                    let envelope = (-(x - center).powi(2) / (4.0 * sigma_x * sigma_x)).exp();
                    *c = Complex64::from_polar(envelope, k0 * x);
                }
                let norm = state.norm_sqr().sqrt();
                if !(norm > 0.0) {
                    return Err(Error::InvalidParameter("wave packet lies outside the lattice".into()));
                }
                state.photons.iter_mut().for_each(|c| *c /= norm);
            }
        }
        Ok(state)
    }
}
