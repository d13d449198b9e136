//! Spectral-synthesis reference for [`super::evolve`].
//!
//! Identical atoms couple to their cavity only through the symmetric
//! combination, so each ensemble splits into one bright mode and `N_i − 1`
//! dark modes that evolve as `e^{−i(ω_i − iγ₀/2)t}` on their own. The bright
//! modes and the chain form an `(N + 2)`-dimensional matrix that is
//! diagonalised in full: Hermitian eigensolver when `γ₀ = 0`, complex Schur
//! form plus triangular back-substitution otherwise.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;

use super::{CavityParams, EffectiveHamiltonian, InitialStateKind, LatticeState, LatticeTrajectory};
use crate::error::{Error, Result};

/// Largest full dimension `N_A + N_B + N` accepted by the oracle.
pub const MAX_ORACLE_DIM: usize = 400;

/// Eigenvector matrices with a larger condition estimate are rejected.
const MAX_CONDITION: f64 = 1e10;

struct Spectrum {
    values: DVector<Complex64>,
    vectors: DMatrix<Complex64>,
    inverse: DMatrix<Complex64>,
}

fn reduced_matrix(h: &EffectiveHamiltonian) -> DMatrix<Complex64> {
    let p = h.params();
    let m = p.n_sites + 2;
    let mut r = DMatrix::zeros(m, m);
    let (ea, eb) = h.atomic_energies();
    r[(0, 0)] = ea;
    r[(1, 1)] = eb;
    let ga = Complex64::new((p.n_a as f64).sqrt() * p.g_a, 0.0);
    let gb = Complex64::new(p.mirror_coupling(), 0.0);
    let (ia, ib) = (1 + p.x_a, 1 + p.x_b);
    r[(0, ia)] = ga;
    r[(ia, 0)] = ga;
    r[(1, ib)] = gb;
    r[(ib, 1)] = gb;
    for x in 0..p.n_sites {
        r[(2 + x, 2 + x)] = Complex64::new(h.cavity_energy(), 0.0);
        if x + 1 < p.n_sites {
            r[(2 + x, 3 + x)] = Complex64::new(-p.hopping, 0.0);
            r[(3 + x, 2 + x)] = Complex64::new(-p.hopping, 0.0);
        }
    }
    r
}

fn hermitian_spectrum(r: DMatrix<Complex64>) -> Spectrum {
    let eig = SymmetricEigen::new(r);
    let vectors = eig.eigenvectors;
    Spectrum { values: eig.eigenvalues.map(|e| Complex64::new(e, 0.0)), inverse: vectors.adjoint(), vectors }
}

/// Right eigenvectors of an upper-triangular matrix by back-substitution.
fn triangular_eigenvectors(t: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let m = t.nrows();
    let scale = t.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let floor = f64::EPSILON * scale;
    let mut x = DMatrix::zeros(m, m);
    for k in 0..m {
        let lambda = t[(k, k)];
        x[(k, k)] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in i + 1..=k {
                acc += t[(i, l)] * x[(l, k)];
            }
            let mut denom = t[(i, i)] - lambda;
            if denom.norm() < floor {
                denom = Complex64::new(floor, 0.0);
            }
            x[(i, k)] = -acc / denom;
        }
    }
    x
}

fn general_spectrum(r: DMatrix<Complex64>) -> Result<Spectrum> {
    let m = r.nrows();
    let schur =
        Schur::try_new(r, f64::EPSILON, 1000 * m).ok_or(Error::Decomposition("Schur iteration did not converge"))?;
    let (q, t) = schur.unpack();
    let values = t.diagonal();
    let mut vectors = q * triangular_eigenvectors(&t);
    for mut col in vectors.column_iter_mut() {
        let n = col.norm();
        col /= Complex64::new(n, 0.0);
    }
    let inverse = vectors.clone().try_inverse().ok_or(Error::Defective { condition: f64::INFINITY })?;
    let condition = vectors.norm() * inverse.norm() / values.len() as f64;
    if !(condition.is_finite() && condition <= MAX_CONDITION) {
        return Err(Error::Defective { condition });
    }
    Ok(Spectrum { values, vectors, inverse })
}

/// Exact states at `times` (rotating frame, like [`super::evolve`]).
pub fn exact_diag_oracle(params: &CavityParams, init: InitialStateKind, times: &[f64]) -> Result<LatticeTrajectory> {
    if params.dim() > MAX_ORACLE_DIM {
        return Err(Error::InvalidParameter(format!(
            "oracle limited to dimension {MAX_ORACLE_DIM}, got {}",
            params.dim()
        )));
    }
    let h = EffectiveHamiltonian::rotating(params)?;
    let psi0 = init.prepare(params)?;
    let r = reduced_matrix(&h);
    let spectrum = if params.gamma0 == 0.0 { hermitian_spectrum(r) } else { general_spectrum(r)? };

    // Bright/dark split of the initial ensembles.
    let split = |amps: &[Complex64]| {
        let n = amps.len() as f64;
        let mean = amps.iter().sum::<Complex64>() / n;
        let dark: Vec<Complex64> = amps.iter().map(|a| a - mean).collect();
        (mean * n.sqrt(), dark)
    };
    let (bright_a, dark_a) = split(&psi0.atoms_a);
    let (bright_b, dark_b) = split(&psi0.atoms_b);
    let mut reduced0 = DVector::zeros(params.n_sites + 2);
    reduced0[0] = bright_a;
    reduced0[1] = bright_b;
    for (x, c) in psi0.photons.iter().enumerate() {
        reduced0[2 + x] = *c;
    }
    let coeffs = &spectrum.inverse * reduced0;
    let (ea, eb) = h.atomic_energies();
    let minus_i = Complex64::new(0.0, -1.0);

    let mut traj = LatticeTrajectory::with_capacity(times.len(), times.len());
    for &t in times {
        let phases = DVector::from_iterator(
            coeffs.len(),
            coeffs.iter().zip(spectrum.values.iter()).map(|(c, e)| c * (minus_i * e * t).exp()),
        );
        let red = &spectrum.vectors * phases;
        let (pa, pb) = ((minus_i * ea * t).exp(), (minus_i * eb * t).exp());
        let sa = (params.n_a as f64).sqrt();
        let sb = (params.n_b as f64).sqrt();
        let state = LatticeState {
            atoms_a: dark_a.iter().map(|d| red[0] / sa + d * pa).collect(),
            atoms_b: dark_b.iter().map(|d| red[1] / sb + d * pb).collect(),
            photons: red.iter().skip(2).copied().collect(),
        };
        traj.record(t, &state, true);
    }
    Ok(traj)
}
