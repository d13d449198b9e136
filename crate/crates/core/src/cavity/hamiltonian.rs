use nalgebra::DMatrix;
use num_complex::Complex64;

use super::CavityParams;
use crate::error::Result;

/// Sparse single-excitation Hamiltonian: tridiagonal chain plus atom-cavity
/// couplings. Energies are measured from `frame`, so `frame = ω_c` gives
/// the rotating frame used for time evolution.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    params: CavityParams,
    frame: f64,
}

/// Lab-frame effective Hamiltonian for `params`.
pub fn build_effective_hamiltonian(params: &CavityParams) -> Result<EffectiveHamiltonian> {
    EffectiveHamiltonian::new(params, 0.0)
}

impl EffectiveHamiltonian {
    pub fn new(params: &CavityParams, frame: f64) -> Result<Self> {
        params.validate()?;
        Ok(Self { params: *params, frame })
    }

    /// Hamiltonian in the frame rotating at the cavity frequency.
    pub fn rotating(params: &CavityParams) -> Result<Self> {
        Self::new(params, params.omega_c)
    }

    pub fn params(&self) -> &CavityParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// Complex atomic energies `ω_i − frame − iγ₀/2` for ensembles A and B.
    pub fn atomic_energies(&self) -> (Complex64, Complex64) {
        let p = &self.params;
        let loss = -0.5 * p.gamma0;
        (Complex64::new(p.omega_a - self.frame, loss), Complex64::new(p.omega_b - self.frame, loss))
    }

    pub fn cavity_energy(&self) -> f64 {
        self.params.omega_c - self.frame
    }

    /// `out = H·psi` on flat `[A | B | cavities]` vectors, in fixed site order.
    pub fn apply(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let p = &self.params;
        let (ea, eb) = self.atomic_energies();
        let (na, nb, n) = (p.n_a, p.n_b, p.n_sites);
        let off = na + nb;
        let ca = psi[p.photon_index(p.x_a)];
        let cb = psi[p.photon_index(p.x_b)];

        let mut sum_a = Complex64::new(0.0, 0.0);
        for j in 0..na {
            out[j] = ea * psi[j] + ca * p.g_a;
            sum_a += psi[j];
        }
        let mut sum_b = Complex64::new(0.0, 0.0);
        for j in na..off {
            out[j] = eb * psi[j] + cb * p.g_b;
            sum_b += psi[j];
        }

        let ec = self.cavity_energy();
        let hop = -p.hopping;
        let photons = &psi[off..];
        let dest = &mut out[off..];
        for x in 0..n {
            let mut acc = photons[x] * ec;
            if x > 0 {
                acc += photons[x - 1] * hop;
            }
            if x + 1 < n {
                acc += photons[x + 1] * hop;
            }
            dest[x] = acc;
        }
        dest[p.x_a - 1] += sum_a * p.g_a;
        dest[p.x_b - 1] += sum_b * p.g_b;
    }

    /// Dense copy of the matrix.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let p = &self.params;
        let dim = self.dim();
        let mut h = DMatrix::zeros(dim, dim);
        let (ea, eb) = self.atomic_energies();
        let (ia, ib) = (p.photon_index(p.x_a), p.photon_index(p.x_b));
        for j in 0..p.n_a {
            h[(j, j)] = ea;
            h[(j, ia)] = Complex64::new(p.g_a, 0.0);
            h[(ia, j)] = Complex64::new(p.g_a, 0.0);
        }
        for j in p.n_a..p.n_a + p.n_b {
            h[(j, j)] = eb;
            h[(j, ib)] = Complex64::new(p.g_b, 0.0);
            h[(ib, j)] = Complex64::new(p.g_b, 0.0);
        }
        for x in 1..=p.n_sites {
            let i = p.photon_index(x);
            h[(i, i)] = Complex64::new(self.cavity_energy(), 0.0);
            if x < p.n_sites {
                h[(i, i + 1)] = Complex64::new(-p.hopping, 0.0);
                h[(i + 1, i)] = Complex64::new(-p.hopping, 0.0);
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use std::f64::consts::PI;

    fn params(n: usize, x_a: usize, x_b: usize, n_a: usize, n_b: usize, g: (f64, f64), gamma0: f64) -> CavityParams {
        CavityParams {
            n_sites: n,
            hopping: 1.0,
            omega_c: 0.3,
            x_a,
            x_b,
            n_a,
            n_b,
            g_a: g.0,
            g_b: g.1,
            omega_a: 0.3,
            omega_b: 0.3,
            gamma0,
        }
    }

    #[test]
    fn open_chain_spectrum() {
        let p = params(3, 1, 3, 1, 1, (0.0, 0.0), 0.1);
        let h = build_effective_hamiltonian(&p).unwrap().to_dense();
        let photonic = h.view((2, 2), (3, 3)).into_owned().map(|c| c.re);
        let mut ev: Vec<f64> = photonic.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        for (k, e) in ev.iter().enumerate() {
            let expected = 0.3 - 2.0 * ((k + 1) as f64 * PI / 4.0).cos();
            assert!((e - expected).abs() < 1e-12, "{e} vs {expected}");
        }
    }

    #[test]
    fn uncoupled_blocks() {
        let p = params(5, 1, 5, 2, 1, (0.0, 0.0), 0.1);
        let h = build_effective_hamiltonian(&p).unwrap().to_dense();
        for j in 0..3 {
            assert_eq!(h[(j, j)], Complex64::new(0.3, -0.05));
            for k in 3..h.nrows() {
                assert_eq!(h[(j, k)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn complex_symmetric() {
        let p = params(9, 3, 7, 3, 2, (0.4, 0.7), 0.2);
        let h = build_effective_hamiltonian(&p).unwrap().to_dense();
        assert_eq!(h, h.transpose());
        assert_ne!(h, h.adjoint());
    }

    #[test]
    fn sparse_action_matches_dense() {
        let p = params(11, 3, 9, 3, 2, (0.4, 0.7), 0.2);
        let h = EffectiveHamiltonian::rotating(&p).unwrap();
        let psi: Vec<Complex64> =
            (0..p.dim()).map(|i| Complex64::new((i as f64).sin(), (2.0 * i as f64).cos())).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); p.dim()];
        h.apply(&psi, &mut out);
        let dense = h.to_dense() * DVector::from_vec(psi);
        for (a, b) in out.iter().zip(dense.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn ensemble_couples_through_symmetric_mode() {
        // Rotate ensemble B to the discrete Fourier basis: only the q = 0
        // (symmetric) mode couples to cavity x_B, with strength √N_B·g_B.
        let n_b = 4;
        let p = params(9, 3, 7, 1, n_b, (0.2, 1.0), 0.05);
        let h = build_effective_hamiltonian(&p).unwrap().to_dense();
        let dim = p.dim();
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        for q in 0..n_b {
            for j in 0..n_b {
                let phase = 2.0 * PI * (q * j) as f64 / n_b as f64;
                u[(1 + j, 1 + q)] = Complex64::from_polar(1.0 / (n_b as f64).sqrt(), phase);
            }
        }
        let rotated = u.adjoint() * &h * &u;
        let ib = p.photon_index(p.x_b);
        assert!((rotated[(1, ib)] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((rotated[(1, ib)] - Complex64::new(p.mirror_coupling(), 0.0)).norm() < 1e-14);
        for q in 1..n_b {
            assert!(rotated[(1 + q, ib)].norm() < 1e-14);
        }
    }
}
