use nalgebra::Vector4;
use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::spectral::eigen::Eigensystem;
use crate::spectral::fourier::{fourier_forward, fourier_inverse, Dft, MomentumState};
use crate::spectral::Label;
use crate::walk::{write_position_distribution, WalkerState};

/// Expansion coefficients `C_{s,r,k} = ⟨χ_{s,r,k}|ψ̃_k⟩` of a state in the
/// eigenbasis, stored at `label.index() * N + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    n_nodes: usize,
    coefficients: Vec<Complex64>,
}

impl SpectralState {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, label: Label, k: usize) -> Complex64 {
        self.coefficients[label.index() * self.n_nodes + k]
    }

    /// `Σ |C|²`; equals the squared norm of the decomposed state.
    pub fn total_weight(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn check_complete(n_nodes: usize, eig: &Eigensystem) -> Result<()> {
    if eig.n_nodes() != n_nodes || !eig.is_complete() {
        return Err(WalkError::IncompleteEigensystem {
            expected: 4 * n_nodes,
            found: 4 * eig.blocks().len(),
        });
    }
    Ok(())
}

/// Projects `state` onto every eigenpair of `eig`.
pub fn decompose_initial(state: &WalkerState, eig: &Eigensystem) -> Result<SpectralState> {
    let n = state.n_nodes();
    check_complete(n, eig)?;
    let momentum = fourier_forward(state);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); 4 * n];
    for (k, block) in eig.blocks().iter().enumerate() {
        let psi = Vector4::from(momentum.block(k));
        for pair in block {
            coefficients[pair.label.index() * n + k] = pair.eigenvector.dotc(&psi);
        }
    }
    Ok(SpectralState {
        n_nodes: n,
        coefficients,
    })
}

/// `|ψ_t⟩ = Σ C_{s,r,k} Λ_{s,r,k}^t |χ_{s,r,k}⟩|κ_k⟩` in position space.
///
/// # Panics
///
/// Panics if `coeffs` and `eig` describe different cycle sizes.
pub fn spectral_evolve(coeffs: &SpectralState, eig: &Eigensystem, t: u64) -> WalkerState {
    let n = coeffs.n_nodes;
    assert_eq!(n, eig.n_nodes(), "coefficients and eigensystem disagree on N");
    let mut momentum = vec![Complex64::new(0.0, 0.0); 4 * n];
    for (k, block) in eig.blocks().iter().enumerate() {
        for pair in block {
            let w = coeffs.coefficient(pair.label, k) * power(pair.eigenphase, t);
            for c in 0..4 {
                momentum[c * n + k] += w * pair.eigenvector[c];
            }
        }
    }
    fourier_inverse(&MomentumState::new(n, momentum))
}

/// `Λ^t` for a unit-modulus `Λ = e^{iφ}`, evaluated without repeated products.
#[inline]
fn power(phase: f64, t: u64) -> Complex64 {
    Complex64::from_polar(1.0, phase * t as f64)
}

/// Precomputed spectral evolution of one initial state: each time point costs
/// `4N` phase evaluations plus four inverse FFTs.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    n_nodes: usize,
    /// `C_i χ_i` per eigenpair, indexed `k * 4 + label`.
    weighted: Vec<Vector4<Complex64>>,
    phases: Vec<f64>,
    dft: Dft,
}

impl SpectralPropagator {
    pub fn new(state: &WalkerState, eig: &Eigensystem) -> Result<Self> {
        let coeffs = decompose_initial(state, eig)?;
        let n = state.n_nodes();
        let mut weighted = Vec::with_capacity(4 * n);
        let mut phases = Vec::with_capacity(4 * n);
        for (k, block) in eig.blocks().iter().enumerate() {
            for pair in block {
                weighted.push(pair.eigenvector * coeffs.coefficient(pair.label, k));
                phases.push(pair.eigenphase);
            }
        }
        Ok(SpectralPropagator {
            n_nodes: n,
            weighted,
            phases,
            dft: Dft::new(n),
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    fn momentum_at(&self, t: u64, out: &mut [Complex64]) {
        let n = self.n_nodes;
        out.fill(Complex64::new(0.0, 0.0));
        for (i, (w, phi)) in self.weighted.iter().zip(&self.phases).enumerate() {
            let k = i / 4;
            let z = power(*phi, t);
            for c in 0..4 {
                out[c * n + k] += w[c] * z;
            }
        }
    }

    /// Position amplitudes after `t` steps, in the flat [`WalkerState`] layout.
    pub fn amplitudes_at(&self, t: u64) -> Vec<Complex64> {
        let n = self.n_nodes;
        let mut out = vec![Complex64::new(0.0, 0.0); 4 * n];
        self.amplitudes_into(t, &mut out, &mut self.dft.scratch());
        out
    }

    fn amplitudes_into(&self, t: u64, out: &mut [Complex64], scratch: &mut [Complex64]) {
        self.momentum_at(t, out);
        self.dft.inverse(out, scratch);
    }

    pub fn state_at(&self, t: u64) -> WalkerState {
        WalkerState::from_raw(self.n_nodes, self.amplitudes_at(t))
    }

    /// Overwrites `out` with the position distribution after `t` steps.
    pub fn distribution_at(&self, t: u64, out: &mut [f64]) {
        let amps = self.amplitudes_at(t);
        write_position_distribution(self.n_nodes, &amps, out);
    }

    /// Calls `f(t, p_t)` for each `t` in `times`, reusing internal buffers.
    pub fn for_each_distribution<I, F>(&self, times: I, mut f: F)
    where
        I: IntoIterator<Item = u64>,
        F: FnMut(u64, &[f64]),
    {
        let n = self.n_nodes;
        let mut amps = vec![Complex64::new(0.0, 0.0); 4 * n];
        let mut scratch = self.dft.scratch();
        let mut p = vec![0.0; n];
        for t in times {
            self.amplitudes_into(t, &mut amps, &mut scratch);
            write_position_distribution(n, &amps, &mut p);
            f(t, &p);
        }
    }
}
