//! Discrete Fourier transform over the position index.
//!
//! The synthesis basis is `|κ_k⟩ = N^{-1/2} Σ_n e^{2πikn/N} |n⟩`, so the forward
//! transform (projection onto `κ_k`) carries `e^{-2πikn/N}`. Both directions
//! are unitary.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::walk::WalkerState;

/// Amplitudes `ψ̃_{s,r,k}` in the same flat layout as [`WalkerState`], with the
/// position index replaced by the momentum index.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    n_nodes: usize,
    amplitudes: Vec<Complex64>,
}

impl MomentumState {
    pub fn new(n_nodes: usize, amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), 4 * n_nodes, "momentum state must have 4N entries");
        MomentumState {
            n_nodes,
            amplitudes,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, s: usize, r: usize, k: usize) -> Complex64 {
        self.amplitudes[(2 * s + r) * self.n_nodes + k]
    }

    /// The internal 4-vector `(ψ̃_{0,0,k}, ψ̃_{0,1,k}, ψ̃_{1,0,k}, ψ̃_{1,1,k})`.
    pub fn block(&self, k: usize) -> [Complex64; 4] {
        std::array::from_fn(|c| self.amplitudes[c * self.n_nodes + k])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Unitary DFT of length `N` in both directions, backed by precomputed FFT plans.
#[derive(Clone)]
pub(crate) struct Dft {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
    scratch_len: usize,
}

impl std::fmt::Debug for Dft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("len", &self.forward.len()).finish()
    }
}

impl Dft {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Dft {
            forward,
            inverse,
            scale: 1.0 / (n as f64).sqrt(),
            scratch_len,
        }
    }

    pub(crate) fn scratch(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.scratch_len]
    }

    /// `x_k ← N^{-1/2} Σ_n e^{-2πikn/N} x_n`, on every length-`N` chunk of `buf`.
    pub(crate) fn forward(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.forward.process_with_scratch(buf, scratch);
        buf.iter_mut().for_each(|x| *x *= self.scale);
    }

    /// `x_n ← N^{-1/2} Σ_k e^{2πikn/N} x_k`, on every length-`N` chunk of `buf`.
    pub(crate) fn inverse(&self, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        self.inverse.process_with_scratch(buf, scratch);
        buf.iter_mut().for_each(|x| *x *= self.scale);
    }
}

/// `ψ̃_{s,r,k} = N^{-1/2} Σ_n e^{-2πikn/N} Ψ_{s,r,n}`.
pub fn fourier_forward(state: &WalkerState) -> MomentumState {
    let n = state.n_nodes();
    let dft = Dft::new(n);
    let mut out = state.amplitudes().to_vec();
    dft.forward(&mut out, &mut dft.scratch());
    MomentumState::new(n, out)
}

/// Adjoint of [`fourier_forward`]: synthesizes position amplitudes from `|κ_k⟩`.
pub fn fourier_inverse(momentum: &MomentumState) -> WalkerState {
    let n = momentum.n_nodes();
    let dft = Dft::new(n);
    let mut out = momentum.amplitudes().to_vec();
    dft.inverse(&mut out, &mut dft.scratch());
    WalkerState::from_raw(n, out)
}
