//! Momentum-space structure of the walk.
//!
//! The step operator commutes with translations around the cycle, so in the
//! Fourier basis `|κ_k⟩` it splits into `N` independent 4×4 unitaries `M(k)`
//! acting on the internal `(s, r)` space. Each block has a closed-form
//! eigensystem ([`eigensystem_analytic`]); a Schur-based numeric solver
//! ([`eigensystem_numeric`]) serves as fallback and cross-check. With the
//! eigensystem in hand, `t` steps cost one phase multiplication per eigenpair
//! ([`spectral_evolve`]).

mod eigen;
mod evolution;
mod fourier;
mod kblock;

use serde::{Deserialize, Serialize};

pub use eigen::{
    analytic_eigenvalues, eigensystem_analytic, eigensystem_numeric, eigenphase, AnalyticOutcome,
    EigenPair, EigenSource, Eigensystem, ANALYTIC_ACCEPT_TOL,
};
pub use evolution::{decompose_initial, spectral_evolve, SpectralPropagator, SpectralState};
pub use fourier::{fourier_forward, fourier_inverse, MomentumState};
pub use kblock::{build_kblock, KBlock};

/// Eigenvalue label `(s, r)`.
///
/// `s = 0` marks the δ family and `s = 1` the σ family; `r = 0` marks the
/// eigenvalue in the left half-plane (`-e^{±i·}`) and `r = 1` the one in the
/// right half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub s: usize,
    pub r: usize,
}

impl Label {
    pub const ALL: [Label; 4] = [
        Label { s: 0, r: 0 },
        Label { s: 0, r: 1 },
        Label { s: 1, r: 0 },
        Label { s: 1, r: 1 },
    ];

    /// Position of the label in [`Label::ALL`], `2s + r`.
    pub fn index(self) -> usize {
        2 * self.s + self.r
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.s, self.r)
    }
}
