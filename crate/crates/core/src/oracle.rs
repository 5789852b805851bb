//! A plain Hadamard walk on an `N`-cycle with a single coin qubit.
//!
//! It shares no code with [`crate::walk`] and serves as a reference: with
//! `α = 0` and the rotation qubit in `|0⟩`, the Möbius walk must reproduce
//! its position distributions exactly.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// State of the two-component walk: `amps[s][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QwcState {
    amps: [Vec<Complex64>; 2],
}

impl QwcState {
    /// `|s⟩|j⟩` on an `n`-cycle.
    pub fn localized(n: usize, s: usize, j: usize) -> Result<Self> {
        if n < 2 {
            return Err(WalkError::InvalidN(n));
        }
        if s > 1 || j >= n {
            return Err(WalkError::BadInitialState(format!("|{s},{j}⟩ on {n} nodes")));
        }
        let mut amps = [vec![Complex64::new(0.0, 0.0); n], vec![Complex64::new(0.0, 0.0); n]];
        amps[s][j] = Complex64::new(1.0, 0.0);
        Ok(QwcState { amps })
    }

    pub fn n_nodes(&self) -> usize {
        self.amps[0].len()
    }

    /// One Hadamard coin toss followed by the conditional shift
    /// `|0, j⟩ → |0, j+1⟩`, `|1, j⟩ → |1, j-1⟩`.
    pub fn step(&self) -> QwcState {
        let n = self.n_nodes();
        let mut next = [vec![Complex64::new(0.0, 0.0); n], vec![Complex64::new(0.0, 0.0); n]];
        for j in 0..n {
            let (a, b) = (self.amps[0][j], self.amps[1][j]);
            next[0][(j + 1) % n] = (a + b) * FRAC_1_SQRT_2;
            next[1][(j + n - 1) % n] = (a - b) * FRAC_1_SQRT_2;
        }
        QwcState { amps: next }
    }

    pub fn distribution(&self) -> Vec<f64> {
        (0..self.n_nodes())
            .map(|j| self.amps[0][j].norm_sqr() + self.amps[1][j].norm_sqr())
            .collect()
    }
}

/// Position distributions `p_0, …, p_t_max` of the walk started at `|s⟩|j⟩`.
pub fn qwc_distributions(n: usize, s: usize, j: usize, t_max: usize) -> Result<Vec<Vec<f64>>> {
    let mut state = QwcState::localized(n, s, j)?;
    let mut out = Vec::with_capacity(t_max + 1);
    out.push(state.distribution());
    for _ in 0..t_max {
        state = state.step();
        out.push(state.distribution());
    }
    Ok(out)
}
