//! Position-space representation of the walk.
//!
//! The walker lives in `coin ⊗ rotation ⊗ position`, i.e. `C² ⊗ C² ⊗ C^N`.
//! Amplitudes are stored flat with index `s·2N + r·N + j`, so the four
//! internal components `c = 2s + r` are contiguous blocks of length `N`.
//!
//! One step is `U = S (H ⊗ I_R ⊗ I_P)`: the coin mixes `s`, then the shift
//! moves `|s, r, j⟩` to `|s⟩ R(s)|r⟩ |j + (-1)^s mod N⟩`, where
//! `R(s) = cos(θ/2) I - i (-1)^s sin(θ/2) σ_x` rotates the internal `r`
//! space in the direction set by the coin. With `θ = 0` the rotation is the
//! identity and the walk reduces to the ordinary Hadamard walk on a cycle.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Entrywise tolerance for `C C^† = I`.
pub const UNITARY_TOL: f64 = 1e-12;
/// Tolerance on the norm of a user supplied initial vector.
pub const INITIAL_NORM_TOL: f64 = 1e-12;
/// Tolerance on the norm of an evolved state.
pub const STATE_NORM_TOL: f64 = 1e-10;

pub type Coin = Matrix2<Complex64>;

/// The Hadamard coin `(1/√2) [[1, 1], [1, -1]]`.
pub fn hadamard() -> Coin {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

/// Where the walker starts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitialState {
    /// A single basis state `|s, r, j⟩`.
    Localized { s: usize, r: usize, j: usize },
    /// An explicit amplitude vector of length `4N` in the flat layout.
    FullVector(Vec<Complex64>),
}

impl InitialState {
    /// `|0⟩|0⟩|0⟩`, the starting point used throughout the figures.
    pub fn origin() -> Self {
        InitialState::Localized { s: 0, r: 0, j: 0 }
    }
}

/// A validated problem instance.
///
/// `theta` is always derived from `alpha` as `2πα/N`; it cannot be set
/// independently.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkParams {
    n_nodes: usize,
    alpha: f64,
    theta: f64,
    coin: Coin,
    initial: InitialState,
}

/// Validates and builds a [`WalkParams`].
pub fn make_params(
    n_nodes: usize,
    alpha: f64,
    coin: Coin,
    initial: InitialState,
) -> Result<WalkParams> {
    if n_nodes < 2 {
        return Err(WalkError::InvalidN(n_nodes));
    }
    if !alpha.is_finite() {
        return Err(WalkError::InvalidArgument {
            name: "alpha",
            reason: format!("must be finite, got {alpha}"),
        });
    }
    let deviation = unitarity_deviation(&coin);
    if deviation.is_nan() || deviation > UNITARY_TOL {
        return Err(WalkError::NonUnitaryCoin { deviation });
    }
    validate_initial(n_nodes, &initial)?;
    Ok(WalkParams {
        n_nodes,
        alpha,
        theta: 2.0 * PI * alpha / n_nodes as f64,
        coin,
        initial,
    })
}

fn unitarity_deviation(coin: &Coin) -> f64 {
    let product = coin * coin.adjoint();
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let target = if i == j { 1.0 } else { 0.0 };
            let d = (product[(i, j)] - Complex64::new(target, 0.0)).norm();
            worst = worst.max(d);
        }
    }
    // NaN entries must fail validation
    if product.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return f64::INFINITY;
    }
    worst
}

fn validate_initial(n_nodes: usize, initial: &InitialState) -> Result<()> {
    match initial {
        InitialState::Localized { s, r, j } => {
            if *s > 1 || *r > 1 {
                return Err(WalkError::BadInitialState(format!(
                    "coin and rotation labels must be 0 or 1, got s = {s}, r = {r}"
                )));
            }
            if *j >= n_nodes {
                return Err(WalkError::BadInitialState(format!(
                    "node {j} out of range for {n_nodes} nodes"
                )));
            }
        }
        InitialState::FullVector(amps) => {
            if amps.len() != 4 * n_nodes {
                return Err(WalkError::BadInitialState(format!(
                    "expected {} amplitudes, got {}",
                    4 * n_nodes,
                    amps.len()
                )));
            }
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm.is_nan() || (norm - 1.0).abs() > INITIAL_NORM_TOL {
                return Err(WalkError::BadInitialState(format!(
                    "vector norm is {norm}, expected 1"
                )));
            }
        }
    }
    Ok(())
}

impl WalkParams {
    /// Hadamard walk with `N` nodes and Möbius factor `alpha`, starting at `|0,0,0⟩`.
    pub fn hadamard(n_nodes: usize, alpha: f64) -> Result<Self> {
        make_params(n_nodes, alpha, hadamard(), InitialState::origin())
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Number of complete rotations of the internal space per trip around the cycle.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Rotation angle per step, `2πα/N`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn coin(&self) -> &Coin {
        &self.coin
    }

    pub fn initial(&self) -> &InitialState {
        &self.initial
    }

    /// Same walk, different starting state.
    pub fn with_initial(&self, initial: InitialState) -> Result<Self> {
        validate_initial(self.n_nodes, &initial)?;
        Ok(WalkParams {
            initial,
            ..self.clone()
        })
    }

    /// True when the coin equals the Hadamard matrix to within [`UNITARY_TOL`].
    pub fn has_hadamard_coin(&self) -> bool {
        let h = hadamard();
        self.coin
            .iter()
            .zip(h.iter())
            .all(|(a, b)| (a - b).norm() <= UNITARY_TOL)
    }

    /// Dimension of the full Hilbert space, `4N`.
    pub fn dim(&self) -> usize {
        4 * self.n_nodes
    }

    /// Materializes the initial state.
    pub fn initial_state(&self) -> WalkerState {
        match &self.initial {
            InitialState::Localized { s, r, j } => {
                WalkerState::localized(self.n_nodes, *s, *r, *j)
                    .expect("validated at construction")
            }
            InitialState::FullVector(amps) => WalkerState {
                n_nodes: self.n_nodes,
                amplitudes: amps.clone(),
            },
        }
    }
}

/// Amplitudes `Ψ_{s,r,j}` in the flat `s·2N + r·N + j` layout.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    n_nodes: usize,
    amplitudes: Vec<Complex64>,
}

/// Flat index of `|s, r, j⟩` for a cycle of `n_nodes`.
#[inline]
pub fn flat_index(n_nodes: usize, s: usize, r: usize, j: usize) -> usize {
    (2 * s + r) * n_nodes + j
}

impl WalkerState {
    pub fn localized(n_nodes: usize, s: usize, r: usize, j: usize) -> Result<Self> {
        if n_nodes < 2 {
            return Err(WalkError::InvalidN(n_nodes));
        }
        validate_initial(n_nodes, &InitialState::Localized { s, r, j })?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 4 * n_nodes];
        amplitudes[flat_index(n_nodes, s, r, j)] = Complex64::new(1.0, 0.0);
        Ok(WalkerState {
            n_nodes,
            amplitudes,
        })
    }

    /// Wraps an amplitude vector, checking its length and unit norm (within 1e-10).
    pub fn from_amplitudes(n_nodes: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_nodes < 2 {
            return Err(WalkError::InvalidN(n_nodes));
        }
        if amplitudes.len() != 4 * n_nodes {
            return Err(WalkError::DimensionMismatch {
                expected: 4 * n_nodes,
                found: amplitudes.len(),
            });
        }
        let state = WalkerState {
            n_nodes,
            amplitudes,
        };
        let norm = state.norm();
        if norm.is_nan() || (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(WalkError::BadInitialState(format!(
                "vector norm is {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    pub(crate) fn from_raw(n_nodes: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 4 * n_nodes);
        WalkerState {
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

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, s: usize, r: usize, j: usize) -> Complex64 {
        self.amplitudes[flat_index(self.n_nodes, s, r, j)]
    }

    /// L2 norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Probability of each rotation label, summed over coin and position.
    pub fn rotation_marginal(&self) -> [f64; 2] {
        let n = self.n_nodes;
        let mut out = [0.0; 2];
        for s in 0..2 {
            for (r, slot) in out.iter_mut().enumerate() {
                let start = flat_index(n, s, r, 0);
                *slot += self.amplitudes[start..start + n]
                    .iter()
                    .map(|a| a.norm_sqr())
                    .sum::<f64>();
            }
        }
        out
    }
}

/// The conditional rotations `R(0)` and `R(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrices {
    pub r0: Matrix2<Complex64>,
    pub r1: Matrix2<Complex64>,
}

impl RotationMatrices {
    pub fn for_coin_state(&self, s: usize) -> &Matrix2<Complex64> {
        if s == 0 {
            &self.r0
        } else {
            &self.r1
        }
    }
}

/// `R(s) = cos(θ/2) I - i (-1)^s sin(θ/2) σ_x` for both coin states.
pub fn rotation_matrices(params: &WalkParams) -> RotationMatrices {
    rotations_for_theta(params.theta())
}

pub(crate) fn rotations_for_theta(theta: f64) -> RotationMatrices {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let build = |sign: f64| {
        let off = Complex64::new(0.0, -sign * (theta / 2.0).sin());
        Matrix2::new(c, off, off, c)
    };
    RotationMatrices {
        r0: build(1.0),
        r1: build(-1.0),
    }
}

/// Applies one step to a raw amplitude slice, writing into `out`.
///
/// Both slices must have length `4N`. The map is linear, so it is also usable
/// on unnormalized vectors.
pub fn apply_step(params: &WalkParams, input: &[Complex64], out: &mut [Complex64]) -> Result<()> {
    let n = params.n_nodes;
    for len in [input.len(), out.len()] {
        if len != 4 * n {
            return Err(WalkError::DimensionMismatch {
                expected: 4 * n,
                found: len,
            });
        }
    }
    let coin = &params.coin;
    let rot = rotation_matrices(params);
    for j in 0..n {
        let forward = (j + 1) % n;
        let backward = (j + n - 1) % n;
        for s in 0..2 {
            // coin mix for both rotation components at node j
            let mixed = [0, 1].map(|r| {
                coin[(s, 0)] * input[flat_index(n, 0, r, j)]
                    + coin[(s, 1)] * input[flat_index(n, 1, r, j)]
            });
            let rs = rot.for_coin_state(s);
            let target = if s == 0 { forward } else { backward };
            for r in 0..2 {
                out[flat_index(n, s, r, target)] = rs[(r, 0)] * mixed[0] + rs[(r, 1)] * mixed[1];
            }
        }
    }
    Ok(())
}

/// One step `S (H ⊗ I_R ⊗ I_P)`. The input is left untouched.
pub fn step(state: &WalkerState, params: &WalkParams) -> Result<WalkerState> {
    check_dims(state, params)?;
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    apply_step(params, &state.amplitudes, &mut out)?;
    Ok(WalkerState::from_raw(state.n_nodes, out))
}

/// `t` repeated steps; `t = 0` returns a copy of the input.
pub fn evolve(state: &WalkerState, params: &WalkParams, t: usize) -> Result<WalkerState> {
    check_dims(state, params)?;
    let mut current = state.amplitudes.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); current.len()];
    for _ in 0..t {
        apply_step(params, &current, &mut next)?;
        std::mem::swap(&mut current, &mut next);
    }
    Ok(WalkerState::from_raw(state.n_nodes, current))
}

fn check_dims(state: &WalkerState, params: &WalkParams) -> Result<()> {
    if state.amplitudes.len() != params.dim() {
        return Err(WalkError::DimensionMismatch {
            expected: params.dim(),
            found: state.amplitudes.len(),
        });
    }
    Ok(())
}

/// `p(v) = Σ_{s,r} |Ψ_{s,r,v}|²`.
pub fn position_distribution(state: &WalkerState) -> Vec<f64> {
    let mut p = vec![0.0; state.n_nodes];
    write_position_distribution(state.n_nodes, &state.amplitudes, &mut p);
    p
}

/// Writes the position distribution of a flat amplitude slice into `out`.
pub(crate) fn write_position_distribution(n: usize, amps: &[Complex64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for block in amps.chunks_exact(n) {
        for (slot, a) in out.iter_mut().zip(block) {
            *slot += a.norm_sqr();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_derived_from_alpha() {
        let p = WalkParams::hadamard(8, 0.0).unwrap();
        assert_eq!(p.theta(), 0.0);
        let p = WalkParams::hadamard(24, 1.0).unwrap();
        assert_abs_diff_eq!(p.theta(), PI / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_unitary_coin() {
        let bad = Matrix2::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0));
        let err = make_params(8, 0.5, bad, InitialState::origin()).unwrap_err();
        assert!(matches!(err, WalkError::NonUnitaryCoin { .. }));
    }

    #[test]
    fn rejects_small_n_and_bad_initial_states() {
        assert_eq!(WalkParams::hadamard(1, 0.0).unwrap_err(), WalkError::InvalidN(1));
        let err = make_params(4, 0.0, hadamard(), InitialState::Localized { s: 0, r: 0, j: 4 })
            .unwrap_err();
        assert!(matches!(err, WalkError::BadInitialState(_)));
        let short = InitialState::FullVector(vec![c(1.0, 0.0); 3]);
        assert!(matches!(
            make_params(4, 0.0, hadamard(), short),
            Err(WalkError::BadInitialState(_))
        ));
        let mut unnormalized = vec![c(0.0, 0.0); 16];
        unnormalized[0] = c(0.5, 0.0);
        assert!(matches!(
            make_params(4, 0.0, hadamard(), InitialState::FullVector(unnormalized)),
            Err(WalkError::BadInitialState(_))
        ));
    }

    #[test]
    fn rotations_at_special_angles() {
        let id = Matrix2::<Complex64>::identity();
        let rot = rotations_for_theta(0.0);
        assert_eq!(rot.r0, id);
        assert_eq!(rot.r1, id);

        let rot = rotations_for_theta(PI);
        let sx = Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let minus_i_sx = sx * c(0.0, -1.0);
        let plus_i_sx = sx * c(0.0, 1.0);
        for (a, b) in rot.r0.iter().zip(minus_i_sx.iter()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
        for (a, b) in rot.r1.iter().zip(plus_i_sx.iter()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn rotations_are_mutual_adjoints() {
        let p = WalkParams::hadamard(24, 1.0).unwrap();
        let rot = rotation_matrices(&p);
        let prod = rot.r0 * rot.r1;
        let id = Matrix2::<Complex64>::identity();
        for (a, b) in prod.iter().zip(id.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
        for (a, b) in rot.r1.iter().zip(rot.r0.adjoint().iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn first_step_from_origin_splits_to_neighbours() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        let psi = step(&p.initial_state(), &p).unwrap();
        let h = FRAC_1_SQRT_2;
        for s in 0..2 {
            for r in 0..2 {
                for j in 0..5 {
                    let expected = match (s, r, j) {
                        (0, 0, 1) | (1, 0, 4) => h,
                        _ => 0.0,
                    };
                    assert_abs_diff_eq!(psi.amplitude(s, r, j).re, expected, epsilon = 1e-15);
                    assert_abs_diff_eq!(psi.amplitude(s, r, j).im, 0.0, epsilon = 1e-15);
                }
            }
        }
        let p1 = position_distribution(&psi);
        assert_abs_diff_eq!(p1[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p1[4], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn zero_alpha_never_populates_r1() {
        let p = WalkParams::hadamard(7, 0.0).unwrap();
        let psi = evolve(&p.initial_state(), &p, 137).unwrap();
        let [m0, m1] = psi.rotation_marginal();
        assert_abs_diff_eq!(m0, 1.0, epsilon = 1e-12);
        assert_eq!(m1, 0.0);
    }

    #[test]
    fn long_runs_preserve_norm() {
        let p = WalkParams::hadamard(24, 1.0).unwrap();
        let psi = evolve(&p.initial_state(), &p, 100).unwrap();
        assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-10);
        let total: f64 = position_distribution(&psi).iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn evolve_composes_steps() {
        let p = WalkParams::hadamard(6, 0.37).unwrap();
        let psi0 = p.initial_state();
        assert_eq!(evolve(&psi0, &p, 0).unwrap(), psi0);
        let twice = step(&step(&psi0, &p).unwrap(), &p).unwrap();
        assert_eq!(evolve(&psi0, &p, 2).unwrap(), twice);
    }

    #[test]
    fn localized_distribution_is_one_hot() {
        let psi = WalkerState::localized(6, 0, 0, 3).unwrap();
        assert_eq!(position_distribution(&psi), vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = WalkParams::hadamard(6, 0.0).unwrap();
        let psi = WalkerState::localized(5, 0, 0, 0).unwrap();
        assert_eq!(
            step(&psi, &p).unwrap_err(),
            WalkError::DimensionMismatch {
                expected: 24,
                found: 20
            }
        );
    }
}
