use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::spectral::eigen::analytic_eigenvalues;
use crate::walk::{rotation_matrices, WalkParams};

/// The restriction `M(k)` of one step to momentum `k`, as a 4×4 matrix over
/// the internal index `2s + r`.
#[derive(Debug, Clone, PartialEq)]
pub struct KBlock {
    pub k: usize,
    pub matrix: Matrix4<Complex64>,
    reference: Option<[Complex64; 4]>,
}

impl KBlock {
    /// Wraps an arbitrary 4×4 matrix. Blocks built this way carry no
    /// closed-form eigenvalues, so numeric labelling falls back to the
    /// half-plane and r-parity rules alone.
    pub fn from_matrix(k: usize, matrix: Matrix4<Complex64>) -> Self {
        KBlock {
            k,
            matrix,
            reference: None,
        }
    }

    /// Closed-form eigenvalues in [`Label::ALL`](super::Label::ALL) order,
    /// when the block came from [`build_kblock`].
    pub fn reference_eigenvalues(&self) -> Option<&[Complex64; 4]> {
        self.reference.as_ref()
    }

    /// Largest entry of `M M^† - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.matrix * self.matrix.adjoint() - Matrix4::identity();
        p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `M(k) = e^{-2πik/N} |0⟩⟨0|H ⊗ R(0) + e^{2πik/N} |1⟩⟨1|H ⊗ R(1)`.
pub fn build_kblock(params: &WalkParams, k: usize) -> Result<KBlock> {
    let n = params.n_nodes();
    if k >= n {
        return Err(WalkError::KOutOfRange { k, n_nodes: n });
    }
    let rot = rotation_matrices(params);
    let coin = params.coin();
    let kappa = 2.0 * PI * k as f64 / n as f64;
    let phases = [
        Complex64::from_polar(1.0, -kappa),
        Complex64::from_polar(1.0, kappa),
    ];
    let matrix = Matrix4::from_fn(|row, col| {
        let (s, r) = (row / 2, row % 2);
        let (sp, rp) = (col / 2, col % 2);
        phases[s] * coin[(s, sp)] * rot.for_coin_state(s)[(r, rp)]
    });
    let reference = params
        .has_hadamard_coin()
        .then(|| analytic_eigenvalues(n, params.theta(), k));
    Ok(KBlock {
        k,
        matrix,
        reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn zero_momentum_without_rotation_is_plain_hadamard() {
        let p = WalkParams::hadamard(6, 0.0).unwrap();
        let m = build_kblock(&p, 0).unwrap().matrix;
        let h = FRAC_1_SQRT_2;
        #[rustfmt::skip]
        let expected = [
            h, 0.0, h, 0.0,
            0.0, h, 0.0, h,
            h, 0.0, -h, 0.0,
            0.0, h, 0.0, -h,
        ];
        for row in 0..4 {
            for col in 0..4 {
                let z = m[(row, col)];
                assert!((z.re - expected[row * 4 + col]).abs() < 1e-15);
                assert!(z.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_theta_is_block_diagonal_in_r() {
        let p = WalkParams::hadamard(10, 0.0).unwrap();
        for k in 0..10 {
            let m = build_kblock(&p, k).unwrap().matrix;
            for row in 0..4 {
                for col in 0..4 {
                    if row % 2 != col % 2 {
                        assert_eq!(m[(row, col)].norm(), 0.0);
                    }
                }
            }
            // the two r-sectors carry identical 2x2 walk blocks
            for (s, sp) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert_eq!(m[(2 * s, 2 * sp)], m[(2 * s + 1, 2 * sp + 1)]);
            }
        }
    }

    #[test]
    fn blocks_are_unitary() {
        let p = WalkParams::hadamard(24, 1.0).unwrap();
        assert!(build_kblock(&p, 3).unwrap().unitarity_deviation() < 1e-12);
    }

    #[test]
    fn out_of_range_momentum() {
        let p = WalkParams::hadamard(4, 0.0).unwrap();
        assert_eq!(
            build_kblock(&p, 4).unwrap_err(),
            WalkError::KOutOfRange { k: 4, n_nodes: 4 }
        );
    }
}
