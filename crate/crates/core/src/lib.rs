//! Möbius quantum walk on an `N`-cycle.
//!
//! The walker carries a coin qubit `s`, which picks the direction of the next
//! hop, and a rotation qubit `r`, which is turned by `±θ/2` about `σ_x` on
//! every hop. After one trip around the cycle the rotation space has wound
//! `α = Nθ/2π` times, the Möbius factor.
//!
//! - [`walk`]: state vectors, parameters, and position-space stepping.
//! - [`spectral`]: momentum blocks, their eigensystems, and spectral evolution.
//! - [`limiting`]: degeneracy analysis and limiting distributions.
//! - [`mixing`]: distances, mixing times and the spectral convergence bound.
//! - [`oracle`]: a plain two-state coined walk on the cycle, for cross-checks.
//!
//! ```
//! use mobius_walk::walk::{evolve, position_distribution, WalkParams};
//!
//! let params = WalkParams::hadamard(5, 0.0)?;
//! let psi = evolve(&params.initial_state(), &params, 1)?;
//! let p = position_distribution(&psi);
//! assert!((p[1] - 0.5).abs() < 1e-12 && (p[4] - 0.5).abs() < 1e-12);
//! # Ok::<(), mobius_walk::WalkError>(())
//! ```

pub mod error;
pub mod limiting;
pub mod mixing;
pub mod oracle;
pub mod spectral;
pub mod walk;

pub use error::{Result, WalkError};
