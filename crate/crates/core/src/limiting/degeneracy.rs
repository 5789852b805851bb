use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::spectral::{Eigensystem, Label};
use crate::walk::WalkParams;

/// Default complex-distance tolerance for calling two eigenvalues equal.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Tolerance on `2α` when deciding whether `α` is an integer or half-integer.
pub const ALPHA_CLASS_TOL: f64 = 1e-9;

/// Arithmetic class of the Möbius factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlphaClass {
    /// `2α` is not an integer.
    NonHalfInteger,
    IntegerAlpha,
    /// `α ∈ Z + 1/2`.
    HalfIntegerAlpha,
}

impl AlphaClass {
    pub fn of(alpha: f64) -> Self {
        let twice = 2.0 * alpha;
        let nearest = twice.round();
        if (twice - nearest).abs() >= ALPHA_CLASS_TOL {
            AlphaClass::NonHalfInteger
        } else if nearest.rem_euclid(2.0) == 0.0 {
            AlphaClass::IntegerAlpha
        } else {
            AlphaClass::HalfIntegerAlpha
        }
    }
}

/// True when `(N, α)` lies in the regime where same-label eigenvalues collide
/// across momenta: even `N` with integer `α`, or odd `N` with half-integer `α`.
pub fn is_degenerate_regime(n_nodes: usize, alpha: f64) -> bool {
    matches!(
        (n_nodes % 2, AlphaClass::of(alpha)),
        (0, AlphaClass::IntegerAlpha) | (1, AlphaClass::HalfIntegerAlpha)
    )
}

/// Sign `∓` attached to `α` in the family's arguments: `-1` for the δ family
/// (`s = 0`), `+1` for the σ family (`s = 1`).
pub fn family_sign(s: usize) -> f64 {
    if s == 0 {
        -1.0
    } else {
        1.0
    }
}

/// True when `k + sign·α/2 ≡ N/4` or `3N/4 (mod N)`, i.e. the family's
/// pairing map `k ↦ N/2 - k - sign·α` sends `k` to itself.
pub fn is_self_paired(n_nodes: usize, alpha: f64, k: usize, sign: f64) -> bool {
    let half = n_nodes as f64 / 2.0;
    let x = (k as f64 + sign * alpha / 2.0 - n_nodes as f64 / 4.0) / half;
    (x - x.round()).abs() * half < ALPHA_CLASS_TOL
}

/// Consistency of a pair with `k' ≡ nN/2 - k ± α (mod N)`.
///
/// Modulo `N` every odd `n` gives the same residue, so `n` is reported as 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexRelation {
    pub n: i64,
    /// `+1` or `-1`, the sign in front of `α`.
    pub sign: i8,
}

fn index_relation(n_nodes: usize, alpha: f64, k: usize, k_prime: usize) -> Option<IndexRelation> {
    let nf = n_nodes as f64;
    [1i8, -1].into_iter().find_map(|sign| {
        let x = (nf / 2.0 - k as f64 + sign as f64 * alpha - k_prime as f64) / nf;
        ((x - x.round()).abs() * nf < ALPHA_CLASS_TOL).then_some(IndexRelation { n: 1, sign })
    })
}

/// Two eigenpairs with the same label and equal eigenvalues at distinct momenta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneratePair {
    pub label: Label,
    pub k: usize,
    pub k_prime: usize,
    /// `|Λ_{k} - Λ_{k'}|`.
    pub gap: f64,
    /// `None` when the index formula does not account for the pair.
    pub relation: Option<IndexRelation>,
}

/// Same-label eigenvalue coincidences across momenta, and what they imply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub n_nodes: usize,
    pub alpha: f64,
    pub pairs: Vec<DegeneratePair>,
    /// No pairs: every eigenvalue is shared only within its own momentum
    /// block, and the limiting distribution is uniform.
    pub is_uniform: bool,
    pub alpha_class: AlphaClass,
    /// Momenta that a family pairs with themselves, sorted.
    pub excluded_k: Vec<usize>,
    pub tol: f64,
}

impl DegeneracyReport {
    /// True when every pair is explained by the index formula.
    pub fn index_formula_consistent(&self) -> bool {
        self.pairs.iter().all(|p| p.relation.is_some())
    }
}

/// Scans all `k < k'` for same-label eigenvalues closer than `tol`.
pub fn degeneracy_report(params: &WalkParams, tol: f64) -> Result<DegeneracyReport> {
    let eig = Eigensystem::compute(params)?;
    Ok(degeneracy_report_from(params, &eig, tol))
}

/// [`degeneracy_report`] on a precomputed eigensystem.
pub fn degeneracy_report_from(params: &WalkParams, eig: &Eigensystem, tol: f64) -> DegeneracyReport {
    let n = params.n_nodes();
    let alpha = params.alpha();
    let mut pairs = Vec::new();
    for label in Label::ALL {
        for k in 0..n {
            for k_prime in k + 1..n {
                let gap = (eig.pair(label, k).eigenvalue - eig.pair(label, k_prime).eigenvalue).norm();
                if gap < tol {
                    pairs.push(DegeneratePair {
                        label,
                        k,
                        k_prime,
                        gap,
                        relation: index_relation(n, alpha, k, k_prime),
                    });
                }
            }
        }
    }
    let excluded_k = (0..n)
        .filter(|&k| is_self_paired(n, alpha, k, -1.0) || is_self_paired(n, alpha, k, 1.0))
        .collect();
    DegeneracyReport {
        n_nodes: n,
        alpha,
        is_uniform: pairs.is_empty(),
        pairs,
        alpha_class: AlphaClass::of(alpha),
        excluded_k,
        tol,
    }
}

/// Any two distinct eigenpairs (labels may differ) whose eigenvalues are
/// closer than `tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coincidence {
    pub first: (Label, usize),
    pub second: (Label, usize),
    pub gap: f64,
}

pub fn eigenvalue_coincidences(eig: &Eigensystem, tol: f64) -> Vec<Coincidence> {
    let all: Vec<_> = eig.iter().collect();
    let mut out = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let gap = (a.eigenvalue - b.eigenvalue).norm();
            if gap < tol {
                out.push(Coincidence {
                    first: (a.label, a.k),
                    second: (b.label, b.k),
                    gap,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_classes() {
        assert_eq!(AlphaClass::of(0.0), AlphaClass::IntegerAlpha);
        assert_eq!(AlphaClass::of(-3.0), AlphaClass::IntegerAlpha);
        assert_eq!(AlphaClass::of(2.5), AlphaClass::HalfIntegerAlpha);
        assert_eq!(AlphaClass::of(-0.5), AlphaClass::HalfIntegerAlpha);
        assert_eq!(AlphaClass::of(0.3), AlphaClass::NonHalfInteger);
        assert_eq!(AlphaClass::of(1.0 + 1e-6), AlphaClass::NonHalfInteger);
        assert_eq!(AlphaClass::of(1.0 + 1e-12), AlphaClass::IntegerAlpha);
    }

    #[test]
    fn odd_cycle_without_rotation_is_uniform() {
        let r = degeneracy_report(&WalkParams::hadamard(5, 0.0).unwrap(), DEGENERACY_TOL).unwrap();
        assert!(r.is_uniform);
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn generic_alpha_is_uniform() {
        let r = degeneracy_report(&WalkParams::hadamard(8, 0.3).unwrap(), DEGENERACY_TOL).unwrap();
        assert!(r.is_uniform);
        assert_eq!(r.alpha_class, AlphaClass::NonHalfInteger);
        assert!(r.excluded_k.is_empty());
    }

    #[test]
    fn integer_alpha_on_even_cycle_pairs_momenta() {
        let r = degeneracy_report(&WalkParams::hadamard(24, 1.0).unwrap(), DEGENERACY_TOL).unwrap();
        assert!(!r.is_uniform);
        assert!(r.index_formula_consistent());
        for p in &r.pairs {
            let sum = (p.k + p.k_prime) % 24;
            assert!(sum == 13 || sum == 11, "{p:?}");
            assert!(p.gap < 1e-9);
        }
        // k - 1/2 and k + 1/2 never hit 6 or 18 for integer k
        assert!(r.excluded_k.is_empty());
    }

    #[test]
    fn self_paired_momenta() {
        // N = 24, α = 2: k - 1 ∈ {6, 18} or k + 1 ∈ {6, 18}
        let r = degeneracy_report(&WalkParams::hadamard(24, 2.0).unwrap(), DEGENERACY_TOL).unwrap();
        assert_eq!(r.excluded_k, vec![5, 7, 17, 19]);
        for p in &r.pairs {
            assert_ne!(p.k, p.k_prime);
        }
    }

    #[test]
    fn degenerate_regime_membership() {
        assert!(is_degenerate_regime(24, 1.0));
        assert!(is_degenerate_regime(7, 0.5));
        assert!(!is_degenerate_regime(7, 1.0));
        assert!(!is_degenerate_regime(24, 0.5));
        assert!(!is_degenerate_regime(24, 0.3));
    }
}
