//! Convergence of the time-averaged distribution to its limit.
//!
//! Distances are total variation, `½ Σ_v |p(v) - q(v)|`. The spectral bound
//!
//! `‖π - p̄_t‖ ≤ (2/t) Σ_{i,j: λ_i ≠ λ_j} |C_i|² / |λ_i - λ_j|`
//!
//! decays as `1/t`; [`empirical_mixing_time`] measures the actual decay.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::limiting::{
    degeneracy_report_from, limiting_distribution_general, Distribution, DEGENERACY_TOL,
};
use crate::spectral::{decompose_initial, Eigensystem, SpectralPropagator, SpectralState};
use crate::walk::WalkParams;

/// Total variation distance between two distributions.
pub fn distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    tv_distance(p.values(), q.values())
}

/// Total variation distance between two raw probability vectors.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(WalkError::LengthMismatch(p.len(), q.len()));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// `Σ_{i,j: |λ_i - λ_j| > tol} |C_i|² / |λ_i - λ_j|`, the time-independent
/// part of the bound.
pub fn bound_constant(coeffs: &SpectralState, eig: &Eigensystem) -> f64 {
    let pairs: Vec<_> = eig.iter().collect();
    let mut total = 0.0;
    for a in &pairs {
        let weight = coeffs.coefficient(a.label, a.k).norm_sqr();
        if weight == 0.0 {
            continue;
        }
        for b in &pairs {
            let gap = (a.eigenvalue - b.eigenvalue).norm();
            if gap > DEGENERACY_TOL {
                total += weight / gap;
            }
        }
    }
    total
}

/// Bound on `‖π - p̄_t‖` after `t` steps; infinite at `t = 0`.
pub fn convergence_bound(coeffs: &SpectralState, eig: &Eigensystem, t: u64) -> f64 {
    bound_at(bound_constant(coeffs, eig), t)
}

fn bound_at(constant: f64, t: u64) -> f64 {
    if t == 0 {
        f64::INFINITY
    } else {
        2.0 * constant / t as f64
    }
}

/// Smallest distance between two eigenvalues that are not equal within
/// the degeneracy tolerance; `None` when all eigenvalues coincide.
pub fn min_eigen_gap(eig: &Eigensystem) -> Option<f64> {
    let values: Vec<_> = eig.iter().map(|p| p.eigenvalue).collect();
    let mut best: Option<f64> = None;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let gap = (a - b).norm();
            if gap > DEGENERACY_TOL && best.map_or(true, |g| gap < g) {
                best = Some(gap);
            }
        }
    }
    best
}

/// Distance used for the series in a [`MixingReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    TotalVariation,
}

/// Outcome of a mixing-time scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingTime {
    /// `p̄_t` stays within `ε` of `π` from this step up to the end of the scan.
    Reached(u64),
    NotReached { t_max: u64 },
}

impl MixingTime {
    pub fn steps(self) -> Option<u64> {
        match self {
            MixingTime::Reached(t) => Some(t),
            MixingTime::NotReached { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingReport {
    pub epsilon: f64,
    pub m_epsilon: MixingTime,
    /// `(t, ‖π - p̄_t‖)` for every `t = 1..=t_max`.
    pub distance_series: Vec<(u64, f64)>,
    /// `(t, bound_t)` at the same times.
    pub bound_series: Vec<(u64, f64)>,
    pub norm_kind: NormKind,
    pub min_gap: Option<f64>,
    pub limiting: Distribution,
}

impl MixingReport {
    /// Largest `d_t - bound_t` over the series; non-positive when the bound holds.
    pub fn worst_bound_excess(&self) -> f64 {
        self.distance_series
            .iter()
            .zip(&self.bound_series)
            .map(|((_, d), (_, b))| d - b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn distance_at(&self, t: u64) -> Option<f64> {
        let i = usize::try_from(t).ok()?.checked_sub(1)?;
        self.distance_series.get(i).map(|&(_, d)| d)
    }
}

/// Scans `t = 1..=t_max`, tracking `‖π - p̄_t‖` with a running mean, and
/// returns the first `T` after which every distance is at most `epsilon`.
pub fn empirical_mixing_time(params: &WalkParams, epsilon: f64, t_max: u64) -> Result<MixingReport> {
    if epsilon.is_nan() || epsilon <= 0.0 || epsilon.is_infinite() {
        return Err(WalkError::InvalidArgument {
            name: "epsilon",
            reason: format!("must be positive and finite, got {epsilon}"),
        });
    }
    if t_max == 0 {
        return Err(WalkError::InvalidArgument {
            name: "t_max",
            reason: "must be at least 1".into(),
        });
    }
    let eig = Eigensystem::compute(params)?;
    let report = degeneracy_report_from(params, &eig, DEGENERACY_TOL);
    let limiting = limiting_distribution_general(params, &report)?;
    let state = params.initial_state();
    let coeffs = decompose_initial(&state, &eig)?;
    let constant = bound_constant(&coeffs, &eig);
    let prop = SpectralPropagator::new(&state, &eig)?;

    let n = params.n_nodes();
    let mut sum = vec![0.0; n];
    let mut mean = vec![0.0; n];
    let mut distance_series = Vec::with_capacity(t_max as usize);
    let mut bound_series = Vec::with_capacity(t_max as usize);
    let pi = limiting.values().to_vec();
    prop.for_each_distribution(1..=t_max, |t, p| {
        let scale = 1.0 / t as f64;
        for ((s, m), x) in sum.iter_mut().zip(mean.iter_mut()).zip(p) {
            *s += x;
            *m = *s * scale;
        }
        let d = tv_distance(&pi, &mean).expect("same length");
        distance_series.push((t, d));
        bound_series.push((t, bound_at(constant, t)));
    });

    let last_violation = distance_series.iter().rev().find(|(_, d)| *d > epsilon);
    let m_epsilon = match last_violation {
        None => MixingTime::Reached(1),
        Some(&(t, _)) if t == t_max => MixingTime::NotReached { t_max },
        Some(&(t, _)) => MixingTime::Reached(t + 1),
    };
    Ok(MixingReport {
        epsilon,
        m_epsilon,
        distance_series,
        bound_series,
        norm_kind: NormKind::TotalVariation,
        min_gap: min_eigen_gap(&eig),
        limiting,
    })
}

/// About `per_decade` logarithmically spaced integer times in `1..=t_max`,
/// always including both ends, strictly increasing.
pub fn log_spaced_times(t_max: u64, per_decade: usize) -> Vec<u64> {
    if t_max == 0 {
        return Vec::new();
    }
    let decades = (t_max as f64).log10();
    let count = ((decades * per_decade as f64).ceil() as usize).max(1);
    let mut out: Vec<u64> = (0..=count)
        .map(|i| 10f64.powf(decades * i as f64 / count as f64).round() as u64)
        .map(|t| t.clamp(1, t_max))
        .collect();
    out.dedup();
    out
}

/// Least-squares slope of `log d` against `log t` over samples with
/// `t_lo ≤ t ≤ t_hi` and `d > 0`. `None` with fewer than two usable samples.
pub fn log_log_slope(series: &[(u64, f64)], t_lo: u64, t_hi: u64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, d)| *t >= t_lo && *t <= t_hi && *d > 0.0)
        .map(|&(t, d)| ((t as f64).ln(), d.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limiting::{DistributionKind, Provenance};
    use crate::spectral::{fourier_inverse, Label, MomentumState};

    fn dist(v: Vec<f64>) -> Distribution {
        Distribution::new(v, DistributionKind::Instant, Provenance::Empirical)
    }

    #[test]
    fn distance_examples() {
        let p = dist(vec![0.25; 4]);
        assert_eq!(distance(&p, &p).unwrap(), 0.0);
        let a = dist(vec![1.0, 0.0, 0.0]);
        let b = dist(vec![0.0, 1.0, 0.0]);
        assert_eq!(distance(&a, &b).unwrap(), 1.0);
        let half = dist(vec![0.5, 0.5, 0.0, 0.0]);
        assert!((distance(&p, &half).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(distance(&a, &p), Err(WalkError::LengthMismatch(3, 4)));
    }

    #[test]
    fn bound_scales_as_inverse_time() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        let eig = Eigensystem::compute(&p).unwrap();
        let c = decompose_initial(&p.initial_state(), &eig).unwrap();
        let b1 = convergence_bound(&c, &eig, 100);
        let b2 = convergence_bound(&c, &eig, 200);
        assert_eq!(b1, 2.0 * b2);
        assert!(convergence_bound(&c, &eig, 0).is_infinite());
    }

    #[test]
    fn bound_for_a_single_eigenvector() {
        let p = WalkParams::hadamard(6, 0.3).unwrap();
        let eig = Eigensystem::compute(&p).unwrap();
        let target = eig.pair(Label { s: 0, r: 1 }, 4).clone();
        let mut momentum = vec![num_complex::Complex64::new(0.0, 0.0); 24];
        for c in 0..4 {
            momentum[c * 6 + 4] = target.eigenvector[c];
        }
        let psi = fourier_inverse(&MomentumState::new(6, momentum));
        let coeffs = decompose_initial(&psi, &eig).unwrap();
        let expected: f64 = eig
            .iter()
            .map(|q| (q.eigenvalue - target.eigenvalue).norm())
            .filter(|&g| g > DEGENERACY_TOL)
            .map(|g| 2.0 / (10.0 * g))
            .sum();
        let got = convergence_bound(&coeffs, &eig, 10);
        assert!((got - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn huge_epsilon_mixes_immediately() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        let r = empirical_mixing_time(&p, 2.0, 50).unwrap();
        assert_eq!(r.m_epsilon, MixingTime::Reached(1));
        assert_eq!(r.distance_series.len(), 50);
    }

    #[test]
    fn tiny_epsilon_is_not_reached() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        let r = empirical_mixing_time(&p, 1e-9, 50).unwrap();
        assert_eq!(r.m_epsilon, MixingTime::NotReached { t_max: 50 });
    }

    #[test]
    fn distance_stays_under_bound() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        let r = empirical_mixing_time(&p, 0.05, 2000).unwrap();
        assert!(r.worst_bound_excess() <= 1e-9);
        assert!(r.m_epsilon.steps().is_some());
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = WalkParams::hadamard(5, 0.0).unwrap();
        assert!(empirical_mixing_time(&p, 0.0, 10).is_err());
        assert!(empirical_mixing_time(&p, f64::NAN, 10).is_err());
        assert!(empirical_mixing_time(&p, 0.1, 0).is_err());
    }

    #[test]
    fn log_spacing() {
        let ts = log_spaced_times(10_000, 5);
        assert_eq!(ts.first(), Some(&1));
        assert_eq!(ts.last(), Some(&10_000));
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        assert!(ts.contains(&100) && ts.contains(&1000));
        assert_eq!(log_spaced_times(1, 5), vec![1]);
    }

    #[test]
    fn slope_of_power_law() {
        let series: Vec<_> = (1..1000).map(|t| (t, 3.0 / t as f64)).collect();
        let s = log_log_slope(&series, 10, 999).unwrap();
        assert!((s + 1.0).abs() < 1e-12);
    }
}
