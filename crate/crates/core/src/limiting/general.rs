use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::limiting::degeneracy::DegeneracyReport;
use crate::limiting::distribution::{Distribution, DistributionKind, Provenance};
use crate::spectral::{
    decompose_initial, fourier_inverse, Eigensystem, MomentumState, SpectralPropagator,
};
use crate::walk::{position_distribution, WalkParams};

/// Limiting distribution for any initial state, from the eigensystem.
///
/// `π(v) = Σ_λ ‖(⟨v| ⊗ I) P_λ ψ₀‖²`, where `P_λ` projects onto the full
/// eigenspace of `λ`. Eigenpairs are grouped by eigenvalue (within
/// `report.tol`). A group confined to one momentum spreads its weight evenly,
/// `Σ|C|²/N` per node; a group spanning several momenta interferes and is
/// transformed back to position space. When the report has no pairs the
/// result is exactly `1/N`.
pub fn limiting_distribution_general(
    params: &WalkParams,
    report: &DegeneracyReport,
) -> Result<Distribution> {
    let n = params.n_nodes();
    if report.n_nodes != n {
        return Err(WalkError::InvalidArgument {
            name: "report",
            reason: format!("report is for {} nodes, walk has {n}", report.n_nodes),
        });
    }
    if report.is_uniform {
        return Ok(Distribution::uniform(n, DistributionKind::Limiting, Provenance::GeneralSum));
    }
    let eig = Eigensystem::compute(params)?;
    let coeffs = decompose_initial(&params.initial_state(), &eig)?;
    let pairs: Vec<_> = eig.iter().collect();

    let mut group = vec![usize::MAX; pairs.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..pairs.len() {
        if group[i] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![i];
        group[i] = id;
        let mut cursor = 0;
        while cursor < members.len() {
            let anchor = pairs[members[cursor]].eigenvalue;
            for j in i + 1..pairs.len() {
                if group[j] == usize::MAX && (pairs[j].eigenvalue - anchor).norm() < report.tol {
                    group[j] = id;
                    members.push(j);
                }
            }
            cursor += 1;
        }
        groups.push(members);
    }

    let nf = n as f64;
    let mut values = vec![0.0; n];
    let mut spread = 0.0;
    for members in &groups {
        let first_k = pairs[members[0]].k;
        if members.iter().all(|&m| pairs[m].k == first_k) {
            spread += members
                .iter()
                .map(|&m| coeffs.coefficient(pairs[m].label, pairs[m].k).norm_sqr())
                .sum::<f64>();
            continue;
        }
        let mut momentum = vec![Complex64::new(0.0, 0.0); 4 * n];
        for &m in members {
            let pair = pairs[m];
            let c = coeffs.coefficient(pair.label, pair.k);
            for comp in 0..4 {
                momentum[comp * n + pair.k] += c * pair.eigenvector[comp];
            }
        }
        let projected = fourier_inverse(&MomentumState::new(n, momentum));
        for (slot, p) in values.iter_mut().zip(position_distribution(&projected)) {
            *slot += p;
        }
    }
    for slot in &mut values {
        *slot += spread / nf;
    }
    Ok(Distribution::new(values, DistributionKind::Limiting, Provenance::GeneralSum))
}

/// `p̄_T(v) = (1/T) Σ_{t=1}^T p_t(v)`, each `p_t` from spectral evolution.
pub fn empirical_average_distribution(params: &WalkParams, t_max: u64) -> Result<Distribution> {
    if t_max == 0 {
        return Err(WalkError::InvalidArgument {
            name: "T",
            reason: "the averaging window must contain at least one step".into(),
        });
    }
    let eig = Eigensystem::compute(params)?;
    let prop = SpectralPropagator::new(&params.initial_state(), &eig)?;
    let mut sum = vec![0.0; params.n_nodes()];
    prop.for_each_distribution(1..=t_max, |_, p| {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
    });
    let scale = 1.0 / t_max as f64;
    sum.iter_mut().for_each(|x| *x *= scale);
    Ok(Distribution::new(sum, DistributionKind::Average, Provenance::Empirical))
}
