use std::f64::consts::PI;

use crate::error::{Result, WalkError};
use crate::limiting::degeneracy::{family_sign, is_degenerate_regime, is_self_paired};
use crate::limiting::distribution::{Distribution, DistributionKind, Provenance};
use crate::walk::{InitialState, WalkParams};

/// Limiting distribution of the plain Hadamard walk on an even cycle started
/// at `|0⟩|p0⟩`:
///
/// `π(v) = 1/N + ((-1)^v / 2N²) Σ_k [cos(4πkv/N) - cos(4πk(v+1)/N)] / (1 + cos²(2πk/N))`
///
/// with `v` measured from `p0` and the self-paired momenta `k = N/4, 3N/4`
/// left out of the sum.
pub fn qwc_limiting_distribution(n_nodes: usize, p0: usize) -> Result<Distribution> {
    if n_nodes < 2 {
        return Err(WalkError::InvalidN(n_nodes));
    }
    if n_nodes % 2 == 1 {
        return Err(WalkError::OddNNotApplicable(n_nodes));
    }
    check_start(n_nodes, p0)?;
    let nf = n_nodes as f64;
    let values = (0..n_nodes)
        .map(|node| {
            let v = ((node + n_nodes - p0) % n_nodes) as f64;
            let sum: f64 = (0..n_nodes)
                .filter(|&k| !is_self_paired(n_nodes, 0.0, k, 1.0))
                .map(|k| {
                    let kf = k as f64;
                    let num = (4.0 * PI * kf * v / nf).cos() - (4.0 * PI * kf * (v + 1.0) / nf).cos();
                    num / (1.0 + (2.0 * PI * kf / nf).cos().powi(2))
                })
                .sum();
            1.0 / nf + parity(v) / (2.0 * nf * nf) * sum
        })
        .collect();
    Ok(Distribution::new(values, DistributionKind::Limiting, Provenance::ClosedForm))
}

/// Closed-form limiting distribution of the Hadamard Möbius walk in the
/// degenerate regime, started at `|0⟩|0⟩|p0⟩`:
///
/// `π(v) = 1/N + ((-1)^v / 4N²) Σ_± Σ_k [cos(2πv g/N) - cos(2π(v+1) g/N)] / (1 + cos²(2πk/N ± πα/N))`
///
/// with `g = 2k ± α`. Each family's sum skips its self-paired momenta.
pub fn limiting_distribution_closed_form(params: &WalkParams) -> Result<Distribution> {
    let n = params.n_nodes();
    let alpha = params.alpha();
    if !params.has_hadamard_coin() {
        return Err(WalkError::UnsupportedCoin(
            "the closed form is specific to the Hadamard coin".into(),
        ));
    }
    if !is_degenerate_regime(n, alpha) {
        return Err(WalkError::NotDegenerateRegime { n_nodes: n, alpha });
    }
    let p0 = match params.initial() {
        InitialState::Localized { s: 0, r: 0, j } => *j,
        other => {
            return Err(WalkError::UnsupportedInitialState(format!(
                "the closed form needs |s=0, r=0, j⟩, got {}",
                describe(other)
            )))
        }
    };
    let nf = n as f64;
    let values = (0..n)
        .map(|node| {
            let v = ((node + n - p0) % n) as f64;
            let mut sum = 0.0;
            for s in 0..2 {
                let sign = family_sign(s);
                for k in (0..n).filter(|&k| !is_self_paired(n, alpha, k, sign)) {
                    let kf = k as f64;
                    let g = 2.0 * kf + sign * alpha;
                    let num = (2.0 * PI * v * g / nf).cos() - (2.0 * PI * (v + 1.0) * g / nf).cos();
                    let den = 1.0 + (2.0 * PI * kf / nf + sign * PI * alpha / nf).cos().powi(2);
                    sum += num / den;
                }
            }
            1.0 / nf + parity(v) / (4.0 * nf * nf) * sum
        })
        .collect();
    Ok(Distribution::new(values, DistributionKind::Limiting, Provenance::ClosedForm))
}

fn parity(v: f64) -> f64 {
    if v as usize % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_start(n_nodes: usize, p0: usize) -> Result<()> {
    if p0 >= n_nodes {
        return Err(WalkError::InvalidArgument {
            name: "p0",
            reason: format!("start node {p0} is outside 0..{n_nodes}"),
        });
    }
    Ok(())
}

fn describe(initial: &InitialState) -> String {
    match initial {
        InitialState::Localized { s, r, j } => format!("|{s},{r},{j}⟩"),
        InitialState::FullVector(_) => "an explicit amplitude vector".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin(n: usize, alpha: f64) -> WalkParams {
        WalkParams::hadamard(n, alpha).unwrap()
    }

    #[test]
    fn qwc_is_normalized() {
        for n in (2..=40).step_by(2) {
            let d = qwc_limiting_distribution(n, 0).unwrap();
            assert!((d.total() - 1.0).abs() < 1e-10, "N={n}: {}", d.total());
            assert!(d.values().iter().all(|&x| x > -1e-12));
        }
    }

    #[test]
    fn qwc_rejects_odd_cycles() {
        assert_eq!(qwc_limiting_distribution(7, 0), Err(WalkError::OddNNotApplicable(7)));
    }

    #[test]
    fn qwc_on_24_nodes_has_hills_at_origin_and_antipode() {
        let d = qwc_limiting_distribution(24, 0).unwrap();
        let v = d.values();
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        assert!((v[0] - max).abs() < 1e-12);
        assert!((v[12] - max).abs() < 1e-12);
    }

    #[test]
    fn zero_alpha_reduces_to_qwc() {
        for n in [4, 10, 24, 26] {
            let a = limiting_distribution_closed_form(&origin(n, 0.0)).unwrap();
            let b = qwc_limiting_distribution(n, 0).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn closed_form_is_normalized() {
        for (n, alpha) in [(24, 1.0), (24, 2.0), (26, 1.0), (26, 2.0), (7, 0.5), (5, 1.5), (12, -3.0)] {
            let d = limiting_distribution_closed_form(&origin(n, alpha)).unwrap();
            assert!((d.total() - 1.0).abs() < 1e-9, "N={n} α={alpha}");
        }
    }

    #[test]
    fn shift_of_start_node_shifts_distribution() {
        let p = origin(24, 1.0)
            .with_initial(InitialState::Localized { s: 0, r: 0, j: 5 })
            .unwrap();
        let shifted = limiting_distribution_closed_form(&p).unwrap();
        let base = limiting_distribution_closed_form(&origin(24, 1.0)).unwrap();
        for v in 0..24 {
            assert!((shifted.values()[(v + 5) % 24] - base.values()[v]).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_domain() {
        assert_eq!(
            limiting_distribution_closed_form(&origin(24, 0.5)),
            Err(WalkError::NotDegenerateRegime { n_nodes: 24, alpha: 0.5 })
        );
        let p = origin(24, 1.0)
            .with_initial(InitialState::Localized { s: 1, r: 0, j: 0 })
            .unwrap();
        assert!(matches!(
            limiting_distribution_closed_form(&p),
            Err(WalkError::UnsupportedInitialState(_))
        ));
    }
}
