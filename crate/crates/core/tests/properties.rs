use mobius_walk::limiting::{
    degeneracy_report, limiting_distribution_general, Distribution, DistributionKind, Provenance,
    DEGENERACY_TOL,
};
use mobius_walk::mixing::tv_distance;
use mobius_walk::spectral::{
    build_kblock, decompose_initial, eigensystem_numeric, fourier_forward, fourier_inverse,
    spectral_evolve, Eigensystem, Label,
};
use mobius_walk::walk::{
    apply_step, evolve, hadamard, make_params, position_distribution, InitialState, WalkParams,
    WalkerState,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn normalized(raw: Vec<(f64, f64)>) -> Vec<Complex64> {
    let v: Vec<Complex64> = raw.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `(N, α, ψ)` with a random normalized state of length `4N`.
fn walk_with_state(max_n: usize) -> impl Strategy<Value = (usize, f64, Vec<Complex64>)> {
    (2..=max_n, -6.0..6.0f64).prop_flat_map(|(n, alpha)| {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 4 * n)
            .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
            .prop_map(move |raw| (n, alpha, normalized(raw)))
    })
}

fn random_distribution(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, n).prop_filter_map("nonzero", |v| {
        let s: f64 = v.iter().sum();
        (s > 1e-6).then(|| v.iter().map(|x| x / s).collect())
    })
}

fn shift(amps: &[Complex64], n: usize, d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for c in 0..4 {
        for j in 0..n {
            out[c * n + (j + d) % n] = amps[c * n + j];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_preserves_norm((n, alpha, amps) in walk_with_state(30), t in 0usize..200) {
        let p = WalkParams::hadamard(n, alpha).unwrap();
        let psi = WalkerState::from_amplitudes(n, amps).unwrap();
        let out = evolve(&psi, &p, t).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
        let total: f64 = position_distribution(&out).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn step_is_linear(
        (n, alpha, x) in walk_with_state(16),
        seed in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 64),
        a in (-2.0..2.0f64, -2.0..2.0f64),
        b in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let y: Vec<Complex64> = (0..4 * n).map(|i| Complex64::new(seed[i % 64].0, seed[(i * 7) % 64].1)).collect();
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let p = WalkParams::hadamard(n, alpha).unwrap();
        let combo: Vec<_> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let zero = vec![Complex64::new(0.0, 0.0); 4 * n];
        let (mut ux, mut uy, mut uc) = (zero.clone(), zero.clone(), zero);
        apply_step(&p, &x, &mut ux).unwrap();
        apply_step(&p, &y, &mut uy).unwrap();
        apply_step(&p, &combo, &mut uc).unwrap();
        for i in 0..4 * n {
            prop_assert!((uc[i] - (a * ux[i] + b * uy[i])).norm() < 1e-12);
        }
    }

    #[test]
    fn alpha_shift_by_n_leaves_distributions_unchanged((n, alpha, amps) in walk_with_state(20), t in 0usize..60) {
        // θ → θ + 2π flips the sign of both rotations: a global (-1)^t phase
        let psi = WalkerState::from_amplitudes(n, amps).unwrap();
        let p1 = WalkParams::hadamard(n, alpha).unwrap();
        let p2 = WalkParams::hadamard(n, alpha + n as f64).unwrap();
        let d1 = position_distribution(&evolve(&psi, &p1, t).unwrap());
        let d2 = position_distribution(&evolve(&psi, &p2, t).unwrap());
        for (x, y) in d1.iter().zip(&d2) {
            prop_assert!((x - y).abs() < 1e-11);
        }
    }

    #[test]
    fn fourier_round_trip((n, _alpha, amps) in walk_with_state(40)) {
        let psi = WalkerState::from_amplitudes(n, amps).unwrap();
        let m = fourier_forward(&psi);
        prop_assert!((m.norm() - 1.0).abs() < 1e-12);
        let back = fourier_inverse(&m);
        for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn kblock_is_the_step_on_plane_waves(n in 2usize..30, alpha in -4.0..4.0f64, k_seed in 0usize..1000, raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 4)) {
        let k = k_seed % n;
        let p = WalkParams::hadamard(n, alpha).unwrap();
        let block = build_kblock(&p, k).unwrap();
        let phi = normalized(raw);
        let mut momentum = vec![Complex64::new(0.0, 0.0); 4 * n];
        for c in 0..4 {
            momentum[c * n + k] = phi[c];
        }
        let psi = fourier_inverse(&mobius_walk::spectral::MomentumState::new(n, momentum));
        let stepped = fourier_forward(&evolve(&psi, &p, 1).unwrap());
        let expected = block.matrix * nalgebra::Vector4::from_column_slice(&phi);
        for c in 0..4 {
            prop_assert!((stepped.amplitude(c / 2, c % 2, k) - expected[c]).norm() < 1e-10);
        }
    }

    #[test]
    fn eigensystem_reconstructs_blocks(n in 2usize..40, alpha in -4.0..4.0f64, k_seed in 0usize..1000) {
        let k = k_seed % n;
        let p = WalkParams::hadamard(n, alpha).unwrap();
        let block = build_kblock(&p, k).unwrap();
        let eig = Eigensystem::compute(&p).unwrap();
        let mut rebuilt = nalgebra::Matrix4::<Complex64>::zeros();
        for pair in &eig.blocks()[k] {
            prop_assert!((pair.eigenvalue.norm() - 1.0).abs() < 1e-12);
            rebuilt += pair.eigenvector * pair.eigenvector.adjoint() * pair.eigenvalue;
            // left zone for r = 0, right zone for r = 1
            if pair.label.r == 1 {
                prop_assert!(pair.eigenvalue.re >= -1e-10);
            } else {
                prop_assert!(pair.eigenvalue.re <= 1e-10);
            }
        }
        prop_assert!((rebuilt - block.matrix).norm() < 1e-10);
    }

    #[test]
    fn reversing_alpha_swaps_families(n in 2usize..30, alpha in -4.0..4.0f64, k_seed in 0usize..1000) {
        let k = k_seed % n;
        let fwd = eigensystem_numeric(&build_kblock(&WalkParams::hadamard(n, alpha).unwrap(), k).unwrap()).unwrap();
        let rev = eigensystem_numeric(&build_kblock(&WalkParams::hadamard(n, -alpha).unwrap(), k).unwrap()).unwrap();
        for r in 0..2 {
            let a = fwd[Label { s: 0, r }.index()].eigenvalue;
            let b = rev[Label { s: 1, r }.index()].eigenvalue;
            prop_assert!((a - b).norm() < 1e-10);
            let a = fwd[Label { s: 1, r }.index()].eigenvalue;
            let b = rev[Label { s: 0, r }.index()].eigenvalue;
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn spectral_and_direct_evolution_agree((n, alpha, amps) in walk_with_state(24), t in 0u64..300) {
        let p = WalkParams::hadamard(n, alpha).unwrap();
        let psi = WalkerState::from_amplitudes(n, amps).unwrap();
        let eig = Eigensystem::compute(&p).unwrap();
        let coeffs = decompose_initial(&psi, &eig).unwrap();
        prop_assert!((coeffs.total_weight() - 1.0).abs() < 1e-10);
        let a = spectral_evolve(&coeffs, &eig, t);
        let b = evolve(&psi, &p, t as usize).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn tv_distance_is_a_metric(
        (p, q, r) in (2usize..20).prop_flat_map(|n| (random_distribution(n), random_distribution(n), random_distribution(n)))
    ) {
        let pq = tv_distance(&p, &q).unwrap();
        let qp = tv_distance(&q, &p).unwrap();
        let pr = tv_distance(&p, &r).unwrap();
        let rq = tv_distance(&r, &q).unwrap();
        prop_assert_eq!(pq, qp);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
        prop_assert!(pq <= pr + rq + 1e-12);
        prop_assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn limiting_distribution_follows_translations(
        (n, amps) in (2usize..=13).prop_flat_map(|half| {
            let n = 2 * half;
            prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 4 * n)
                .prop_map(move |raw| (n, normalized(raw)))
        }),
        alpha in 0i32..4,
        d in 0usize..100,
    ) {
        let d = d % n;
        let base = WalkParams::hadamard(n, alpha as f64).unwrap();
        let p0 = base.with_initial(InitialState::FullVector(amps.clone())).unwrap();
        let p1 = base.with_initial(InitialState::FullVector(shift(&amps, n, d))).unwrap();
        let report = degeneracy_report(&base, DEGENERACY_TOL).unwrap();
        let a = limiting_distribution_general(&p0, &report).unwrap();
        let b = limiting_distribution_general(&p1, &report).unwrap();
        prop_assert!((a.total() - 1.0).abs() < 1e-9);
        prop_assert!(a.values().iter().all(|&x| x >= -1e-12));
        for v in 0..n {
            prop_assert!((b.values()[(v + d) % n] - a.values()[v]).abs() < 1e-10);
        }
    }
}

#[test]
fn non_unitary_coin_is_rejected() {
    let mut coin = hadamard();
    coin[(0, 0)] *= 1.01;
    assert!(matches!(
        make_params(6, 0.0, coin, InitialState::origin()),
        Err(mobius_walk::WalkError::NonUnitaryCoin { .. })
    ));
}

#[test]
fn distributions_are_normalized_and_clamped() {
    let d = Distribution::new(vec![0.5, 0.5, -1e-14], DistributionKind::Limiting, Provenance::GeneralSum);
    assert!(d.clamped().iter().all(|&x| x >= 0.0));
}
