use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use nalgebra::{DMatrix, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};
use crate::spectral::kblock::{build_kblock, KBlock};
use crate::spectral::Label;
use crate::walk::WalkParams;

/// Residual and pre-normalization norm thresholds for accepting the closed form.
pub const ANALYTIC_ACCEPT_TOL: f64 = 1e-8;

/// Numeric eigenvalues closer than this are treated as one eigenspace when
/// choosing a basis inside it.
const CLUSTER_TOL: f64 = 1e-11;

const SCHUR_MAX_ITER: usize = 10_000;

/// One eigenpair of a momentum block `M(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub label: Label,
    pub k: usize,
    /// Unit-modulus eigenvalue `Λ`.
    pub eigenvalue: Complex64,
    /// `arg Λ` in `(-π, π]`.
    pub eigenphase: f64,
    /// Unit-norm eigenvector over the internal index `2s + r`.
    pub eigenvector: Vector4<Complex64>,
}

impl EigenPair {
    fn new(label: Label, k: usize, eigenvalue: Complex64, eigenvector: Vector4<Complex64>) -> Self {
        EigenPair {
            label,
            k,
            eigenvalue,
            eigenphase: eigenphase(eigenvalue),
            eigenvector,
        }
    }

    /// `‖M χ - Λ χ‖`.
    pub fn residual(&self, matrix: &Matrix4<Complex64>) -> f64 {
        (matrix * self.eigenvector - self.eigenvector * self.eigenvalue).norm()
    }
}

/// `arg z` mapped to `(-π, π]`.
pub fn eigenphase(z: Complex64) -> f64 {
    let phi = z.im.atan2(z.re);
    if phi <= -PI {
        phi + 2.0 * PI
    } else {
        phi
    }
}

/// Closed-form eigenvalues of `M(k)` in [`Label::ALL`] order:
/// `-e^{iδ}, e^{-iδ}, -e^{iσ}, e^{-iσ}` with
/// `sin δ = sin(2πk/N - θ/2)/√2` and `sin σ = sin(2πk/N + θ/2)/√2`,
/// both on the principal arcsine branch.
pub fn analytic_eigenvalues(n_nodes: usize, theta: f64, k: usize) -> [Complex64; 4] {
    let (delta, sigma) = delta_sigma(n_nodes, theta, k);
    [
        -Complex64::from_polar(1.0, delta),
        Complex64::from_polar(1.0, -delta),
        -Complex64::from_polar(1.0, sigma),
        Complex64::from_polar(1.0, -sigma),
    ]
}

fn delta_sigma(n_nodes: usize, theta: f64, k: usize) -> (f64, f64) {
    let kappa = 2.0 * PI * k as f64 / n_nodes as f64;
    let delta = ((kappa - theta / 2.0).sin() * FRAC_1_SQRT_2).asin();
    let sigma = ((kappa + theta / 2.0).sin() * FRAC_1_SQRT_2).asin();
    (delta, sigma)
}

/// Unnormalized coin part `(a, b)` of an eigenvector of the 2×2 walk block
/// `(1/√2) [[e^{-iω}, e^{-iω}], [e^{iω}, -e^{iω}]]`.
///
/// `right = true` gives the eigenvector for the right half-plane eigenvalue.
fn coin_vector(omega: f64, right: bool) -> (Complex64, Complex64) {
    let q = (1.0 + omega.cos().powi(2)).sqrt() * FRAC_1_SQRT_2;
    let q = if right { q } else { -q };
    let im = omega.sin() * FRAC_1_SQRT_2;
    let a = Complex64::new(SQRT_2 * omega.cos() + q, -im);
    let b = Complex64::new(q, im);
    (a, b)
}

/// Unnormalized closed-form eigenvector for `label` at momentum `k`.
///
/// The σ family lives in the `σ_x = +1` rotation sector, `(a, a, b, b)`, with
/// `ω₊ = πα/N + 2πk/N`. The δ family lives in the `σ_x = -1` sector,
/// `(a, -a, b, -b)`, and is the σ solution evaluated at `-ω₋`,
/// `ω₋ = πα/N - 2πk/N`.
fn analytic_vector(n_nodes: usize, theta: f64, k: usize, label: Label) -> Vector4<Complex64> {
    let kappa = 2.0 * PI * k as f64 / n_nodes as f64;
    let right = label.r == 1;
    if label.s == 0 {
        let omega_minus = theta / 2.0 - kappa;
        let (a, b) = coin_vector(-omega_minus, right);
        Vector4::new(a, -a, b, -b)
    } else {
        let omega_plus = theta / 2.0 + kappa;
        let (a, b) = coin_vector(omega_plus, right);
        Vector4::new(a, a, b, b)
    }
}

/// Why the closed form was not used for a block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FallbackReason {
    /// The closed form assumes the Hadamard coin.
    NonHadamardCoin,
    SmallNorm(f64),
    LargeResidual(f64),
}

/// Result of the closed-form solve. `NeedsFallback` is a signal for the
/// caller to switch to [`eigensystem_numeric`], not an error.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum AnalyticOutcome {
    Solved([EigenPair; 4]),
    NeedsFallback(FallbackReason),
}

/// Closed-form eigensystem of `M(k)`.
pub fn eigensystem_analytic(params: &WalkParams, k: usize) -> Result<AnalyticOutcome> {
    let block = build_kblock(params, k)?;
    if !params.has_hadamard_coin() {
        return Ok(AnalyticOutcome::NeedsFallback(FallbackReason::NonHadamardCoin));
    }
    let n = params.n_nodes();
    let theta = params.theta();
    let values = analytic_eigenvalues(n, theta, k);
    let mut pairs = Vec::with_capacity(4);
    for label in Label::ALL {
        let raw = analytic_vector(n, theta, k, label);
        let norm = raw.norm();
        if norm.is_nan() || norm < ANALYTIC_ACCEPT_TOL {
            return Ok(AnalyticOutcome::NeedsFallback(FallbackReason::SmallNorm(norm)));
        }
        let pair = EigenPair::new(label, k, values[label.index()], raw.unscale(norm));
        let residual = pair.residual(&block.matrix);
        if residual.is_nan() || residual > ANALYTIC_ACCEPT_TOL {
            return Ok(AnalyticOutcome::NeedsFallback(FallbackReason::LargeResidual(residual)));
        }
        pairs.push(pair);
    }
    let pairs: [EigenPair; 4] = pairs.try_into().expect("four labels");
    Ok(AnalyticOutcome::Solved(pairs))
}

/// `I ⊗ σ_x` on the internal space: swaps the rotation components.
fn r_parity(v: &Vector4<Complex64>) -> Vector4<Complex64> {
    Vector4::new(v[1], v[0], v[3], v[2])
}

/// Numeric eigensystem of a 4×4 unitary block.
///
/// A complex Schur decomposition of a normal matrix is diagonal, so the Schur
/// vectors are eigenvectors. Inside a degenerate eigenspace the basis is
/// rotated to diagonalize `I ⊗ σ_x` (which commutes with every walk block);
/// labels are then assigned by minimizing a cost built from the r-parity
/// (δ family: `σ_x = -1`), the half-plane of `Λ`, and, when available, the
/// distance to the closed-form eigenvalues.
pub fn eigensystem_numeric(block: &KBlock) -> Result<[EigenPair; 4]> {
    let schur = block
        .matrix
        .try_schur(f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or(WalkError::EigConvergenceFailure { k: block.k })?;
    let (q, t) = schur.unpack();
    let mut vectors: Vec<Vector4<Complex64>> =
        (0..4).map(|i| q.column(i).into_owned()).collect();
    let diag: Vec<Complex64> = (0..4).map(|i| t[(i, i)]).collect();
    if diag.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(WalkError::EigConvergenceFailure { k: block.k });
    }

    let mut visited = [false; 4];
    for i in 0..4 {
        if visited[i] {
            continue;
        }
        let members: Vec<usize> = (i..4)
            .filter(|&j| !visited[j] && (diag[j] - diag[i]).norm() < CLUSTER_TOL)
            .collect();
        for &m in &members {
            visited[m] = true;
        }
        if members.len() > 1 {
            let size = members.len();
            let gram = DMatrix::from_fn(size, size, |a, b| {
                vectors[members[a]].dotc(&r_parity(&vectors[members[b]]))
            });
            let rot = gram.symmetric_eigen().eigenvectors;
            let old: Vec<Vector4<Complex64>> = members.iter().map(|&m| vectors[m]).collect();
            for (a, &m) in members.iter().enumerate() {
                let mut v = Vector4::zeros();
                for (b, ob) in old.iter().enumerate() {
                    v += ob * rot[(b, a)];
                }
                vectors[m] = v.normalize();
            }
        }
    }

    let values: Vec<Complex64> = vectors
        .iter()
        .map(|v| {
            let rayleigh = v.dotc(&(block.matrix * v));
            rayleigh / rayleigh.norm()
        })
        .collect();
    let parities: Vec<f64> = vectors.iter().map(|v| v.dotc(&r_parity(v)).re).collect();

    let cost = |i: usize, label: Label| -> f64 {
        let target = if label.s == 0 { -1.0 } else { 1.0 };
        let zone = if label.r == 1 {
            (-values[i].re).max(0.0)
        } else {
            values[i].re.max(0.0)
        };
        let reference = block
            .reference_eigenvalues()
            .map_or(0.0, |refs| (values[i] - refs[label.index()]).norm());
        (parities[i] - target).abs() + zone + reference
    };

    let mut best: Option<([usize; 4], f64)> = None;
    for perm in permutations4() {
        // perm[i] = label index assigned to numeric eigenpair i
        let total: f64 = (0..4).map(|i| cost(i, Label::ALL[perm[i]])).sum();
        if best.map_or(true, |(_, c)| total < c) {
            best = Some((perm, total));
        }
    }
    let (perm, _) = best.expect("24 permutations");
    let mut out: Vec<Option<EigenPair>> = vec![None; 4];
    for i in 0..4 {
        let label = Label::ALL[perm[i]];
        out[label.index()] = Some(EigenPair::new(label, block.k, values[i], vectors[i]));
    }
    Ok(std::array::from_fn(|i| out[i].take().expect("permutation covers all labels")))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Which solver produced a block's eigenpairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenSource {
    Analytic,
    Numeric,
}

/// Eigenpairs for every momentum block of a walk: `4N` pairs in total.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    n_nodes: usize,
    blocks: Vec<[EigenPair; 4]>,
    sources: Vec<EigenSource>,
}

impl Eigensystem {
    /// Closed form per block, numeric fallback where the closed form is rejected.
    pub fn compute(params: &WalkParams) -> Result<Self> {
        let n = params.n_nodes();
        let mut blocks = Vec::with_capacity(n);
        let mut sources = Vec::with_capacity(n);
        for k in 0..n {
            match eigensystem_analytic(params, k)? {
                AnalyticOutcome::Solved(pairs) => {
                    blocks.push(pairs);
                    sources.push(EigenSource::Analytic);
                }
                AnalyticOutcome::NeedsFallback(_) => {
                    blocks.push(eigensystem_numeric(&build_kblock(params, k)?)?);
                    sources.push(EigenSource::Numeric);
                }
            }
        }
        Ok(Eigensystem {
            n_nodes: n,
            blocks,
            sources,
        })
    }

    /// Numeric eigensolver on every block.
    pub fn numeric(params: &WalkParams) -> Result<Self> {
        let n = params.n_nodes();
        let blocks = (0..n)
            .map(|k| eigensystem_numeric(&build_kblock(params, k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Eigensystem {
            n_nodes: n,
            blocks,
            sources: vec![EigenSource::Numeric; n],
        })
    }

    /// Assembles an eigensystem from precomputed blocks; `blocks[k]` must
    /// hold the pairs of momentum `k` in [`Label::ALL`] order.
    pub fn from_blocks(n_nodes: usize, blocks: Vec<[EigenPair; 4]>, source: EigenSource) -> Self {
        let sources = vec![source; blocks.len()];
        Eigensystem {
            n_nodes,
            blocks,
            sources,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn blocks(&self) -> &[[EigenPair; 4]] {
        &self.blocks
    }

    pub fn sources(&self) -> &[EigenSource] {
        &self.sources
    }

    /// Momenta whose eigenpairs came from the numeric fallback.
    pub fn fallback_momenta(&self) -> Vec<usize> {
        self.sources
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == EigenSource::Numeric)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn pair(&self, label: Label, k: usize) -> &EigenPair {
        &self.blocks[k][label.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &EigenPair> {
        self.blocks.iter().flat_map(|b| b.iter())
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.blocks.len() == self.n_nodes
            && self
                .blocks
                .iter()
                .enumerate()
                .all(|(k, b)| b.iter().all(|p| p.k == k))
    }
}
