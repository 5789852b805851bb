use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Which time-dependence a distribution represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    /// `p_t(v)` at a single time.
    Instant,
    /// `p̄_T(v) = (1/T) Σ_{t=1}^T p_t(v)`.
    Average,
    /// `π(v) = lim_{T→∞} p̄_T(v)`.
    Limiting,
}

/// How a distribution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Empirical,
    ClosedForm,
    GeneralSum,
}

/// A probability distribution over the nodes of the cycle.
///
/// Values are kept exactly as computed, including round-off below zero;
/// [`Distribution::clamped`] gives the presentation copy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    values: Vec<f64>,
    kind: DistributionKind,
    provenance: Provenance,
}

impl Distribution {
    pub fn new(values: Vec<f64>, kind: DistributionKind, provenance: Provenance) -> Self {
        Distribution {
            values,
            kind,
            provenance,
        }
    }

    /// `1/N` on every node.
    pub fn uniform(n_nodes: usize, kind: DistributionKind, provenance: Provenance) -> Self {
        Distribution::new(vec![1.0 / n_nodes as f64; n_nodes], kind, provenance)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Values with negatives from cancellation replaced by zero.
    pub fn clamped(&self) -> Vec<f64> {
        self.values.iter().map(|&x| x.max(0.0)).collect()
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `max_v |p(v) - 1/N|`.
    pub fn max_deviation_from_uniform(&self) -> f64 {
        let u = 1.0 / self.values.len() as f64;
        self.values.iter().map(|x| (x - u).abs()).fold(0.0, f64::max)
    }

    /// `max_v |p(v) - q(v)|`.
    pub fn max_abs_diff(&self, other: &Distribution) -> Result<f64> {
        if self.len() != other.len() {
            return Err(WalkError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}
