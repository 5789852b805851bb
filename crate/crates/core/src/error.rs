use thiserror::Error;

/// Errors raised by walk construction, evolution and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("number of nodes must be at least 2, got {0}")]
    InvalidN(usize),

    #[error("coin is not unitary: max |C C^† - I| entry is {deviation:e}")]
    NonUnitaryCoin { deviation: f64 },

    #[error("bad initial state: {0}")]
    BadInitialState(String),

    #[error("state has {found} amplitudes, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("momentum index {k} out of range for {n_nodes} nodes")]
    KOutOfRange { k: usize, n_nodes: usize },

    #[error("eigensystem covers {found} momenta, expected {expected}")]
    IncompleteEigensystem { expected: usize, found: usize },

    #[error("eigensolver did not converge for block k = {k}")]
    EigConvergenceFailure { k: usize },

    #[error("closed form only applies to degenerate regimes (even N with integer alpha, odd N with half-integer alpha); got N = {n_nodes}, alpha = {alpha}")]
    NotDegenerateRegime { n_nodes: usize, alpha: f64 },

    #[error("unsupported initial state: {0}")]
    UnsupportedInitialState(String),

    #[error("unsupported coin: {0}")]
    UnsupportedCoin(String),

    #[error("formula requires an even number of nodes, got {0}")]
    OddNNotApplicable(usize),

    #[error("distributions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
