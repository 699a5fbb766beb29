use std::fmt;

use thiserror::Error;

/// Problems found while reading or validating a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphDefect {
    SelfLoop { vertex: usize },
    DuplicateEdge { a: usize, b: usize },
    VertexOutOfRange { index: usize, count: usize },
    DuplicateLabel(String),
    Malformed(String),
}

impl fmt::Display for GraphDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphDefect::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphDefect::DuplicateEdge { a, b } => {
                write!(f, "duplicate edge between vertices {a} and {b}")
            }
            GraphDefect::VertexOutOfRange { index, count } => {
                write!(f, "vertex index {index} out of range 1..={count}")
            }
            GraphDefect::DuplicateLabel(label) => write!(f, "duplicate edge label {label:?}"),
            GraphDefect::Malformed(msg) => write!(f, "malformed line: {msg}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {defect}")]
    Parse { line: usize, defect: GraphDefect },

    #[error("invalid graph: {0}")]
    InvalidGraph(GraphDefect),

    #[error("abelian: construction requires at least one edge")]
    EdgelessGraph,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("ill-conditioned frequency clustering (gap {gap:e})")]
    IllConditionedClustering { gap: f64 },

    #[error("center vector is not resonant at qmax={qmax}, tol={tol:e}")]
    NotResonant { qmax: u64, tol: f64 },

    #[error("period verification failed: |exp(omega j(Z)) - Id| = {residual:e}")]
    PeriodVerification { residual: f64 },

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("velocity is not in u_Z: {0}")]
    NotInUz(String),

    #[error("first hit left w_Z (residual {residual:e})")]
    NotInWz { residual: f64 },

    #[error("near-degenerate point: {0}")]
    NearDegenerate(String),

    #[error("wrong algebra: {0}")]
    WrongAlgebra(String),

    #[error("exact path required: lattice membership needs rational multiples of 2pi")]
    ExactPathRequired,

    #[error("norm of the center component is not rational")]
    NonRationalNorm,

    #[error("numeric verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::EdgelessGraph => "edgeless_graph",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ContractViolation(_) => "contract_violation",
            Error::IllConditionedClustering { .. } => "ill_conditioned_clustering",
            Error::NotResonant { .. } => "not_resonant",
            Error::PeriodVerification { .. } => "period_verification",
            Error::DegenerateSpectrum(_) => "degenerate_spectrum",
            Error::NotInUz(_) => "not_in_uz",
            Error::NotInWz { .. } => "not_in_wz",
            Error::NearDegenerate(_) => "near_degenerate",
            Error::WrongAlgebra(_) => "wrong_algebra",
            Error::ExactPathRequired => "exact_path_required",
            Error::NonRationalNorm => "non_rational_norm",
            Error::Verification(_) => "verification",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
