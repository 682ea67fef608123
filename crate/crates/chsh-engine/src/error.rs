use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChshError {
    #[error(transparent)]
    Operator(#[from] operator_core::OperatorError),

    #[error("spectrum is not ±1: ||X^2 - I|| = {defect:.3e} exceeds {tolerance:.1e}")]
    NotDichotomic { defect: f64, tolerance: f64 },

    #[error("setting pair (A{a_index}, B{b_index}) is not compatible: ||[A, B]|| = {norm:.3e}")]
    CrossCommutation {
        a_index: usize,
        b_index: usize,
        norm: f64,
    },

    #[error("lifted local operators disagree with stored global operators by {diff:.3e}")]
    LiftMismatch { diff: f64 },

    #[error("local operator dimensions ({got_a}, {got_b}) do not match declared factors ({dim_a}, {dim_b})")]
    LocalDimensionMismatch {
        got_a: usize,
        got_b: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("local operators supplied without tensor structure (or vice versa)")]
    InconsistentStructure,

    #[error("operation is defined for tensor-structured scenarios only")]
    RequiresTensorStructure,

    #[error("commutator observables do not commute: ||[M_A, M_B]|| = {norm:.3e}")]
    MetersDoNotCommute { norm: f64 },

    #[error("no common eigenbasis found: {detail}")]
    CommonEigenbasisFailed { detail: String },

    #[error("auxiliary pair is compatible (||[B1, B2]|| = {norm:.3e}); it cannot serve as a meter")]
    AuxiliaryPairCompatible { norm: f64 },

    #[error("no positive eigenvalue product achievable: commutator norms {norm_ma:.3e}, {norm_mb:.3e}")]
    NoPositiveProduct { norm_ma: f64, norm_mb: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, ChshError>;
