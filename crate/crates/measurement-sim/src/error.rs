use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasurementError {
    #[error(transparent)]
    Operator(#[from] operator_core::OperatorError),

    #[error(transparent)]
    Chsh(#[from] chsh_engine::ChshError),

    #[error("eigenvalue clusters are ambiguous: gap {gap:.3e} is not above 2 x tolerance {tolerance:.3e}")]
    ClusterAmbiguity { gap: f64, tolerance: f64 },

    #[error("projector family invariant failed: {detail}")]
    FamilyInvariant { detail: String },

    #[error("observables {first} and {second} do not commute (||[X, Y]|| = {norm:.3e}); no joint distribution exists")]
    NonCommutingObservables {
        first: usize,
        second: usize,
        norm: f64,
    },

    #[error("joint probability at {key:?} is {value:.3e}, below the clamping floor")]
    NegativeProbability { key: Vec<usize>, value: f64 },

    #[error("joint probability at {key:?} has imaginary part {imag:.3e}")]
    ImaginaryProbability { key: Vec<usize>, imag: f64 },

    #[error("joint probabilities sum to {total}, not 1")]
    TotalProbabilityOff { total: f64 },

    #[error("outcome table would have {size} entries, above the cap {cap}")]
    TableTooLarge { size: usize, cap: usize },

    #[error("classical-bound enumeration needs {count} assignments, above the cap {cap}")]
    AssignmentCapExceeded { count: u128, cap: u128 },

    #[error("invalid functional: {detail}")]
    InvalidFunctional { detail: String },

    #[error("family spectrum does not match the functional's declared spectrum for group {group}, observable {index}: {detail}")]
    SpectraMismatch {
        group: usize,
        index: usize,
        detail: String,
    },

    #[error("observables in groups {group_a} and {group_b} do not commute (||[X, Y]|| = {norm:.3e})")]
    CrossGroupCommutation {
        group_a: usize,
        group_b: usize,
        norm: f64,
    },

    #[error("rounds_per_setting must be positive")]
    DegenerateRun,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("sampled statistics are implausible: {detail}")]
    ImplausibleStatistics { detail: String },
}

pub type Result<T> = std::result::Result<T, MeasurementError>;
