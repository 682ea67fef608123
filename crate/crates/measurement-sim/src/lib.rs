//! Joint measurement of compatible observables, made executable.
//!
//! Compatible (commuting) observables admit a joint probability distribution
//! p(x1, ..., xm) = Tr[ρ E1(x1) ··· Em(xm)]; pairwise compatibility already
//! guarantees the whole family is jointly measurable, and the table is
//! invariant under reordering. Incompatible observables admit no such table,
//! and [`joint_distribution`] refuses to build one — that refusal is the
//! point, not a limitation.
//!
//! On top of the tables sit Bell-type functionals with enumerated classical
//! bounds, Born-rule outcome sampling with a counter-based RNG (partition
//! the rounds across any number of workers and the tallies do not change),
//! and the four-setting CHSH experiment that closes the loop between the
//! operator-theoretic correlation and its Monte Carlo estimate.

pub mod error;
pub mod experiment;
pub mod functional;
pub mod generate;
pub mod jpd;
pub mod projectors;
pub mod sampling;
pub mod tolerance;

pub use error::{MeasurementError, Result};
pub use experiment::{
    experiment_csv, run_chsh_experiment, ExperimentRun, SettingResult, StateEcho,
    VIOLATION_Z_THRESHOLD,
};
pub use functional::{
    evaluate_bell_functional, BellFunctional, FunctionalEvaluation, FunctionalTerm,
};
pub use jpd::{joint_distribution, pairwise_implies_multiple_check, CompatibilityCheck, JointDistribution};
pub use projectors::{projectors, ProjectorFamily, ProjectorOutcome, DEFAULT_VALUE_TOLERANCE};
pub use sampling::{sample_joint, sample_joint_keyed, OutcomeTallies};
