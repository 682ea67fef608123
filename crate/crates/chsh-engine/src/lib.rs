//! CHSH machinery built on the operator substrate.
//!
//! The central objects are validated four-tuples of ±1-valued observables
//! with compatible cross pairs ([`BellScenario`]), the Bell operator
//! B = (1/2)[A1(B1+B2) + A2(B1-B2)], and the algebra connecting its square
//! to the commutators of the setting pairs:
//!
//! ```text
//! B² = I - (1/4)[A1,A2][B1,B2] = I + (1/4) M_A M_B,   M_X = i[X1,X2].
//! ```
//!
//! With the 1/2 normalization the classical bound is 1 and two-qubit
//! scenarios top out at √2. Everything downstream — the quantum CHSH
//! inequality, the local-incompatibility criterion for violation, the bound
//! b = √(1 + ‖M_A‖‖M_B‖/4), and the extraction of one commutator norm from
//! an observed correlation — follows from that identity.

pub mod bell;
pub mod error;
pub mod generate;
pub mod incompatibility;
pub mod scenario;
pub mod states;
pub mod theorem;
pub mod tolerance;

pub use bell::{bell_operator, chsh_correlation, landau_check, landau_square, LandauCheck};
pub use error::{ChshError, Result};
pub use incompatibility::{
    common_eigenbasis, extract_incompatibility, incompatibility_report, quantum_bound,
    CommonEigenbasisEntry, IncompatibilityReport,
};
pub use scenario::{BOrdering, BellScenario, DichotomicObservable, LocalOperators, Structure};
pub use theorem::{separable_square_witness, theorem1_check, SeparableSquareWitness, Theorem1Outcome};
