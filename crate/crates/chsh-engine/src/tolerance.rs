//! CHSH-specific numerical thresholds. Dichotomic observables have norm 1,
//! so absolute tolerances are safe here.

/// ||X^2 - I|| allowed for a ±1-valued observable.
pub const DICHOTOMIC_TOL: f64 = 1e-9;

/// ||[A_i, B_j]|| allowed between setting pairs of a valid scenario.
pub const CROSS_COMMUTATION_TOL: f64 = 1e-9;

/// Max entry difference between lifted local operators and stored globals.
pub const LIFT_REPRODUCTION_TOL: f64 = 1e-12;

/// A commutator counts as nonzero when its spectral norm exceeds this;
/// separates double-precision noise from genuine incompatibility.
pub const INCOMPATIBILITY_THRESHOLD: f64 = 1e-9;

/// The quantum CHSH inequality counts as violated when ||B|| > 1 + this.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Off-diagonal magnitude allowed when validating a candidate common
/// eigenbasis of the two commutator observables.
pub const COMMON_BASIS_DIAG_TOL: f64 = 1e-8;

/// Residual allowed on the Landau identity, relative to (1 + ||B||^2).
pub const LANDAU_RESIDUAL_REL: f64 = 1e-9;
