//! Thresholds for joint-measurement tables and their sampling checks.

/// Observables must commute within this for a jpd to exist.
pub const JPD_COMMUTATION_TOL: f64 = 1e-9;

/// Imaginary part allowed on a trace that should be a probability.
pub const JPD_IMAG_TOL: f64 = 1e-10;

/// Probabilities this far below zero are clamped to 0; anything lower is an
/// error (it means the commutation premise was violated).
pub const JPD_NEGATIVE_FLOOR: f64 = -1e-12;

/// Table total must be within this of 1.
pub const JPD_TOTAL_TOL: f64 = 1e-10;

/// Entry agreement required between permuted joint tables.
pub const PERMUTATION_TOL: f64 = 1e-9;

/// Agreement required between an m-fold marginal and the direct pair table.
pub const MARGINAL_TOL: f64 = 1e-10;

/// Projector family invariants (idempotence, orthogonality, completeness,
/// reconstruction).
pub const FAMILY_TOL: f64 = 1e-9;

/// Default eigenvalue clustering width for projector extraction.
pub const DEFAULT_VALUE_TOLERANCE: f64 = 1e-8;

/// A functional counts as violated when value > bound + this.
pub const FUNCTIONAL_VIOLATION_MARGIN: f64 = 1e-9;

/// Family outcome values must match declared functional spectra within this.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-6;

/// Cap on classical-bound enumeration.
pub const ASSIGNMENT_CAP: u128 = 1 << 20;

/// Cap on joint-table size.
pub const TABLE_CAP: usize = 1 << 20;
