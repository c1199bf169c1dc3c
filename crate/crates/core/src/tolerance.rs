//! Numerical tolerances. The underlying algebra is exact; these only absorb
//! floating-point error.

/// Deviation of a squared norm from one.
pub const EPS_NORM: f64 = 1e-12;
/// Entrywise Hermiticity and unit-trace checks.
pub const EPS_MAT: f64 = 1e-12;
/// Eigenvalue accuracy and positivity slack.
pub const EPS_EIG: f64 = 1e-10;
/// Default threshold above which a verdict counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;
/// Default threshold for the LOCC constraint residual.
pub const CONSTRAINT_TOL: f64 = 1e-9;
/// Largest total Hilbert-space dimension a composite state may have.
pub const MAX_TOTAL_DIM: usize = 256;
