//! Numerical tolerances shared by the checks.

/// Relative tolerance for algebraic identities, scaled by `max(1, |lhs|, |rhs|)`.
pub const IDENTITY: f64 = 1e-10;

/// Absolute tolerance for closed-form Lie derivatives that should vanish.
pub const LIE_EXACT: f64 = 1e-12;

/// Tolerance for quantities obtained by finite differences.
pub const FINITE_DIFFERENCE: f64 = 1e-6;

/// Step of the central differences (before one Richardson level).
pub const FD_STEP: f64 = 1e-5;

/// `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
pub fn relative_error(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs())
}
