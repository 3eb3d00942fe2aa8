//! Numerical tolerances shared across the crate.
//!
//! Matrices here are small (subsystem dimensions up to ~6), so double
//! precision leaves a wide margin; the values below are the contract,
//! not a tuning surface.

/// Hermiticity of operators and density matrices.
pub const HERMITICITY: f64 = 1e-10;

/// Hermiticity of basis elements (tighter; they are built exactly).
pub const BASIS_HERMITICITY: f64 = 1e-12;

/// Orthonormality of Hermitian bases and rotation matrices.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Trace normalization of density matrices.
pub const TRACE: f64 = 1e-10;

/// Most negative admissible eigenvalue of a density matrix.
pub const PSD_FLOOR: f64 = -1e-9;

/// Normalization of pure-state Schmidt coefficient vectors.
pub const SCHMIDT_NORM: f64 = 1e-12;

/// Purity slack for operations that require a pure state.
pub const PURITY: f64 = 1e-8;

/// Imaginary residue allowed in correlation-matrix entries.
pub const CORRELATION_IMAG: f64 = 1e-10;

/// Per-property checks in a design verification report.
pub const DESIGN_REPORT: f64 = 1e-9;

/// Projector/coherence checks enforced by design constructors.
pub const DESIGN_BUILD: f64 = 1e-10;

/// Default marginal deviation below which a state counts as filter normal form.
pub const FNF: f64 = 1e-8;

/// Allowed deviation of the corner entry of an identity-first correlation matrix.
pub const FNF_CORNER: f64 = 1e-8;

/// Slack before a computed value counts as violating a separable bound.
pub const VIOLATION: f64 = 1e-9;

/// Default cutoff treating a correlation minor norm as zero (Schmidt rank).
pub const RANK_CUTOFF: f64 = 1e-8;

/// Raw discord values above this (negative) floor are clamped to zero.
pub const DISCORD_FLOOR: f64 = -1e-8;
