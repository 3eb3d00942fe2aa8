//! Entanglement detection and discord measures built from the bipartite
//! correlation matrix C_ij = ⟨A_i ⊗ B_j⟩.
//!
//! The library constructs correlation matrices against trace-orthonormal
//! Hermitian bases, extracts operator-Schmidt coefficients, evaluates
//! correlation minor norms (Schatten norms of compound matrices) with their
//! closed-form separable bounds, builds the quantum-design states that
//! saturate those bounds, and measures discord through the contraction of
//! singular values under local projective measurement.

pub mod basis;
pub mod correlation;
pub mod design;
pub mod detect;
pub mod discord;
pub mod error;
pub mod linalg;
mod optim;
pub mod state;
pub mod tol;

pub use basis::HermitianBasis;
pub use correlation::{
    correlation_matrix, fnf_blocks, operator_schmidt, pure_operator_schmidt, realign,
    realignment_singulars, CorrelationMatrix, FnfBlocks, OperatorSchmidt,
};
pub use design::{DesignReport, QuantumDesign};
pub use detect::{
    bound_p1, bound_pinf, ccnr, cm_criterion, cmn, cmn_from_singulars, compound_matrix,
    detect, dv_criterion, elementary_symmetric, schatten_norm, schmidt_rank_pure,
    separable_max_search, CmnParams, Criterion, SchattenP, SearchOutcome, Verdict,
};
pub use discord::{
    cmn_discord, discord_sweep_virzi, geometric_discord_two_qubit, measure_channel,
    measurement_projector, DiscordResult, OptimizerConfig, ProjectiveMeasurement, SweepRow,
    SweepTable,
};
pub use error::{Error, Result};
pub use state::{
    ccnr_gap_state, design_state, mix, pure_from_schmidt, random_density, random_separable,
    virzi_family, werner, DensityMatrix, DensityMatrixJson, PureSchmidt, Subsystem,
};
