//! Quantum correlations of fermionic Unruh modes shared between an inertial
//! observer (Alice) and a uniformly accelerated observer (Bob).
//!
//! The crate builds Unruh vacuum and one-particle states over a small
//! fermionic Fock space (two Rindler regions, particle and antiparticle modes,
//! plus Alice's qubit), reduces them to two-qubit states for each choice of
//! the single Rindler mode Bob retains, and evaluates geometric discord,
//! entropic discord, mutual information and classical correlation on the
//! result. Because the fermionic mode ordering and sign structure behind the
//! reduction is itself a convention, the reduction is parameterized over an
//! explicit, finite space of trace conventions together with a search harness
//! that checks qualitative claims against every variant.
//!
//! Modules:
//! - [`fock`]: occupation-basis state algebra with Jordan–Wigner signs.
//! - [`unruh`]: the acceleration parameter map and the Unruh state builders.
//! - [`reduction`]: partial traces, sector reductions, convention search.
//! - [`correlation`]: Bloch decomposition and the correlation measures.
//! - [`closed_form`]: per-sector closed-form geometric discord, in an
//!   as-printed and a corrected reading, reconciled against the pipeline.
//! - [`report`]: CSV/JSON emission shared by the reconciliation harnesses.

pub mod closed_form;
pub mod correlation;
pub mod fock;
pub mod reduction;
pub mod report;
pub mod unruh;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode {0:?} is not part of this state's mode order")]
    UnknownMode(fock::ModeLabel),
    #[error("a mode order must hold 1..=5 distinct labels")]
    InvalidModeOrder,
    #[error("target order is not a permutation of the state's mode order")]
    NotAPermutation,
    #[error("amplitude vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("mixture weights must be >= 0 and sum to 1 (sum = {0})")]
    WeightSum(f64),
    #[error("mixture components must share one mode order")]
    ModeOrderMismatch,
    #[error("gamma = {0} outside [0, pi/4]")]
    GammaOutOfRange(f64),
    #[error("q_R = {0} outside [0, 1]")]
    BranchWeightOutOfRange(f64),
    #[error("alpha = {0} outside [0, pi/2]")]
    AlphaOutOfRange(f64),
    #[error("fidelity = {0} outside [0, 1]")]
    FidelityOutOfRange(f64),
    #[error("acceleration map needs Omega > 0, a >= 0, c > 0, none NaN")]
    AccelerationDomain,
    #[error("matrix is not Hermitian (max residual {0:.3e})")]
    NotHermitian(f64),
    #[error("trace deviates from 1 by {0:.3e}")]
    TraceNotOne(f64),
    #[error("eigenvalue {0:.3e} below the -1e-10 positivity floor")]
    NegativeEigenvalue(f64),
    #[error("state norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),
    #[error("partial trace keep set is empty or contains unknown modes")]
    InvalidKeep,
    #[error("expected a two-qubit density matrix, found dimension {0}")]
    NotTwoQubit(usize),
    #[error("invalid trace convention: {0}")]
    InvalidConvention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
