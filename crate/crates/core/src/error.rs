//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by series arithmetic, polynomial operators, lattice
/// construction, genus evaluation and verification.
#[derive(Debug, Error)]
pub enum Error {
    /// Two operands live in different coefficient domains (e.g. mixed precision).
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),

    /// Inversion or division of an identically zero series.
    #[error("zero series has no inverse")]
    ZeroSeries,

    /// A precondition on an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A division that must be exact left a remainder. For polynomial inputs
    /// this indicates an implementation bug, so the message carries the offender.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// Evaluation requested too close to a pole of the function.
    #[error("pole proximity: {0}")]
    PoleProximity(String),

    /// Evaluation requested outside the branch-safe disc of a level-d genus.
    #[error("outside reliability radius: |t| = {t_abs}, radius = {radius}")]
    OutsideReliabilityRadius { t_abs: String, radius: String },

    /// Lattice construction failed (Im tau <= 0, nome too large, ...).
    #[error("lattice: {0}")]
    Lattice(String),

    /// Numeric sampling could not produce enough admissible points.
    #[error("sampling: {0}")]
    Sampling(String),

    /// Monodromy ratios disagreed across sample points (branch or pole trouble).
    #[error("monodromy inconsistency: {0}")]
    MonodromyInconsistency(String),

    /// Malformed textual or JSON input.
    #[error("parse: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
