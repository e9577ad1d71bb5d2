// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::root_system::LieType;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The rank is outside the range allowed for the Lie type.
    #[error("invalid rank {rank} for type {lie_type}: need rank >= {min}")]
    InvalidRank {
        lie_type: LieType,
        rank: usize,
        min: usize,
    },
    /// A partition input violates one of its invariants.
    #[error("invalid partition input: {0}")]
    InvalidInput(String),
    /// A coordinate vector that is not a root of the system.
    #[error("not a root of the system: {0:?}")]
    NotARoot(Vec<i8>),
    /// The bracket of a root with its negative was requested.
    #[error("bracket of opposite roots lands in the torus")]
    OppositeRoots,
    /// A lambda value sits on a root outside Phi_{d,2}.
    #[error("lambda is keyed on {0:?}, which is not in Phi_(d,2)")]
    LambdaOutsidePhi2(Vec<i8>),
    /// A lambda assignment or matrix over the wrong coefficient ring.
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },
    /// An operation was called outside its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A construction was requested for a non-special diagram.
    #[error("diagram is not special")]
    NotSpecial,
    /// An exhaustive search would exceed the configured cap.
    #[error("exhaustive search over 2^{m} assignments exceeds the cap 2^{cap}")]
    CapExceeded { m: usize, cap: usize },
    /// Machine integer arithmetic overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// A parse failure for textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal consistency check failed; this signals a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Result alias using [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
