//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two values that must share the same tuple length `m` do not.
    #[error("dimension mismatch: expected m = {expected}, got m = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A sign tuple contained a character other than `+` or `-`.
    #[error("invalid sign string {0:?}: only '+' and '-' are allowed")]
    InvalidSignString(String),

    /// An edge index outside `1..=m`.
    #[error("edge index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    /// Parameters that do not describe a supported tiling.
    #[error("invalid tiling parameters: {0}")]
    InvalidParams(String),

    /// Enumeration requested beyond the configured size bound.
    #[error("m = {m} exceeds the supported bound {bound} for {what}")]
    BoundExceeded {
        m: usize,
        bound: usize,
        what: &'static str,
    },

    /// `stabilizer_translate` called with an element that does not fix the code.
    #[error("element {element} does not stabilize the code {code}")]
    StabilizerViolation { element: String, code: String },

    /// A subset of `D_m` that fails the closure law for its code.
    #[error("subset {subset} is not reversal-closed for {code}")]
    NotReversalClosed { subset: String, code: String },

    /// An edge reversal whose tile tuple leaves the restricted direction set.
    #[error("edge reversal not realizable over the target category: tile {tile} has tuple {tuple}")]
    NotRealizable { tile: u32, tuple: String },

    /// No track between the requested tiles inside the patch.
    #[error("no track from tile {from} to tile {to} inside the patch")]
    NoTrack { from: u32, to: u32 },

    /// A reflection scheme that violates one of its defining conditions.
    #[error("invalid reflection scheme: {0}")]
    InvalidScheme(String),

    /// A geodesic or automorphism with nothing to act on.
    #[error("empty domain: {0}")]
    EmptyDomain(String),

    /// Referenced id missing from a patch.
    #[error("unknown {kind} id {id}")]
    UnknownId { kind: &'static str, id: u32 },

    /// A malformed document or field while reading a schema file.
    #[error("schema violation in {context}: {message}")]
    Schema { context: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
