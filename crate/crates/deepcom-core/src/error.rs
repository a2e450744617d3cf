//! Unified error type for the whole crate.

use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The supplied table fails one of the group axioms.
    #[error("not a group: {0}")]
    NotAGroup(String),

    /// A size cap was exceeded; `limit` is the cap, `requested` the size.
    #[error("{what}: order {requested} exceeds cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    /// A family or operation parameter is out of its valid range.
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// Group spec syntax error. `offset` is a byte position in the input.
    #[error("parse error at byte {offset}: {message} (expected {})", expected.join(" | "))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },

    /// Pairing evaluation on a pair of elements that do not commute.
    #[error("elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    /// The function table is not a 2-cocycle.
    #[error("not a cocycle: constraint fails at ({0},{1},{2})")]
    NotACocycle(usize, usize, usize),

    /// The projection map does not describe a central extension.
    #[error("bad extension: {0}")]
    BadExtension(String),

    /// Pullback of two extensions over different base groups.
    #[error("base groups of the two extensions differ")]
    BaseMismatch,

    /// A computed generator failed re-verification against the defining
    /// constraints. Always a bug or a miscompiled build; never silent.
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),

    /// A structural cross-check that must hold for every finite group failed.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// Table or fixture file problem, reported by the loader callback.
    #[error("file error: {0}")]
    File(String),
}
