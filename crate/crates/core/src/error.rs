// SPDX-License-Identifier: Apache-2.0

use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// More variables than fit in one 64-bit truth table.
    #[error("{0} variables requested, at most 6 are supported")]
    Capacity(usize),

    #[error("variable index {index} out of range for {num_vars} variables")]
    Index { index: usize, num_vars: usize },

    #[error("{0}")]
    Usage(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown library `{name}`; valid names: {valid}")]
    UnknownLibrary { name: String, valid: String },

    #[error("no circuit found with at most {max_gates} gates")]
    NotFound { max_gates: usize },

    #[error("search timed out after {0:?}")]
    Timeout(Duration),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
