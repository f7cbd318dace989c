// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two operands do not live in the same representation space.
    #[error("{what}: dimension mismatch ({left} vs {right})")]
    DimensionMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },
    /// An exhaustive computation would exceed its configured bound.
    #[error("{what}: size {size} exceeds bound {bound}")]
    Capacity {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn check_dims(what: &'static str, left: usize, right: usize) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { what, left, right })
        }
    }
}
