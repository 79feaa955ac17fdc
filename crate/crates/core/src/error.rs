// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::vtrace::VTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("thermal sum did not converge within {max_terms} terms (tail bound {tail:.3e})", tail = partial.tail_bound)]
    Convergence { max_terms: usize, partial: VTrace },

    #[error("Fock truncation at N={dim} leaves thermal weight {weight:.3e} (limit {limit:.0e}); increase the oracle dimension")]
    Truncation { dim: usize, weight: f64, limit: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("at T={t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn arg(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }

    /// True for configuration/argument problems, false for numerical ones.
    pub fn is_argument_error(&self) -> bool {
        match self {
            Error::InvalidArgument { .. } => true,
            Error::AtTime { source, .. } => source.is_argument_error(),
            _ => false,
        }
    }
}
