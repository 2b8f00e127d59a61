use thiserror::Error;

/// Every failure the kernel can report. Messages name the offending parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// Input outside the region where the requested quantity is defined or convergent.
    #[error("domain error: {0}")]
    Domain(String),
    /// A factor in a reciprocal position vanished (a parameter sits on `q^k`).
    #[error("pole: {0}")]
    Pole(String),
    #[error("term budget exhausted after {limit} terms in {what}")]
    BudgetExceeded { what: String, limit: usize },
    #[error("divergence detected in {0}")]
    Divergence(String),
    /// The result exists but does not fit in binary64.
    #[error("value out of binary64 range: {0}")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

impl QError {
    /// Prefix the message with extra context, keeping the variant.
    pub fn context(self, ctx: impl AsRef<str>) -> QError {
        let ctx = ctx.as_ref();
        match self {
            QError::Domain(m) => QError::Domain(format!("{ctx}: {m}")),
            QError::Pole(m) => QError::Pole(format!("{ctx}: {m}")),
            QError::BudgetExceeded { what, limit } => {
                QError::BudgetExceeded { what: format!("{ctx}: {what}"), limit }
            }
            QError::Divergence(m) => QError::Divergence(format!("{ctx}: {m}")),
            QError::Overflow(m) => QError::Overflow(format!("{ctx}: {m}")),
            QError::InvalidArgument(m) => QError::InvalidArgument(format!("{ctx}: {m}")),
            e @ QError::UnknownIdentity(_) => e,
        }
    }
}

pub type QResult<T> = Result<T, QError>;
