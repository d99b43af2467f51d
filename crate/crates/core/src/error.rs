use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes shared by every module.
///
/// `CertifiedFailure` means a bound or invariant that the construction is
/// supposed to guarantee did not hold. That is either a bug or an input that
/// silently violated a precondition (for instance a quasi-ladder index above
/// the supplied `k`), and callers are expected to surface it distinctly from
/// ordinary input errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("malformed structure at step {step:?}: {detail}")]
    Structural { step: Option<usize>, detail: String },

    #[error("certified failure ({lemma}): {detail}")]
    CertifiedFailure { lemma: &'static str, detail: String },

    #[error("refused: {0}")]
    Refused(String),

    #[error("parse error on line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn structural(step: Option<usize>, detail: impl Into<String>) -> Self {
        Error::Structural { step, detail: detail.into() }
    }

    pub(crate) fn certified(lemma: &'static str, detail: impl Into<String>) -> Self {
        Error::CertifiedFailure { lemma, detail: detail.into() }
    }

    /// True for failures that indicate a violated guarantee rather than bad input.
    pub fn is_certified_failure(&self) -> bool {
        matches!(self, Error::CertifiedFailure { .. })
    }
}
