use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A precondition on the arguments was violated (non-symmetric input,
    /// zero weight, mismatched fields, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    /// The input is well formed but the requested formula does not apply
    /// to it (loops, coloops, graphs outside the cubic planar class).
    #[error("formula not applicable: {0}")]
    Inapplicable(String),

    #[error("enumeration needs {required} terms, budget is {budget}")]
    Budget { required: u128, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the input being outside the domain of a
    /// formula or by an exhausted budget, as opposed to malformed input.
    pub fn is_inapplicable(&self) -> bool {
        matches!(self, Error::Inapplicable(_) | Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Refuses an enumeration of `required` terms when it exceeds `budget`.
pub(crate) fn check_budget(required: u128, budget: u64) -> Result<()> {
    if required > budget as u128 {
        Err(Error::Budget { required, budget })
    } else {
        Ok(())
    }
}
