use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// The recursion denominator `d1 - 2*d0` vanished.
    #[error("singular step: |d1 - 2*d0| = {denominator:e} is below the singularity tolerance")]
    SingularStep { denominator: f64 },

    /// A brute-force enumeration was asked to exceed its size cap.
    #[error("limit exceeded: {0}")]
    Limit(String),

    #[error("invalid document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
