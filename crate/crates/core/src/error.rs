use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed `.lnk` or path input. Lines are 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// `|H_1| = 0`, so the Casson-Walker normalization does not exist.
    #[error("not a rational homology sphere (det of the linking matrix is 0)")]
    NotRationalHomologySphere,

    #[error("Casson-Walker crossing change undefined: det of the linking matrix is 0")]
    CassonWalkerUndefined,

    #[error("degenerate chain: {0}")]
    DegenerateChain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
