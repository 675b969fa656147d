use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate cone: {0}")]
    DegenerateCone(String),
    #[error("span of {face} not certified up to height {max_height}")]
    Uncertified { face: String, max_height: i64 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension { .. }
            | Error::Input(_)
            | Error::Domain(_)
            | Error::DegenerateCone(_)
            | Error::NotACocycle(_) => 2,
            Error::Uncertified { .. } | Error::WindowTooSmall(_) => 3,
            Error::IdentityViolation(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
