use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("layout contains no base stations")]
    EmptyLayout,

    #[error("serving index not set; call an association operation first")]
    ServingIndexUnset,

    #[error("sinr {gamma} is below the cell-edge value {min}")]
    SinrOutOfRange { gamma: f64, min: f64 },

    #[error("numerical failure: {0}")]
    Numerics(String),

    #[error("campaign produced no finite SINR samples")]
    EmptyCampaign,

    #[error("empty sample set")]
    EmptySamples,

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("malformed CSV at {path}: {reason}")]
    MalformedCsv { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code contract: 2 for configuration/input problems, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter { .. }
            | Error::Domain(_)
            | Error::Scenario(_)
            | Error::MalformedCsv { .. }
            | Error::Io(_) => 2,
            Error::Numerics(_)
            | Error::EmptyLayout
            | Error::ServingIndexUnset
            | Error::SinrOutOfRange { .. }
            | Error::EmptyCampaign
            | Error::EmptySamples => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
