use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document. `line` is 1-based when known.
    #[error("parse error{}: {message}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },

    #[error("unsupported TSPLIB keyword or value: {0}")]
    Unsupported(String),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("road network is disconnected: no path between settlement {from} and settlement {to}")]
    Disconnected { from: usize, to: usize },

    #[error(
        "k_trucks must be between 1 and the number of warehouses ({warehouses}), got {requested}"
    )]
    TrucksOutOfRange { requested: usize, warehouses: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: impl Into<Option<usize>>, message: impl Into<String>) -> Self {
        Error::Parse {
            line: line.into(),
            message: message.into(),
        }
    }
}
