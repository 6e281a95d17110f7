use thiserror::Error;

/// Recoverable failures of the laboratory pipeline.
///
/// Contract violations (dimension mismatches, operating on an empty census,
/// asking for the unstable direction of a non-saddle) are panics, not
/// variants here: they indicate a bug in the caller, not a condition the
/// caller can meaningfully handle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("census overcount: found {found} roots (with multiplicity) but expected {expected}; dedup tolerance too small or wrong expected count")]
    CensusOvercount { expected: u64, found: u64 },

    #[error("census incomplete: found {found} of {expected} expected roots")]
    CensusIncomplete { expected: u64, found: u64 },

    #[error("period budget exceeded: d^{n} does not fit the census budget")]
    BudgetExceeded { n: u32 },

    #[error("start direction is within {delta} of the stable hyperplane (distance {dist})")]
    DirectionNearStable { delta: f64, dist: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
