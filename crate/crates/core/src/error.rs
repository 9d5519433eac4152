use std::path::PathBuf;

/// Errors surfaced by the analytics, the receivers and the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{function}: argument out of domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("degenerate geometry d == d0 = {d0} m; use the equidistant closed forms")]
    DegenerateGeometry { d0: f64 },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("scheme {scheme} requires {expected}")]
    SchemeMismatch {
        scheme: &'static str,
        expected: String,
    },

    #[error("singular zero-forcing group {group}; regenerate the channel draw")]
    SingularGroup { group: usize },

    #[error("favorable propagation violated: group size {w} exceeds {m} antennas")]
    FavorablePropagation { w: usize, m: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
