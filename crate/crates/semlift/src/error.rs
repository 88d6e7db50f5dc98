use semlift_core::align::AlignError;
use semlift_core::enrich::EnrichError;
use semlift_core::rdf::RdfError;
use semlift_core::search::SearchError;
use semlift_core::xml::XmlError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Rdf {
        path: String,
        #[source]
        source: RdfError,
    },
    #[error("{0}")]
    Xml(#[from] XmlError),
    #[error("{0}")]
    Align(#[from] AlignError),
    #[error("{0}")]
    Enrich(#[from] EnrichError),
    #[error("{0}")]
    Search(#[from] SearchError),
    /// A required input is missing, e.g. no documents to convert.
    #[error("{0}")]
    Input(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error("serve: {0}")]
    Serve(String),
}

impl CliError {
    /// Stable category name for machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
            CliError::Rdf { .. } => "rdf",
            CliError::Xml(_) => "xml",
            CliError::Align(_) => "align",
            CliError::Enrich(_) => "enrich",
            CliError::Search(_) => "search",
            CliError::Input(_) => "input",
            CliError::Snapshot(_) => "snapshot",
            CliError::Serve(_) => "serve",
        }
    }

    /// One line of JSON: `{"error":{"kind":...,"message":...}}`.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

pub(crate) fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}
