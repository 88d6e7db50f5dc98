//! Fetching entity descriptions from a fixture directory or over HTTP.

use std::path::{Path, PathBuf};

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use crate::rdf::Iri;

/// Everything except RFC 3986 unreserved characters.
const ENCODE: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Http(String),
}

/// Returns the Turtle description of an entity, or `None` when the source has none.
pub trait Fetcher: Send + Sync {
    fn fetch(&self, iri: &Iri) -> Result<Option<String>, FetchError>;
}

/// Fixture file name for an entity: the percent-encoded IRI plus `.ttl`.
pub fn fixture_file_name(iri: &Iri) -> String {
    format!("{}.ttl", utf8_percent_encode(iri.as_str(), ENCODE))
}

pub struct FixtureFetcher {
    dir: PathBuf,
}

impl FixtureFetcher {
    /// Fails when the directory cannot be listed.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, FetchError> {
        let dir = dir.as_ref().to_path_buf();
        std::fs::read_dir(&dir).map_err(|source| FetchError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(FixtureFetcher { dir })
    }
}

impl Fetcher for FixtureFetcher {
    fn fetch(&self, iri: &Iri) -> Result<Option<String>, FetchError> {
        let path = self.dir.join(fixture_file_name(iri));
        match std::fs::read_to_string(&path) {
            Ok(text) => Ok(Some(text)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(FetchError::Io {
                path: path.display().to_string(),
                source,
            }),
        }
    }
}

/// Dereferences entity IRIs with `Accept: text/turtle`.
///
/// With a nonempty base URL the request goes to `base + percent-encoded IRI`;
/// otherwise the IRI itself is fetched.
#[cfg(feature = "live")]
pub struct HttpFetcher {
    base: String,
    agent: ureq::Agent,
}

#[cfg(feature = "live")]
impl HttpFetcher {
    pub fn new(base: &str) -> Self {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(std::time::Duration::from_secs(30)))
            .build();
        HttpFetcher {
            base: base.to_string(),
            agent: config.into(),
        }
    }
}

#[cfg(feature = "live")]
impl Fetcher for HttpFetcher {
    fn fetch(&self, iri: &Iri) -> Result<Option<String>, FetchError> {
        let url = if self.base.is_empty() {
            iri.as_str().to_string()
        } else {
            format!("{}{}", self.base, utf8_percent_encode(iri.as_str(), ENCODE))
        };
        match self.agent.get(&url).header("Accept", "text/turtle").call() {
            Ok(mut resp) => resp
                .body_mut()
                .read_to_string()
                .map(Some)
                .map_err(|e| FetchError::Http(e.to_string())),
            Err(ureq::Error::StatusCode(404 | 410)) => Ok(None),
            Err(e) => Err(FetchError::Http(format!("{url}: {e}"))),
        }
    }
}
