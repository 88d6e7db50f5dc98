//! RDF terms, an indexed in-memory graph, and N-Triples/Turtle serialization.

mod graph;
mod lexer;
mod ntriples;
mod term;
mod turtle;
pub mod vocab;

pub use graph::Graph;
pub use ntriples::{parse_ntriples, read_ntriples, write_ntriples, write_ntriples_to};
pub use term::{BlankNode, Iri, Literal, Term, Triple};
pub use turtle::{parse_turtle, write_turtle};

#[derive(Debug, thiserror::Error)]
pub enum RdfError {
    #[error("invalid IRI `{iri}`: {reason}")]
    InvalidIri { iri: String, reason: String },
    #[error("invalid blank node label `{0}`")]
    InvalidBlankNode(String),
    #[error("invalid language tag `{0}`")]
    InvalidLanguageTag(String),
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(String),
    #[error("syntax error on line {line} at `{token}`: {message}")]
    Syntax { line: usize, token: String, message: String },
    #[error("unsupported Turtle feature on line {line}: {feature}")]
    UnsupportedTurtle { line: usize, feature: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reads a Turtle file from disk.
pub fn read_turtle_file(path: impl AsRef<std::path::Path>) -> Result<Graph, RdfError> {
    let bytes = std::fs::read(path)?;
    parse_turtle(ntriples::decode_utf8(&bytes)?)
}

/// Reads an N-Triples file from disk.
pub fn read_ntriples_file(path: impl AsRef<std::path::Path>) -> Result<Graph, RdfError> {
    read_ntriples(std::fs::File::open(path)?)
}
