//! Ontologies, alignment candidates between them, and mapping application.
//!
//! [`suggest_alignments`] compares two sides (an [`Ontology`] plus the
//! [`IdentifierFacts`] extracted from its instance data) with four lexical
//! matchers. The resulting [`MappingRule`]s serialize to a tab-separated file
//! and are materialized into a graph by [`apply_mappings`].

mod apply;
mod facts;
mod matcher;
mod ontology;
mod rules;

pub use apply::{apply_mappings, ApplyOutcome, Derivation, Justification};
pub use facts::{EntityFacts, FactConfig, IdentifierFacts};
pub use matcher::{suggest_alignments, AlignConfig, AlignSide, EntityKind};
pub use ontology::{load_ontology, ClassDecl, Label, Ontology, PropDecl, PropertyKind};
pub use rules::{parse_rules, rules_from_graph, write_rules, MappingRule, RuleKind};

use crate::rdf::RdfError;

#[derive(Debug, thiserror::Error)]
pub enum AlignError {
    #[error("{path}: {source}")]
    Rdf {
        path: String,
        #[source]
        source: RdfError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: no `owl:Ontology` declaration")]
    MissingOntologyId { path: String },
    #[error("{path}: more than one `owl:Ontology` declaration")]
    MultipleOntologyIds { path: String },
    #[error("missing import `{id}` (imported by `{importer}`)")]
    MissingImport { id: String, importer: String },
    #[error("import cycle: {}", .cycle.join(" -> "))]
    ImportCycle { cycle: Vec<String> },
    #[error("subclass cycle: {}", .cycle.join(" -> "))]
    SubclassCycle { cycle: Vec<String> },
    #[error("invalid mapping rule: {0}")]
    InvalidRule(String),
    #[error("rule file line {line}: {message}")]
    RuleFormat { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}
