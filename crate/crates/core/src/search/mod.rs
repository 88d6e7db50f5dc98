//! Multilingual autocomplete and ontology-driven faceted search.

mod autocomplete;
mod facets;

pub use autocomplete::{build_index, AutocompleteIndex, Completion, LexicalEntry};
pub use facets::{
    FacetDefinition, FacetEngine, FacetKind, FacetState, FacetSuggestion, FilterSelection, Hop, Origin, Relation,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("unknown facet `{0}`")]
    UnknownFacet(String),
    #[error("selection for facet `{0}` has no values")]
    EmptySelection(String),
    #[error("limit must be at least 1")]
    ZeroLimit,
    #[error("invalid facet definition `{id}`: {message}")]
    InvalidFacet { id: String, message: String },
}
