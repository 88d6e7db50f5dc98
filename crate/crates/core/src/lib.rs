//! Semantic data integration: lift XML schemas and documents into RDF, align
//! the derived ontology with expert ontologies, enrich entities from linked
//! data sources, and serve autocomplete and faceted search over the result.
//!
//! The modules mirror the pipeline stages:
//!
//! - [`rdf`]: terms, the indexed [`rdf::Graph`], N-Triples and Turtle.
//! - [`xml`]: schema/document models, ontology derivation and instance conversion.
//! - [`align`]: ontologies, alignment matchers, mapping rules and their application.
//! - [`enrich`]: fixture-backed (or live) description fetching and SKOS categorization.
//! - [`search`]: autocomplete index and ontology-driven faceted search.
//!
//! Data-parallel loops go through [`exec::Execution`], which uses rayon when
//! the `parallel` feature is enabled and runs sequentially otherwise.

pub mod align;
pub mod enrich;
pub mod exec;
pub mod rdf;
pub mod search;
pub mod text;
pub mod xml;

pub use exec::Execution;
