//! Syntactic conversion: XML schema subset → derived ontology, XML instance → RDF.

mod convert;
mod lift;
mod model;
pub mod naming;

pub use convert::{convert_all, convert_instance};
pub use lift::{
    lift_schema, ClassDef, DatatypePropertyDef, DerivedOntology, LiftConfig, Member, ObjectPropertyDef,
};
pub use model::{
    parse_document, parse_schema, AttrDecl, Content, ElementDecl, ElementRef, MaxOccurs, SimpleType, XmlAttribute,
    XmlDocument, XmlElement, XmlSchemaModel,
};

#[derive(Debug, thiserror::Error)]
pub enum XmlError {
    #[error("XML syntax error at {line}:{column}: {message}")]
    Syntax { line: u32, column: u32, message: String },
    #[error("unsupported construct on line {line}: {construct}")]
    Unsupported { construct: String, line: u32 },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid document at {location}: {message}")]
    Invalid { location: String, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}
