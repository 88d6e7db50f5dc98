//! IRIs of the standard vocabularies the toolkit reads and writes.

macro_rules! vocab {
    ($ns:literal; $($konst:ident, $func:ident = $local:literal;)*) => {
        pub const NS: &str = $ns;
        $(
            pub const $konst: &str = concat!($ns, $local);
            pub fn $func() -> $crate::rdf::Iri {
                $crate::rdf::Iri::new_unchecked($konst)
            }
        )*
    };
}

pub mod rdf {
    vocab! { "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
        TYPE, type_ = "type";
        LANG_STRING, lang_string = "langString";
        PROPERTY, property = "Property";
        FIRST, first = "first";
        REST, rest = "rest";
        NIL, nil = "nil";
    }
}

pub mod rdfs {
    vocab! { "http://www.w3.org/2000/01/rdf-schema#";
        LABEL, label = "label";
        COMMENT, comment = "comment";
        SUB_CLASS_OF, sub_class_of = "subClassOf";
        SUB_PROPERTY_OF, sub_property_of = "subPropertyOf";
        DOMAIN, domain = "domain";
        RANGE, range = "range";
        CLASS, class = "Class";
    }
}

pub mod owl {
    vocab! { "http://www.w3.org/2002/07/owl#";
        ONTOLOGY, ontology = "Ontology";
        IMPORTS, imports = "imports";
        CLASS, class = "Class";
        DATATYPE_PROPERTY, datatype_property = "DatatypeProperty";
        OBJECT_PROPERTY, object_property = "ObjectProperty";
        EQUIVALENT_CLASS, equivalent_class = "equivalentClass";
        EQUIVALENT_PROPERTY, equivalent_property = "equivalentProperty";
        SAME_AS, same_as = "sameAs";
    }
}

pub mod xsd {
    vocab! { "http://www.w3.org/2001/XMLSchema#";
        STRING, string = "string";
        INTEGER, integer = "integer";
        DECIMAL, decimal = "decimal";
        DOUBLE, double = "double";
        BOOLEAN, boolean = "boolean";
        DATE, date = "date";
    }
}

pub mod skos {
    vocab! { "http://www.w3.org/2004/02/skos/core#";
        PREF_LABEL, pref_label = "prefLabel";
        ALT_LABEL, alt_label = "altLabel";
        BROADER, broader = "broader";
        CONCEPT, concept = "Concept";
    }
}

pub mod dcterms {
    vocab! { "http://purl.org/dc/terms/";
        SUBJECT, subject = "subject";
        DESCRIPTION, description = "description";
        TITLE, title = "title";
    }
}

/// Toolkit-specific terms.
pub mod semlift {
    vocab! { "http://purl.org/semlift/vocab#";
        MAPPED_BY, mapped_by = "mappedBy";
    }
}

/// Prefixes used when writing Turtle unless the caller supplies its own.
pub fn standard_prefixes() -> Vec<(&'static str, &'static str)> {
    vec![
        ("dcterms", dcterms::NS),
        ("owl", owl::NS),
        ("rdf", rdf::NS),
        ("rdfs", rdfs::NS),
        ("skos", skos::NS),
        ("xsd", xsd::NS),
    ]
}
