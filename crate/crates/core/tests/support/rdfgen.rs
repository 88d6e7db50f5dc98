//! Random graph generation for serializer round trips.

use proptest::prelude::*;
use semlift_core::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};

const NAMESPACES: &[&str] = &[
    "http://ex.org/",
    "http://example.com/a/b#",
    "urn:x:",
    "http://ünï.example/ns/",
    "https://data.example.org/id/",
];

const DATATYPES: &[&str] = &[
    "http://www.w3.org/2001/XMLSchema#integer",
    "http://www.w3.org/2001/XMLSchema#double",
    "http://www.w3.org/2001/XMLSchema#boolean",
    "http://www.w3.org/2001/XMLSchema#date",
    "http://ex.org/customType",
];

const LANGS: &[&str] = &["en", "de", "fr-CA", "zh-Hant-TW", "x-private"];

pub fn iri() -> impl Strategy<Value = Iri> {
    (prop::sample::select(NAMESPACES), "[A-Za-z0-9_.~-]{0,8}|[A-Za-zé]{1,4}%[0-9A-F]{2}")
        .prop_map(|(ns, local)| Iri::new(format!("{ns}{local}")).unwrap())
}

fn blank() -> impl Strategy<Value = BlankNode> {
    "[A-Za-z0-9_]{1,6}".prop_map(|l| BlankNode::new(l).unwrap())
}

fn lexical() -> impl Strategy<Value = String> {
    prop_oneof![
        "\\PC{0,12}",
        "[\"\\\\\n\r\t 'a-c#@<>.:;]{0,10}",
        "[\u{0}-\u{1f}\u{7f}a]{0,4}",
    ]
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        lexical().prop_map(Literal::string),
        (lexical(), prop::sample::select(LANGS)).prop_map(|(s, l)| Literal::lang(s, l).unwrap()),
        (lexical(), prop::sample::select(DATATYPES)).prop_map(|(s, d)| Literal::typed(s, Iri::new(d).unwrap())),
    ]
}

fn subject() -> impl Strategy<Value = Term> {
    prop_oneof![3 => iri().prop_map(Term::Iri), 1 => blank().prop_map(Term::Blank)]
}

fn object() -> impl Strategy<Value = Term> {
    prop_oneof![
        2 => iri().prop_map(Term::Iri),
        1 => blank().prop_map(Term::Blank),
        3 => literal().prop_map(Term::Literal),
    ]
}

pub fn triple() -> impl Strategy<Value = Triple> {
    (subject(), iri(), object()).prop_map(|(s, p, o)| Triple::new(s, p, o).unwrap())
}

pub fn graph(max: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(triple(), 0..=max).prop_map(|ts| {
        let mut g = Graph::new();
        g.extend(ts);
        g
    })
}

/// Prefixes offered to the Turtle writer; some overlap the generated namespaces.
pub const TURTLE_PREFIXES: &[(&str, &str)] = &[
    ("ex", "http://ex.org/"),
    ("ab", "http://example.com/a/b#"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
];
