//! Deriving an ontology from a schema.
//!
//! Rules, applied in schema declaration order:
//!
//! 1. every complex element becomes a class `ns + PascalCase(name)`;
//! 2. every attribute and simple child becomes a datatype property
//!    `ns + camelCase(parent) + "_" + camelCase(name)` with the parent class as
//!    domain and the mapped XSD datatype as range;
//! 3. every complex child becomes an object property `ns + "has" + PascalCase(child)`
//!    from the parent class to the child class;
//! 4. a name already taken gets `_2`, `_3`, ... appended.
//!
//! Classes are minted before properties. Within an element, sequence children
//! come before attributes, which is the order XSD requires them to be written.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::model::{Content, SimpleType, XmlSchemaModel};
use super::naming::{camel_case, pascal_case};
use super::XmlError;
use crate::rdf::vocab::{owl, rdf, rdfs, standard_prefixes};
use crate::rdf::{write_turtle, Graph, Iri, Literal, Triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftConfig {
    pub lifting_namespace: String,
    pub instance_namespace: String,
    pub document_id: String,
}

impl LiftConfig {
    pub fn new(
        lifting_namespace: impl Into<String>,
        instance_namespace: impl Into<String>,
        document_id: impl Into<String>,
    ) -> Result<Self, XmlError> {
        let cfg = LiftConfig {
            lifting_namespace: lifting_namespace.into(),
            instance_namespace: instance_namespace.into(),
            document_id: document_id.into(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), XmlError> {
        for (what, ns) in [("lifting", &self.lifting_namespace), ("instance", &self.instance_namespace)] {
            if !(ns.ends_with('/') || ns.ends_with('#')) {
                return Err(XmlError::Config(format!("{what} namespace `{ns}` must end in `/` or `#`")));
            }
            Iri::new(ns.as_str()).map_err(|e| XmlError::Config(e.to_string()))?;
        }
        if self.document_id.is_empty() || self.document_id.contains(|c: char| c.is_whitespace() || c == '/') {
            return Err(XmlError::Config(format!("invalid document id `{}`", self.document_id)));
        }
        Ok(())
    }

    /// Same namespaces, different document.
    pub fn for_document(&self, document_id: impl Into<String>) -> Result<Self, XmlError> {
        LiftConfig::new(&self.lifting_namespace, &self.instance_namespace, document_id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDef {
    pub iri: Iri,
    pub label: String,
    pub element: String,
}

/// Where a datatype property's values come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Attribute(String),
    Child(String),
}

impl Member {
    pub fn name(&self) -> &str {
        match self {
            Member::Attribute(n) | Member::Child(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatatypePropertyDef {
    pub iri: Iri,
    pub label: String,
    pub domain: Iri,
    pub range: SimpleType,
    pub owner: String,
    pub member: Member,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectPropertyDef {
    pub iri: Iri,
    pub label: String,
    pub domain: Iri,
    pub range: Iri,
    pub owner: String,
    pub child: String,
}

/// The ontology derived from a schema, together with the schema it came from
/// (instance conversion validates against it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOntology {
    pub namespace: String,
    pub schema: XmlSchemaModel,
    pub classes: Vec<ClassDef>,
    pub datatype_properties: Vec<DatatypePropertyDef>,
    pub object_properties: Vec<ObjectPropertyDef>,
}

struct Minter<'a> {
    namespace: &'a str,
    taken: HashSet<String>,
}

impl Minter<'_> {
    fn mint(&mut self, local: String) -> Result<Iri, XmlError> {
        let mut candidate = local.clone();
        let mut n = 2;
        while self.taken.contains(&candidate) {
            candidate = format!("{local}_{n}");
            n += 1;
        }
        self.taken.insert(candidate.clone());
        Iri::new(format!("{}{}", self.namespace, candidate)).map_err(|e| XmlError::Schema(e.to_string()))
    }
}

pub fn lift_schema(schema: &XmlSchemaModel, cfg: &LiftConfig) -> Result<DerivedOntology, XmlError> {
    schema.validate()?;
    cfg.validate()?;
    let ns = cfg.lifting_namespace.as_str();
    let mut minter = Minter {
        namespace: ns,
        taken: HashSet::new(),
    };

    let mut classes = Vec::new();
    for e in schema.elements.iter().filter(|e| e.is_complex()) {
        let local = pascal_case(&e.name);
        if local.is_empty() {
            return Err(XmlError::Schema(format!("element name `{}` has no usable characters", e.name)));
        }
        classes.push(ClassDef {
            iri: minter.mint(local)?,
            label: e.name.clone(),
            element: e.name.clone(),
        });
    }
    let class_of = |name: &str| classes.iter().find(|c| c.element == name).map(|c| c.iri.clone());

    let mut datatype_properties = Vec::new();
    let mut object_properties = Vec::new();
    for e in &schema.elements {
        let Content::Complex { children, attributes } = &e.content else {
            continue;
        };
        let domain = class_of(&e.name).expect("complex elements have classes");
        let members = children
            .iter()
            .map(|c| Member::Child(c.name.clone()))
            .chain(attributes.iter().map(|a| Member::Attribute(a.name.clone())));
        for member in members {
            let simple = match &member {
                Member::Attribute(name) => attributes.iter().find(|a| &a.name == name).map(|a| a.ty),
                Member::Child(name) => match &schema.element(name).expect("validated").content {
                    Content::Simple(ty) => Some(*ty),
                    Content::Complex { .. } => None,
                },
            };
            match simple {
                Some(range) => {
                    let local = format!("{}_{}", camel_case(&e.name), camel_case(member.name()));
                    datatype_properties.push(DatatypePropertyDef {
                        iri: minter.mint(local)?,
                        label: member.name().to_string(),
                        domain: domain.clone(),
                        range,
                        owner: e.name.clone(),
                        member,
                    });
                }
                None => {
                    let child = member.name().to_string();
                    object_properties.push(ObjectPropertyDef {
                        iri: minter.mint(format!("has{}", pascal_case(&child)))?,
                        label: child.clone(),
                        domain: domain.clone(),
                        range: class_of(&child).expect("complex child has a class"),
                        owner: e.name.clone(),
                        child,
                    });
                }
            }
        }
    }

    Ok(DerivedOntology {
        namespace: ns.to_string(),
        schema: schema.clone(),
        classes,
        datatype_properties,
        object_properties,
    })
}

impl DerivedOntology {
    pub fn class_for(&self, element: &str) -> Option<&ClassDef> {
        self.classes.iter().find(|c| c.element == element)
    }

    pub fn datatype_property(&self, owner: &str, member: &Member) -> Option<&DatatypePropertyDef> {
        self.datatype_properties
            .iter()
            .find(|p| p.owner == owner && &p.member == member)
    }

    pub fn object_property(&self, owner: &str, child: &str) -> Option<&ObjectPropertyDef> {
        self.object_properties.iter().find(|p| p.owner == owner && p.child == child)
    }

    /// The ontology IRI: the lifting namespace without its trailing `/` or `#`.
    pub fn ontology_iri(&self) -> Iri {
        let trimmed = self.namespace.trim_end_matches(['/', '#']);
        Iri::new(trimmed).unwrap_or_else(|_| Iri::new_unchecked(self.namespace.clone()))
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        let mut add = |s: &Iri, p: Iri, o: crate::rdf::Term| {
            g.insert(Triple::new(s.clone(), p, o).expect("IRI subject"));
        };
        add(&self.ontology_iri(), rdf::type_(), owl::ontology().into());
        for c in &self.classes {
            add(&c.iri, rdf::type_(), owl::class().into());
            add(&c.iri, rdfs::label(), Literal::string(&c.label).into());
        }
        for p in &self.datatype_properties {
            add(&p.iri, rdf::type_(), owl::datatype_property().into());
            add(&p.iri, rdfs::label(), Literal::string(&p.label).into());
            add(&p.iri, rdfs::domain(), p.domain.clone().into());
            add(&p.iri, rdfs::range(), p.range.datatype().into());
        }
        for p in &self.object_properties {
            add(&p.iri, rdf::type_(), owl::object_property().into());
            add(&p.iri, rdfs::label(), Literal::string(&p.label).into());
            add(&p.iri, rdfs::domain(), p.domain.clone().into());
            add(&p.iri, rdfs::range(), p.range.clone().into());
        }
        g
    }

    /// Turtle with the lifting namespace bound to the empty prefix.
    pub fn to_turtle(&self) -> String {
        let mut prefixes = standard_prefixes();
        prefixes.push(("", self.namespace.as_str()));
        write_turtle(&self.to_graph(), &prefixes)
    }

    /// Plain-text review listing, one line per derived class or property:
    /// `kind<TAB>IRI<TAB>source<TAB>details`.
    pub fn review_report(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let _ = writeln!(out, "class\t{}\telement {}\t", c.iri.as_str(), c.element);
        }
        for p in &self.datatype_properties {
            let source = match &p.member {
                Member::Attribute(n) => format!("attribute {}/@{}", p.owner, n),
                Member::Child(n) => format!("element {}/{}", p.owner, n),
            };
            let _ = writeln!(
                out,
                "datatype-property\t{}\t{}\tdomain {} range xsd:{}",
                p.iri.as_str(),
                source,
                p.domain.as_str(),
                p.range
            );
        }
        for p in &self.object_properties {
            let _ = writeln!(
                out,
                "object-property\t{}\telement {}/{}\tdomain {} range {}",
                p.iri.as_str(),
                p.owner,
                p.child,
                p.domain.as_str(),
                p.range.as_str()
            );
        }
        out
    }
}
