//! Converting instance documents into RDF under a derived ontology.
//!
//! Every complex element instance becomes an individual
//! `instance_ns + document_id + "/" + element + "/" + ordinal`, where the
//! ordinal counts instances of that element name in document order starting
//! at 1. The individual gets one `rdf:type`, a typed literal per attribute or
//! simple child, and an object-property link to each complex child.
//! Whitespace-only text inside complex elements is ignored.

use std::collections::HashMap;

use super::lift::{DerivedOntology, LiftConfig, Member};
use super::model::{Content, XmlDocument, XmlElement};
use super::XmlError;
use crate::exec::Execution;
use crate::rdf::vocab::rdf;
use crate::rdf::{Graph, Iri, Literal, Term, Triple};

pub fn convert_instance(doc: &XmlDocument, onto: &DerivedOntology, cfg: &LiftConfig) -> Result<Graph, XmlError> {
    cfg.validate()?;
    let mut conv = Converter {
        onto,
        cfg,
        ordinals: HashMap::new(),
        graph: Graph::new(),
    };
    let root = &doc.root;
    let path = format!("/{}[1]", root.name);
    conv.check_namespace(root, &path)?;
    match onto.schema.element(&root.name).map(|e| &e.content) {
        Some(Content::Complex { .. }) => {}
        Some(Content::Simple(_)) => {
            return Err(invalid(&path, "root element must have complex content"));
        }
        None => return Err(invalid(&path, format!("element `{}` is not declared in the schema", root.name))),
    }
    conv.element(root, &path)?;
    Ok(conv.graph)
}

/// Converts several documents, each with its own document id, and merges the results.
pub fn convert_all(
    docs: &[(String, XmlDocument)],
    onto: &DerivedOntology,
    cfg: &LiftConfig,
    exec: Execution,
) -> Result<Graph, XmlError> {
    let graphs = exec.map(docs, |(id, doc)| {
        let doc_cfg = cfg.for_document(id.as_str())?;
        convert_instance(doc, onto, &doc_cfg)
    });
    let mut merged = Graph::new();
    for g in graphs {
        merged.extend(g?.iter().cloned());
    }
    Ok(merged)
}

fn invalid(location: &str, message: impl Into<String>) -> XmlError {
    XmlError::Invalid {
        location: location.to_string(),
        message: message.into(),
    }
}

struct Converter<'a> {
    onto: &'a DerivedOntology,
    cfg: &'a LiftConfig,
    ordinals: HashMap<String, usize>,
    graph: Graph,
}

impl Converter<'_> {
    fn check_namespace(&self, el: &XmlElement, path: &str) -> Result<(), XmlError> {
        let expected = self.onto.schema.target_namespace.as_str();
        let actual = el.namespace.as_deref().unwrap_or("");
        if actual != expected {
            return Err(invalid(
                path,
                format!("element `{}` is in namespace `{actual}`, expected `{expected}`", el.name),
            ));
        }
        Ok(())
    }

    fn mint(&mut self, name: &str, path: &str) -> Result<Iri, XmlError> {
        let n = self.ordinals.entry(name.to_string()).or_insert(0);
        *n += 1;
        let iri = format!("{}{}/{}/{}", self.cfg.instance_namespace, self.cfg.document_id, name, n);
        Iri::new(iri).map_err(|e| invalid(path, e.to_string()))
    }

    fn add(&mut self, s: &Iri, p: &Iri, o: impl Into<Term>) {
        self.graph
            .insert(Triple::new(s.clone(), p.clone(), o).expect("IRI subject"));
    }

    /// Converts a complex element instance and returns its individual.
    fn element(&mut self, el: &XmlElement, path: &str) -> Result<Iri, XmlError> {
        let onto = self.onto;
        let Some(Content::Complex { children, attributes }) = onto.schema.element(&el.name).map(|e| &e.content) else {
            unreachable!("caller checked complex content");
        };
        let individual = self.mint(&el.name, path)?;
        let class = onto.class_for(&el.name).expect("complex element has a class");
        self.add(&individual, &rdf::type_(), class.iri.clone());

        if !el.text.trim().is_empty() {
            return Err(invalid(path, "unexpected text content in complex element"));
        }

        for decl in attributes {
            let value = el.attributes.iter().find(|a| a.namespace.is_none() && a.name == decl.name);
            let Some(value) = value else {
                if decl.required {
                    return Err(invalid(path, format!("missing required attribute `{}`", decl.name)));
                }
                continue;
            };
            let at = format!("{path}/@{}", decl.name);
            let lexical = decl
                .ty
                .lexical_form(&value.value)
                .ok_or_else(|| invalid(&at, format!("`{}` is not a valid {}", value.value, decl.ty)))?;
            let prop = onto
                .datatype_property(&el.name, &Member::Attribute(decl.name.clone()))
                .expect("attribute has a property");
            let literal = Literal::typed(lexical, prop.range.datatype());
            self.add(&individual, &prop.iri.clone(), literal);
        }
        if let Some(extra) = el
            .attributes
            .iter()
            .find(|a| a.namespace.is_some() || !attributes.iter().any(|d| d.name == a.name))
        {
            return Err(invalid(path, format!("undeclared attribute `{}`", extra.name)));
        }

        // Match children against the sequence, greedily per reference.
        let mut sibling_counts: HashMap<&str, usize> = HashMap::new();
        let mut next = 0;
        for r in children {
            let mut count = 0u32;
            while next < el.children.len() && el.children[next].name == r.name && r.max.allows(count + 1) {
                let child = &el.children[next];
                let idx = sibling_counts.entry(child.name.as_str()).or_insert(0);
                *idx += 1;
                let child_path = format!("{path}/{}[{}]", child.name, idx);
                self.check_namespace(child, &child_path)?;
                self.child(&individual, el, child, &child_path)?;
                count += 1;
                next += 1;
            }
            if count < r.min {
                return Err(invalid(
                    path,
                    format!("expected at least {} `{}` element(s), found {count}", r.min, r.name),
                ));
            }
        }
        if let Some(extra) = el.children.get(next) {
            let idx = sibling_counts.get(extra.name.as_str()).copied().unwrap_or(0) + 1;
            return Err(invalid(
                &format!("{path}/{}[{idx}]", extra.name),
                format!("unexpected element `{}`", extra.name),
            ));
        }
        Ok(individual)
    }

    fn child(&mut self, individual: &Iri, parent: &XmlElement, child: &XmlElement, path: &str) -> Result<(), XmlError> {
        let onto = self.onto;
        match &onto.schema.element(&child.name).expect("referenced element is declared").content {
            Content::Simple(ty) => {
                if !child.children.is_empty() || !child.attributes.is_empty() {
                    return Err(invalid(path, "simple element must contain only text"));
                }
                let lexical = ty
                    .lexical_form(&child.text)
                    .ok_or_else(|| invalid(path, format!("`{}` is not a valid {ty}", child.text)))?;
                let prop = onto
                    .datatype_property(&parent.name, &Member::Child(child.name.clone()))
                    .expect("simple child has a property");
                self.add(individual, &prop.iri.clone(), Literal::typed(lexical, prop.range.datatype()));
            }
            Content::Complex { .. } => {
                let target = self.element(child, path)?;
                let prop = onto
                    .object_property(&parent.name, &child.name)
                    .expect("complex child has a property");
                self.add(individual, &prop.iri.clone(), target);
            }
        }
        Ok(())
    }
}
