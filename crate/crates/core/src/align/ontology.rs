//! Ontology documents in the Turtle subset, merged across `owl:imports`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use super::AlignError;
use crate::rdf::vocab::{owl, rdf, rdfs, skos};
use crate::rdf::{parse_turtle, Graph, Iri, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub text: String,
    pub language: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub iri: Iri,
    pub labels: Vec<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    Datatype,
    Object,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropDecl {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub labels: Vec<Label>,
}

/// Classes, properties and hierarchy axioms read from one or more documents.
#[derive(Clone, Debug)]
pub struct Ontology {
    pub id: Iri,
    pub classes: BTreeMap<Iri, ClassDecl>,
    pub properties: BTreeMap<Iri, PropDecl>,
    pub subclass_axioms: BTreeSet<(Iri, Iri)>,
    pub subproperty_axioms: BTreeSet<(Iri, Iri)>,
    pub imports: Vec<Iri>,
    /// Every triple of every merged document.
    pub graph: Graph,
}

fn label_predicates() -> [Iri; 3] {
    [rdfs::label(), skos::pref_label(), skos::alt_label()]
}

fn labels_of(g: &Graph, subject: &Term) -> Vec<Label> {
    let mut labels = BTreeSet::new();
    for p in label_predicates() {
        for o in g.objects(subject, &p) {
            if let Some(lit) = o.as_literal() {
                labels.insert(Label {
                    text: lit.lexical().to_string(),
                    language: lit.language().map(str::to_string),
                });
            }
        }
    }
    labels.into_iter().collect()
}

fn iri_pairs(g: &Graph, predicate: &Iri) -> BTreeSet<(Iri, Iri)> {
    g.with_predicate(predicate)
        .filter_map(|t| Some((t.subject().as_iri()?.clone(), t.object().as_iri()?.clone())))
        .collect()
}

impl Ontology {
    /// Reads a single document. Imports are recorded but not resolved.
    pub fn from_graph(graph: Graph, origin: &str) -> Result<Ontology, AlignError> {
        let type_ = rdf::type_();
        let ids: Vec<Iri> = graph
            .subjects_with(&type_, &owl::ontology().into())
            .filter_map(|s| s.as_iri().cloned())
            .collect();
        let id = match ids.as_slice() {
            [] => return Err(AlignError::MissingOntologyId { path: origin.to_string() }),
            [id] => id.clone(),
            _ => return Err(AlignError::MultipleOntologyIds { path: origin.to_string() }),
        };
        let id_term = Term::Iri(id.clone());
        let imports = graph
            .objects(&id_term, &owl::imports())
            .filter_map(|o| o.as_iri().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let mut classes = BTreeMap::new();
        for class_type in [owl::class(), rdfs::class()] {
            for s in graph.subjects_with(&type_, &class_type.into()) {
                if let Some(iri) = s.as_iri() {
                    classes.insert(
                        iri.clone(),
                        ClassDecl {
                            iri: iri.clone(),
                            labels: labels_of(&graph, s),
                        },
                    );
                }
            }
        }
        let mut properties = BTreeMap::new();
        for (prop_type, kind) in [
            (owl::datatype_property(), PropertyKind::Datatype),
            (owl::object_property(), PropertyKind::Object),
        ] {
            for s in graph.subjects_with(&type_, &prop_type.into()) {
                if let Some(iri) = s.as_iri() {
                    properties.insert(
                        iri.clone(),
                        PropDecl {
                            iri: iri.clone(),
                            kind,
                            labels: labels_of(&graph, s),
                        },
                    );
                }
            }
        }
        Ok(Ontology {
            id,
            classes,
            properties,
            subclass_axioms: iri_pairs(&graph, &rdfs::sub_class_of()),
            subproperty_axioms: iri_pairs(&graph, &rdfs::sub_property_of()),
            imports,
            graph,
        })
    }

    /// Adds the declarations, axioms and triples of `other`. Labels are unioned.
    pub fn merge(&mut self, other: &Ontology) {
        for (iri, decl) in &other.classes {
            let entry = self.classes.entry(iri.clone()).or_insert_with(|| ClassDecl {
                iri: iri.clone(),
                labels: Vec::new(),
            });
            merge_labels(&mut entry.labels, &decl.labels);
        }
        for (iri, decl) in &other.properties {
            let entry = self.properties.entry(iri.clone()).or_insert_with(|| decl.clone());
            merge_labels(&mut entry.labels, &decl.labels);
        }
        self.subclass_axioms.extend(other.subclass_axioms.iter().cloned());
        self.subproperty_axioms.extend(other.subproperty_axioms.iter().cloned());
        self.graph.extend(other.graph.iter().cloned());
    }

    /// True when the IRI is declared as a class or property, or occurs in the ontology graph.
    pub fn knows(&self, iri: &Iri) -> bool {
        self.classes.contains_key(iri) || self.properties.contains_key(iri) || self.graph.mentions(iri)
    }

    /// Direct superclasses from the subclass axioms.
    pub fn parents(&self, class: &Iri) -> BTreeSet<&Iri> {
        self.subclass_axioms
            .iter()
            .filter(|(sub, _)| sub == class)
            .map(|(_, sup)| sup)
            .collect()
    }

    /// Direct subclasses from the subclass axioms.
    pub fn children(&self, class: &Iri) -> BTreeSet<&Iri> {
        self.subclass_axioms
            .iter()
            .filter(|(_, sup)| sup == class)
            .map(|(sub, _)| sub)
            .collect()
    }

    fn check_subclass_acyclic(&self) -> Result<(), AlignError> {
        let mut adj: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (sub, sup) in &self.subclass_axioms {
            adj.entry(sub.as_str().to_string()).or_default().push(sup.as_str().to_string());
        }
        match find_cycle(&adj) {
            Some(cycle) => Err(AlignError::SubclassCycle { cycle }),
            None => Ok(()),
        }
    }
}

fn merge_labels(into: &mut Vec<Label>, from: &[Label]) {
    let mut all: BTreeSet<Label> = into.drain(..).collect();
    all.extend(from.iter().cloned());
    *into = all.into_iter().collect();
}

/// Finds one cycle in a directed graph, returned as a closed path (`a, b, a`).
fn find_cycle(adj: &BTreeMap<String, Vec<String>>) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit(
        node: &str,
        adj: &BTreeMap<String, Vec<String>>,
        marks: &mut BTreeMap<String, Mark>,
        stack: &mut Vec<String>,
    ) -> Option<Vec<String>> {
        match marks.get(node) {
            Some(Mark::Done) => return None,
            Some(Mark::Active) => {
                let start = stack.iter().position(|n| n == node).expect("active node is on the stack");
                let mut cycle = stack[start..].to_vec();
                cycle.push(node.to_string());
                return Some(cycle);
            }
            None => {}
        }
        marks.insert(node.to_string(), Mark::Active);
        stack.push(node.to_string());
        for next in adj.get(node).into_iter().flatten() {
            if let Some(cycle) = visit(next, adj, marks, stack) {
                return Some(cycle);
            }
        }
        stack.pop();
        marks.insert(node.to_string(), Mark::Done);
        None
    }
    let mut marks = BTreeMap::new();
    for node in adj.keys() {
        if let Some(cycle) = visit(node, adj, &mut marks, &mut Vec::new()) {
            return Some(cycle);
        }
    }
    None
}

fn read_document(path: &Path) -> Result<Ontology, AlignError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| AlignError::Io {
        path: origin.clone(),
        source,
    })?;
    let graph = parse_turtle(&text).map_err(|source| AlignError::Rdf {
        path: origin.clone(),
        source,
    })?;
    Ontology::from_graph(graph, &origin)
}

/// Loads ontology documents and everything they import, merged into one ontology.
///
/// Imports are looked up by ontology id among the given files and the `.ttl`
/// files of `import_dirs`; nothing is fetched over the network. The merged
/// ontology takes the id of the first file and the direct imports of all files.
pub fn load_ontology(files: &[PathBuf], import_dirs: &[PathBuf]) -> Result<Ontology, AlignError> {
    let mut available: BTreeMap<Iri, Ontology> = BTreeMap::new();
    let mut roots = Vec::new();
    for path in files {
        let onto = read_document(path)?;
        roots.push(onto.id.clone());
        available.insert(onto.id.clone(), onto);
    }
    let Some(first) = roots.first().cloned() else {
        return Err(AlignError::Config("no ontology files given".into()));
    };

    let mut catalog: BTreeMap<Iri, PathBuf> = BTreeMap::new();
    for dir in import_dirs {
        let entries = std::fs::read_dir(dir).map_err(|source| AlignError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "ttl"))
            .collect();
        paths.sort();
        for path in paths {
            let onto = read_document(&path)?;
            if let Some(previous) = catalog.get(&onto.id) {
                log::warn!(
                    "ontology `{}` found in both {} and {}; using the first",
                    onto.id.as_str(),
                    previous.display(),
                    path.display()
                );
                continue;
            }
            catalog.insert(onto.id.clone(), path);
        }
    }

    let mut queue: VecDeque<Iri> = roots.iter().cloned().collect();
    let mut seen: BTreeSet<Iri> = roots.iter().cloned().collect();
    let mut order = Vec::new();
    while let Some(id) = queue.pop_front() {
        if !available.contains_key(&id) {
            let path = &catalog[&id];
            available.insert(id.clone(), read_document(path)?);
        }
        let onto = &available[&id];
        for import in &onto.imports {
            if !available.contains_key(import) && !catalog.contains_key(import) {
                return Err(AlignError::MissingImport {
                    id: import.as_str().to_string(),
                    importer: id.as_str().to_string(),
                });
            }
            if seen.insert(import.clone()) {
                queue.push_back(import.clone());
            }
        }
        order.push(id);
    }

    let adj: BTreeMap<String, Vec<String>> = order
        .iter()
        .map(|id| (id.as_str().to_string(), available[id].imports.iter().map(|i| i.as_str().to_string()).collect()))
        .collect();
    if let Some(cycle) = find_cycle(&adj) {
        return Err(AlignError::ImportCycle { cycle });
    }

    let mut merged = available[&first].clone();
    let mut imports: Vec<Iri> = Vec::new();
    for id in &roots {
        for import in &available[id].imports {
            if !imports.contains(import) {
                imports.push(import.clone());
            }
        }
    }
    for id in order.iter().skip(1) {
        merged.merge(&available[id]);
    }
    merged.imports = imports;
    merged.check_subclass_acyclic()?;
    Ok(merged)
}
