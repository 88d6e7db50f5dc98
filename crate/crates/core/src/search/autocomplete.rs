//! Prefix completion over normalized labels and synonyms.

use std::collections::BTreeMap;

use serde::Serialize;

use super::SearchError;
use crate::rdf::{Graph, Iri, Term};
use crate::text::normalize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LexicalEntry {
    pub surface: String,
    pub normalized: String,
    pub language: Option<String>,
    pub concept: Iri,
    /// The label or synonym predicate the entry came from.
    pub predicate: Iri,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Completion {
    pub surface: String,
    pub language: Option<String>,
    pub concept: Iri,
    /// Query length over normalized entry length, in characters.
    pub score: f64,
}

#[derive(Clone, Debug, Default)]
struct Node {
    children: BTreeMap<char, usize>,
    /// Entries whose normalized form ends at this node.
    entries: Vec<usize>,
}

/// A character trie over normalized forms; each node lists the entries ending there.
#[derive(Clone, Debug)]
pub struct AutocompleteIndex {
    nodes: Vec<Node>,
    entries: Vec<LexicalEntry>,
}

/// One entry per `(IRI subject, listed predicate, literal)` triple.
pub fn build_index(g: &Graph, label_predicates: &[Iri]) -> AutocompleteIndex {
    let mut entries = Vec::new();
    for p in label_predicates {
        for t in g.with_predicate(p) {
            let (Term::Iri(concept), Some(lit)) = (t.subject(), t.object().as_literal()) else {
                continue;
            };
            entries.push(LexicalEntry {
                surface: lit.lexical().to_string(),
                normalized: normalize(lit.lexical()),
                language: lit.language().map(str::to_string),
                concept: concept.clone(),
                predicate: p.clone(),
            });
        }
    }
    entries.sort();
    entries.dedup();
    let mut index = AutocompleteIndex {
        nodes: vec![Node::default()],
        entries: Vec::new(),
    };
    for entry in entries {
        index.insert(entry);
    }
    index
}

impl AutocompleteIndex {
    fn insert(&mut self, entry: LexicalEntry) {
        let mut node = 0;
        for c in entry.normalized.chars() {
            node = match self.nodes[node].children.get(&c) {
                Some(&next) => next,
                None => {
                    self.nodes.push(Node::default());
                    let next = self.nodes.len() - 1;
                    self.nodes[node].children.insert(c, next);
                    next
                }
            };
        }
        self.nodes[node].entries.push(self.entries.len());
        self.entries.push(entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries, sorted.
    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    fn find(&self, prefix: &str) -> Option<usize> {
        let mut node = 0;
        for c in prefix.chars() {
            node = *self.nodes[node].children.get(&c)?;
        }
        Some(node)
    }

    /// Entries whose normalized form starts with the normalized query, ranked by
    /// normalized length, surface, concept IRI and language; one result per
    /// `(surface, concept)`. An empty query gives no results.
    pub fn complete(&self, query: &str, limit: usize) -> Result<Vec<Completion>, SearchError> {
        if limit == 0 {
            return Err(SearchError::ZeroLimit);
        }
        let q = normalize(query);
        if q.is_empty() {
            return Ok(Vec::new());
        }
        let Some(start) = self.find(&q) else {
            return Ok(Vec::new());
        };
        let mut found: Vec<&LexicalEntry> = Vec::new();
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n];
            found.extend(node.entries.iter().map(|&i| &self.entries[i]));
            stack.extend(node.children.values());
        }
        found.sort_by(|a, b| {
            let key = |e: &LexicalEntry| (e.normalized.chars().count(), e.surface.clone(), e.concept.clone(), e.language.clone());
            key(a).cmp(&key(b))
        });
        let qlen = q.chars().count() as f64;
        let mut seen = std::collections::HashSet::new();
        Ok(found
            .into_iter()
            .filter(|e| seen.insert((e.surface.as_str(), &e.concept)))
            .take(limit)
            .map(|e| Completion {
                surface: e.surface.clone(),
                language: e.language.clone(),
                concept: e.concept.clone(),
                score: qlen / e.normalized.chars().count() as f64,
            })
            .collect())
    }
}
