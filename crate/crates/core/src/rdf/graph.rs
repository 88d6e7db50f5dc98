use std::collections::{BTreeMap, BTreeSet, HashMap};

use indexmap::IndexSet;

use super::{Iri, Term, Triple};

/// An in-memory set of triples with subject, predicate and object indexes.
///
/// Triples are never removed, so index entries are positions into the
/// insertion-ordered triple set and stay valid for the life of the graph.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: IndexSet<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a triple; returns `false` when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        let pos = self.triples.len();
        self.by_subject.entry(triple.subject().clone()).or_default().push(pos);
        self.by_predicate.entry(triple.predicate().clone()).or_default().push(pos);
        self.by_object.entry(triple.object().clone()).or_default().push(pos);
        self.triples.insert(triple);
        true
    }

    /// Inserts every triple, returning how many were new.
    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) -> usize {
        triples.into_iter().map(|t| self.insert(t)).filter(|&added| added).count()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Triples ordered by their N-Triples rendering.
    pub fn sorted(&self) -> Vec<&Triple> {
        let mut out: Vec<&Triple> = self.triples.iter().collect();
        sort_canonical(&mut out);
        out
    }

    /// All triples matching the bound positions, in canonical order.
    pub fn matching(&self, subject: Option<&Term>, predicate: Option<&Iri>, object: Option<&Term>) -> Vec<&Triple> {
        let lists = [
            subject.map(|s| self.by_subject.get(s)),
            predicate.map(|p| self.by_predicate.get(p)),
            object.map(|o| self.by_object.get(o)),
        ];
        let any_bound = lists.iter().any(Option::is_some);
        let mut candidates: Option<&[usize]> = None;
        for list in lists.into_iter().flatten() {
            let Some(list) = list else {
                return Vec::new();
            };
            if candidates.is_none_or(|c| list.len() < c.len()) {
                candidates = Some(list);
            }
        }
        let matches = |t: &&Triple| {
            subject.is_none_or(|s| t.subject() == s)
                && predicate.is_none_or(|p| t.predicate() == p)
                && object.is_none_or(|o| t.object() == o)
        };
        let mut out: Vec<&Triple> = if any_bound {
            candidates
                .unwrap_or(&[])
                .iter()
                .map(|&i| &self.triples[i])
                .filter(matches)
                .collect()
        } else {
            self.triples.iter().collect()
        };
        sort_canonical(&mut out);
        out
    }

    /// Objects of `(subject, predicate, ?)` in insertion order.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &'a Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.index_iter(self.by_subject.get(subject))
            .filter(move |t| t.predicate() == predicate)
            .map(Triple::object)
    }

    /// Subjects of `(?, predicate, object)` in insertion order.
    pub fn subjects_with<'a>(&'a self, predicate: &'a Iri, object: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.index_iter(self.by_object.get(object))
            .filter(move |t| t.predicate() == predicate)
            .map(Triple::subject)
    }

    /// Triples with the given predicate, in insertion order.
    pub fn with_predicate<'a>(&'a self, predicate: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        self.index_iter(self.by_predicate.get(predicate))
    }

    /// Triples with the given subject, in insertion order.
    pub fn with_subject<'a>(&'a self, subject: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        self.index_iter(self.by_subject.get(subject))
    }

    pub fn has_subject(&self, subject: &Term) -> bool {
        self.by_subject.contains_key(subject)
    }

    /// True when the IRI occurs anywhere in the graph.
    pub fn mentions(&self, iri: &Iri) -> bool {
        let term = Term::Iri(iri.clone());
        self.by_subject.contains_key(&term) || self.by_object.contains_key(&term) || self.by_predicate.contains_key(iri)
    }

    pub fn subjects(&self) -> BTreeSet<&Term> {
        self.by_subject.keys().collect()
    }

    fn index_iter<'a>(&'a self, positions: Option<&'a Vec<usize>>) -> impl Iterator<Item = &'a Triple> + 'a {
        positions.into_iter().flatten().map(move |&i| &self.triples[i])
    }

    /// True when both graphs hold the same triples, ignoring order and prefixes.
    pub fn same_triples(&self, other: &Graph) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(t))
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }

    /// Checks that every index can retrieve every triple and holds nothing else.
    pub fn indexes_consistent(&self) -> bool {
        let s_count: usize = self.by_subject.values().map(Vec::len).sum();
        let p_count: usize = self.by_predicate.values().map(Vec::len).sum();
        let o_count: usize = self.by_object.values().map(Vec::len).sum();
        if s_count != self.len() || p_count != self.len() || o_count != self.len() {
            return false;
        }
        self.triples.iter().enumerate().all(|(i, t)| {
            self.by_subject.get(t.subject()).is_some_and(|v| v.contains(&i))
                && self.by_predicate.get(t.predicate()).is_some_and(|v| v.contains(&i))
                && self.by_object.get(t.object()).is_some_and(|v| v.contains(&i))
        })
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

pub(crate) fn sort_canonical(triples: &mut [&Triple]) {
    triples.sort_by_cached_key(|t| t.to_ntriples());
}
