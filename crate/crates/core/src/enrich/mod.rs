//! Enrichment from linked-data sources and SKOS categorization.
//!
//! Each target entity is resolved in a source directly or through one of its
//! `owl:sameAs` aliases. The description document found is filtered to the
//! source's enabled predicates, the fetched IRI is renamed to the local target,
//! and the result is merged into the graph. Triples about other subjects (such
//! as the category hierarchy shipped with an entity) are kept as they are.

mod fetch;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use fetch::{fixture_file_name, FetchError, Fetcher, FixtureFetcher};
#[cfg(feature = "live")]
pub use fetch::HttpFetcher;

use crate::exec::Execution;
use crate::rdf::vocab::{dcterms, owl, skos};
use crate::rdf::{parse_turtle, Graph, Iri, Term, Triple};

#[derive(Debug, thiserror::Error)]
pub enum EnrichError {
    #[error("source `{source_id}`: {message}")]
    Source { source_id: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    FixtureDirectory,
    DereferenceEndpoint,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnrichmentSource {
    pub id: String,
    pub kind: SourceKind,
    /// Directory for fixture sources, base URL for endpoints.
    pub location: String,
    pub predicates: Vec<Iri>,
}

impl EnrichmentSource {
    pub fn fixture(id: impl Into<String>, dir: impl Into<PathBuf>, predicates: Vec<Iri>) -> Self {
        EnrichmentSource {
            id: id.into(),
            kind: SourceKind::FixtureDirectory,
            location: dir.into().display().to_string(),
            predicates,
        }
    }

    pub fn validate(&self) -> Result<(), EnrichError> {
        let err = |message: &str| EnrichError::Source {
            source_id: self.id.clone(),
            message: message.to_string(),
        };
        if self.id.is_empty() {
            return Err(err("source id is empty"));
        }
        if self.predicates.is_empty() {
            return Err(err("no enabled predicates"));
        }
        if self.kind == SourceKind::FixtureDirectory && !std::path::Path::new(&self.location).is_dir() {
            return Err(err(&format!("fixture directory {} does not exist", self.location)));
        }
        Ok(())
    }

    fn fetcher(&self) -> Result<Box<dyn Fetcher>, EnrichError> {
        match self.kind {
            SourceKind::FixtureDirectory => {
                let f = FixtureFetcher::open(&self.location).map_err(|e| EnrichError::Source {
                    source_id: self.id.clone(),
                    message: e.to_string(),
                })?;
                Ok(Box::new(f))
            }
            #[cfg(feature = "live")]
            SourceKind::DereferenceEndpoint => Ok(Box::new(HttpFetcher::new(&self.location))),
            #[cfg(not(feature = "live"))]
            SourceKind::DereferenceEndpoint => Err(EnrichError::Source {
                source_id: self.id.clone(),
                message: "dereference endpoints need the `live` feature".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntityReport {
    pub source: String,
    pub entity: Iri,
    /// The IRI whose description was used.
    pub resolved_as: Iri,
    pub added: usize,
    pub languages: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipReport {
    pub source: String,
    pub entity: Iri,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnrichmentReport {
    pub entities: Vec<EntityReport>,
    pub skipped: Vec<SkipReport>,
}

impl EnrichmentReport {
    pub fn total_added(&self) -> usize {
        self.entities.iter().map(|e| e.added).sum()
    }
}

enum Lookup {
    Found { fetched: Iri, graph: Box<Graph> },
    Skip(String),
}

/// `owl:sameAs` neighbours of `entity` in either direction, sorted.
pub fn aliases(g: &Graph, entity: &Iri) -> Vec<Iri> {
    let same = owl::same_as();
    let term = Term::Iri(entity.clone());
    let mut out: BTreeSet<Iri> = g.objects(&term, &same).filter_map(|t| t.as_iri().cloned()).collect();
    out.extend(g.subjects_with(&same, &term).filter_map(|t| t.as_iri().cloned()));
    out.remove(entity);
    out.into_iter().collect()
}

fn lookup(fetcher: &dyn Fetcher, g: &Graph, target: &Iri) -> Lookup {
    if !g.mentions(target) {
        return Lookup::Skip("not present in graph".into());
    }
    let candidates = std::iter::once(target.clone()).chain(aliases(g, target));
    for candidate in candidates {
        match fetcher.fetch(&candidate) {
            Ok(None) => continue,
            Ok(Some(text)) => {
                return match parse_turtle(&text) {
                    Ok(graph) => Lookup::Found {
                        fetched: candidate,
                        graph: Box::new(graph),
                    },
                    Err(e) => Lookup::Skip(format!("malformed description of {}: {e}", candidate.as_str())),
                };
            }
            Err(e) => return Lookup::Skip(format!("fetching {} failed: {e}", candidate.as_str())),
        }
    }
    Lookup::Skip("not found".into())
}

fn rename(term: &Term, from: &Iri, to: &Iri) -> Term {
    match term {
        Term::Iri(i) if i == from => Term::Iri(to.clone()),
        other => other.clone(),
    }
}

/// Merges descriptions from `sources` into a copy of `g`.
///
/// Sources run in list order, so a source may resolve entities through
/// aliases added by an earlier one. Within a source, descriptions are fetched
/// with `exec` and merged in sorted target order.
pub fn enrich(
    g: &Graph,
    targets: &BTreeSet<Iri>,
    sources: &[EnrichmentSource],
    exec: Execution,
) -> Result<(Graph, EnrichmentReport), EnrichError> {
    let mut out = g.clone();
    let mut report = EnrichmentReport::default();
    let targets: Vec<Iri> = targets.iter().cloned().collect();
    for source in sources {
        source.validate()?;
        let fetcher = source.fetcher()?;
        let enabled: BTreeSet<&Iri> = source.predicates.iter().collect();
        let snapshot = &out;
        let lookups = exec.map(&targets, |t| lookup(fetcher.as_ref(), snapshot, t));
        for (target, found) in targets.iter().zip(lookups) {
            let (fetched, doc) = match found {
                Lookup::Found { fetched, graph } => (fetched, graph),
                Lookup::Skip(reason) => {
                    log::debug!("{}: skipping {}: {reason}", source.id, target.as_str());
                    report.skipped.push(SkipReport {
                        source: source.id.clone(),
                        entity: target.clone(),
                        reason,
                    });
                    continue;
                }
            };
            let mut added = 0;
            let mut languages = BTreeSet::new();
            for t in doc.sorted() {
                if !enabled.contains(t.predicate()) {
                    continue;
                }
                let renamed = Triple::new(
                    rename(t.subject(), &fetched, target),
                    t.predicate().clone(),
                    rename(t.object(), &fetched, target),
                )
                .expect("renaming keeps subjects non-literal");
                if renamed.subject() == renamed.object() {
                    continue;
                }
                if out.insert(renamed.clone()) {
                    added += 1;
                    if let Some(lang) = renamed.object().as_literal().and_then(|l| l.language()) {
                        languages.insert(lang.to_string());
                    }
                }
            }
            report.entities.push(EntityReport {
                source: source.id.clone(),
                entity: target.clone(),
                resolved_as: fetched,
                added,
                languages,
            });
        }
    }
    Ok((out, report))
}

/// Direct `dcterms:subject` categories of each entity plus all their
/// `skos:broader` ancestors. Entities without categories are absent.
pub fn categorize(g: &Graph) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let broader = skos::broader();
    let mut out: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for t in g.with_predicate(&dcterms::subject()) {
        if let (Some(entity), Some(cat)) = (t.subject().as_iri(), t.object().as_iri()) {
            out.entry(entity.clone()).or_default().insert(cat.clone());
        }
    }
    let mut ancestors: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for cats in out.values_mut() {
        let direct: Vec<Iri> = cats.iter().cloned().collect();
        for c in direct {
            let up = ancestors.entry(c.clone()).or_insert_with(|| closure(g, &broader, &c));
            cats.extend(up.iter().cloned());
        }
    }
    out
}

/// Categories reachable from `start` over `broader`, excluding `start` unless it is on a cycle.
fn closure(g: &Graph, broader: &Iri, start: &Iri) -> BTreeSet<Iri> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start.clone()];
    while let Some(c) = stack.pop() {
        for up in g.objects(&Term::Iri(c), broader) {
            if let Some(up) = up.as_iri() {
                if seen.insert(up.clone()) {
                    stack.push(up.clone());
                }
            }
        }
    }
    seen
}

/// Categories of one entity, empty when it has none.
pub fn categories_of(g: &Graph, entity: &Iri) -> BTreeSet<Iri> {
    let broader = skos::broader();
    let mut out = BTreeSet::new();
    for c in g.objects(&Term::Iri(entity.clone()), &dcterms::subject()) {
        if let Some(c) = c.as_iri() {
            out.insert(c.clone());
            out.extend(closure(g, &broader, c));
        }
    }
    out
}
