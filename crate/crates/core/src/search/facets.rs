//! Faceted filtering and next-facet suggestions.
//!
//! Within one selection the values combine by OR; separate selections combine
//! by AND. The universe is every IRI with an `rdf:type`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::align::Ontology;
use crate::enrich::categories_of;
use crate::rdf::vocab::{rdf, rdfs, skos};
use crate::rdf::{Graph, Iri, Term};
use crate::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetKind {
    /// Values are classes under the anchor; an entity matches a class when one
    /// of its types is that class or a subclass of it.
    ClassHierarchy,
    /// Values are the objects of the anchor property.
    PropertyValue,
    /// Values are categories under the anchor, matched through `skos:broader`.
    Category,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetDefinition {
    pub id: String,
    pub kind: FacetKind,
    pub anchor: Iri,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSelection {
    pub facet: String,
    pub values: BTreeSet<String>,
}

impl FilterSelection {
    pub fn new<I, S>(facet: impl Into<String>, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FilterSelection {
            facet: facet.into(),
            values: values.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Parent,
    Sibling,
}

/// The hierarchy step that produced an expanded suggestion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hop {
    pub relation: Relation,
    /// The attested class the hop started from.
    pub of: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Origin {
    Direct,
    HierarchyExpanded(Hop),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetSuggestion {
    pub facet: String,
    pub value: String,
    /// Size of the result set after adding this value as a selection.
    pub count: usize,
    pub origin: Origin,
}

/// Selections plus the result set they produce. Only the engine creates states,
/// so the results always match the selections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetState {
    selections: Vec<FilterSelection>,
    results: BTreeSet<Iri>,
    step: u64,
}

impl FacetState {
    pub fn selections(&self) -> &[FilterSelection] {
        &self.selections
    }

    pub fn results(&self) -> &BTreeSet<Iri> {
        &self.results
    }

    /// Number of transitions since the initial state.
    pub fn step(&self) -> u64 {
        self.step
    }
}

#[derive(Debug, Default)]
struct FacetData {
    /// Values each entity contributes to suggestions.
    attested: BTreeMap<Iri, BTreeSet<String>>,
    /// Entities matching each value.
    matching: HashMap<String, BTreeSet<Iri>>,
    /// Suggestable values; for class facets the strict subtree of the anchor.
    scope: BTreeSet<String>,
}

/// Precomputed facet indexes over one graph.
#[derive(Debug)]
pub struct FacetEngine {
    facets: Vec<FacetDefinition>,
    data: Vec<FacetData>,
    universe: BTreeSet<Iri>,
    parents: BTreeMap<String, BTreeSet<String>>,
    children: BTreeMap<String, BTreeSet<String>>,
    exec: Execution,
}

fn closure(start: &str, edges: &BTreeMap<String, BTreeSet<String>>) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([start.to_string()]);
    let mut stack = vec![start.to_string()];
    while let Some(n) = stack.pop() {
        for next in edges.get(&n).into_iter().flatten() {
            if seen.insert(next.clone()) {
                stack.push(next.clone());
            }
        }
    }
    seen
}

impl FacetEngine {
    /// Class hierarchy comes from the ontology's subclass axioms plus any
    /// `rdfs:subClassOf` triples in the graph.
    pub fn build(
        g: &Graph,
        ontology: Option<&Ontology>,
        facets: Vec<FacetDefinition>,
        exec: Execution,
    ) -> Result<FacetEngine, SearchError> {
        let mut ids = BTreeSet::new();
        for f in &facets {
            if f.id.trim().is_empty() {
                return Err(SearchError::InvalidFacet {
                    id: f.id.clone(),
                    message: "empty id".into(),
                });
            }
            if !ids.insert(f.id.as_str()) {
                return Err(SearchError::InvalidFacet {
                    id: f.id.clone(),
                    message: "duplicate id".into(),
                });
            }
        }

        let mut parents: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut children: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut add_edge = |sub: &Iri, sup: &Iri| {
            if sub != sup {
                parents.entry(sub.as_str().into()).or_default().insert(sup.as_str().into());
                children.entry(sup.as_str().into()).or_default().insert(sub.as_str().into());
            }
        };
        if let Some(o) = ontology {
            for (sub, sup) in &o.subclass_axioms {
                add_edge(sub, sup);
            }
        }
        for t in g.with_predicate(&rdfs::sub_class_of()) {
            if let (Some(sub), Some(sup)) = (t.subject().as_iri(), t.object().as_iri()) {
                add_edge(sub, sup);
            }
        }

        let type_p = rdf::type_();
        let mut types: BTreeMap<Iri, BTreeSet<String>> = BTreeMap::new();
        for t in g.with_predicate(&type_p) {
            if let (Some(e), Some(c)) = (t.subject().as_iri(), t.object().as_iri()) {
                types.entry(e.clone()).or_default().insert(c.as_str().into());
            }
        }
        let universe: BTreeSet<Iri> = types.keys().cloned().collect();
        let entities: Vec<&Iri> = universe.iter().collect();

        let mut narrower: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for t in g.with_predicate(&skos::broader()) {
            if let (Some(c), Some(up)) = (t.subject().as_iri(), t.object().as_iri()) {
                narrower.entry(up.as_str().into()).or_default().insert(c.as_str().into());
            }
        }

        let data = facets
            .iter()
            .map(|f| {
                let anchor = f.anchor.as_str();
                let scope: BTreeSet<String> = match f.kind {
                    FacetKind::ClassHierarchy => closure(anchor, &children),
                    FacetKind::Category => closure(anchor, &narrower),
                    FacetKind::PropertyValue => BTreeSet::new(),
                }
                .into_iter()
                .filter(|v| v != anchor)
                .collect();
                // (matched values, attested values) per entity
                let per_entity: Vec<(BTreeSet<String>, BTreeSet<String>)> = exec.map(&entities, |e| match f.kind {
                    FacetKind::ClassHierarchy => {
                        let direct = &types[*e];
                        let matched = direct.iter().flat_map(|c| closure(c, &parents)).collect();
                        let attested = direct.iter().filter(|c| scope.contains(*c)).cloned().collect();
                        (matched, attested)
                    }
                    FacetKind::PropertyValue => {
                        let values: BTreeSet<String> = g
                            .objects(&Term::Iri((*e).clone()), &f.anchor)
                            .map(|o| o.value_str().to_string())
                            .collect();
                        (values.clone(), values)
                    }
                    FacetKind::Category => {
                        let matched: BTreeSet<String> =
                            categories_of(g, e).iter().map(|c| c.as_str().to_string()).collect();
                        let attested = matched.iter().filter(|c| scope.contains(*c)).cloned().collect();
                        (matched, attested)
                    }
                });
                let mut d = FacetData {
                    scope,
                    ..FacetData::default()
                };
                for (e, (matched, attested)) in entities.iter().zip(per_entity) {
                    for v in matched {
                        d.matching.entry(v).or_default().insert((*e).clone());
                    }
                    if !attested.is_empty() {
                        d.attested.insert((*e).clone(), attested);
                    }
                }
                d
            })
            .collect();

        Ok(FacetEngine {
            facets,
            data,
            universe,
            parents,
            children,
            exec,
        })
    }

    pub fn facets(&self) -> &[FacetDefinition] {
        &self.facets
    }

    pub fn universe(&self) -> &BTreeSet<Iri> {
        &self.universe
    }

    fn facet_index(&self, id: &str) -> Result<usize, SearchError> {
        self.facets
            .iter()
            .position(|f| f.id == id)
            .ok_or_else(|| SearchError::UnknownFacet(id.to_string()))
    }

    /// Entities matching any value of one facet.
    fn matches(&self, facet: usize, values: &BTreeSet<String>) -> BTreeSet<&Iri> {
        values
            .iter()
            .filter_map(|v| self.data[facet].matching.get(v))
            .flatten()
            .collect()
    }

    /// The result set of a list of selections.
    pub fn evaluate(&self, selections: &[FilterSelection]) -> Result<BTreeSet<Iri>, SearchError> {
        let mut resolved = Vec::with_capacity(selections.len());
        for s in selections {
            let i = self.facet_index(&s.facet)?;
            if s.values.is_empty() {
                return Err(SearchError::EmptySelection(s.facet.clone()));
            }
            resolved.push((i, &s.values));
        }
        let mut results = self.universe.clone();
        for (i, values) in resolved {
            let matched = self.matches(i, values);
            results.retain(|e| matched.contains(e));
        }
        Ok(results)
    }

    pub fn initial_state(&self) -> FacetState {
        FacetState {
            selections: Vec::new(),
            results: self.universe.clone(),
            step: 0,
        }
    }

    pub fn state_for(&self, selections: Vec<FilterSelection>) -> Result<FacetState, SearchError> {
        let results = self.evaluate(&selections)?;
        Ok(FacetState {
            selections,
            results,
            step: 0,
        })
    }

    /// Adds a selection; the result set can only shrink.
    pub fn select(&self, state: &FacetState, selection: FilterSelection) -> Result<FacetState, SearchError> {
        let i = self.facet_index(&selection.facet)?;
        if selection.values.is_empty() {
            return Err(SearchError::EmptySelection(selection.facet));
        }
        let matched = self.matches(i, &selection.values);
        let results = state.results.iter().filter(|e| matched.contains(e)).cloned().collect();
        let mut selections = state.selections.clone();
        selections.push(selection);
        Ok(FacetState {
            selections,
            results,
            step: state.step + 1,
        })
    }

    /// Drops the selection at `index`, if any, and re-evaluates.
    pub fn deselect(&self, state: &FacetState, index: usize) -> FacetState {
        let mut selections = state.selections.clone();
        if index < selections.len() {
            selections.remove(index);
        }
        let results = self.evaluate(&selections).expect("selections were validated on entry");
        FacetState {
            selections,
            results,
            step: state.step + 1,
        }
    }

    fn count(&self, facet: usize, value: &str, results: &BTreeSet<Iri>) -> usize {
        self.data[facet]
            .matching
            .get(value)
            .map_or(0, |m| m.iter().filter(|e| results.contains(*e)).count())
    }

    /// Values attested in the current results, each with the size of the result
    /// set it would produce. Class facets also offer the parent and siblings of
    /// each attested class. Values already selected in a facet are not offered
    /// again in that facet. Sorted by count descending, facet id, value.
    pub fn suggest(&self, state: &FacetState) -> Vec<FacetSuggestion> {
        let results = &state.results;
        let indexes: Vec<usize> = (0..self.facets.len()).collect();
        let per_facet = self.exec.map(&indexes, |&i| {
            let f = &self.facets[i];
            let d = &self.data[i];
            let selected: BTreeSet<&String> = state
                .selections
                .iter()
                .filter(|s| s.facet == f.id)
                .flat_map(|s| &s.values)
                .collect();
            let attested: BTreeSet<&String> = results.iter().filter_map(|e| d.attested.get(e)).flatten().collect();
            let mut out = Vec::new();
            for v in &attested {
                if !selected.contains(v) {
                    out.push(FacetSuggestion {
                        facet: f.id.clone(),
                        value: (*v).clone(),
                        count: self.count(i, v, results),
                        origin: Origin::Direct,
                    });
                }
            }
            if f.kind == FacetKind::ClassHierarchy {
                let mut expanded: BTreeMap<String, Hop> = BTreeMap::new();
                let mut offer = |value: &'_ String, hop: Hop| {
                    if d.scope.contains(value) && !attested.contains(value) && !selected.contains(value) {
                        let slot = expanded.entry(value.clone()).or_insert_with(|| hop.clone());
                        if hop < *slot {
                            *slot = hop;
                        }
                    }
                };
                for v in &attested {
                    for p in self.parents.get(*v).into_iter().flatten() {
                        offer(
                            p,
                            Hop {
                                relation: Relation::Parent,
                                of: (*v).clone(),
                            },
                        );
                        for s in self.children.get(p).into_iter().flatten() {
                            if s != *v {
                                offer(
                                    s,
                                    Hop {
                                        relation: Relation::Sibling,
                                        of: (*v).clone(),
                                    },
                                );
                            }
                        }
                    }
                }
                for (value, hop) in expanded {
                    let count = self.count(i, &value, results);
                    if count > 0 {
                        out.push(FacetSuggestion {
                            facet: f.id.clone(),
                            value,
                            count,
                            origin: Origin::HierarchyExpanded(hop),
                        });
                    }
                }
            }
            out
        });
        let mut all: Vec<FacetSuggestion> = per_facet.into_iter().flatten().collect();
        all.sort_by(|a, b| {
            b.count
                .cmp(&a.count)
                .then_with(|| a.facet.cmp(&b.facet))
                .then_with(|| a.value.cmp(&b.value))
        });
        all
    }
}
