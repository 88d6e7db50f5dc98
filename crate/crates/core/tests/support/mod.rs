//! Oracles and generators shared by the integration tests and the acceptance target.
#![allow(dead_code)]

pub mod apply;
pub mod rdfgen;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use semlift_core::align::{load_ontology, Ontology};
use semlift_core::rdf::{read_turtle_file, Graph, Iri, Term};
use semlift_core::search::{FacetDefinition, FacetEngine, FacetKind, FilterSelection};
use semlift_core::text::normalize;
use semlift_core::Execution;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const SUBCLASS: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
pub const SUBJECT: &str = "http://purl.org/dc/terms/subject";
pub const BROADER: &str = "http://www.w3.org/2004/02/skos/core#broader";
pub const CLASS_NS: &str = "http://search.example.org/class#";
pub const CAT_NS: &str = "http://search.example.org/category/";
pub const PROP_NS: &str = "http://search.example.org/prop#";

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub struct FacetFixture {
    pub graph: Graph,
    pub ontology: Ontology,
    pub facets: Vec<FacetDefinition>,
    /// Candidate values per facet id, including one value nothing matches.
    pub pools: BTreeMap<String, Vec<String>>,
}

pub fn facet_fixture() -> FacetFixture {
    let dir = fixtures_dir().join("search");
    let graph = read_turtle_file(dir.join("entities.ttl")).unwrap();
    let ontology = load_ontology(&[dir.join("classes.ttl")], &[]).unwrap();
    let def = |id: &str, kind, anchor: String| FacetDefinition {
        id: id.into(),
        kind,
        anchor: iri(&anchor),
        label: id.into(),
    };
    let facets = vec![
        def("class", FacetKind::ClassHierarchy, format!("{CLASS_NS}Chemical")),
        def("phase", FacetKind::PropertyValue, format!("{PROP_NS}phase")),
        def("hazard", FacetKind::PropertyValue, format!("{PROP_NS}hazard")),
        def("category", FacetKind::Category, format!("{CAT_NS}Chemistry")),
    ];
    let names = |ns: &str, xs: &[&str]| xs.iter().map(|x| format!("{ns}{x}")).collect::<Vec<_>>();
    let pools = BTreeMap::from([
        (
            "class".to_string(),
            names(
                CLASS_NS,
                &["Chemical", "Organic", "Inorganic", "Element", "Alcohol", "Acid", "Ester", "Oxide", "Salt", "Nope"],
            ),
        ),
        ("phase".to_string(), vec!["solid".into(), "liquid".into(), "gas".into(), "plasma".into()]),
        (
            "hazard".to_string(),
            vec!["flammable".into(), "toxic".into(), "corrosive".into(), "oxidizing".into(), "inert".into()],
        ),
        (
            "category".to_string(),
            names(
                CAT_NS,
                &[
                    "Chemistry",
                    "Organic_compounds",
                    "Inorganic_compounds",
                    "Solvents",
                    "Alcohols",
                    "Carboxylic_acids",
                    "Oxides",
                    "Salts",
                    "Nope",
                ],
            ),
        ),
    ]);
    FacetFixture {
        graph,
        ontology,
        facets,
        pools,
    }
}

impl FacetFixture {
    pub fn engine(&self, exec: Execution) -> FacetEngine {
        FacetEngine::build(&self.graph, Some(&self.ontology), self.facets.clone(), exec).unwrap()
    }

    pub fn random_selection(&self, rng: &mut impl Rng) -> FilterSelection {
        let facet = self.facets.choose(rng).unwrap().id.clone();
        let pool = &self.pools[&facet];
        let n = rng.gen_range(1..=3);
        let values: Vec<String> = pool.choose_multiple(rng, n).cloned().collect();
        FilterSelection::new(facet, values)
    }

    pub fn random_selections(&self, rng: &mut impl Rng, max: usize) -> Vec<FilterSelection> {
        let n = rng.gen_range(0..=max);
        (0..n).map(|_| self.random_selection(rng)).collect()
    }
}

/// Reads the fixture triples directly instead of going through the engine.
pub struct SearchOracle<'a> {
    fx: &'a FacetFixture,
    /// (sub, sup) pairs from both the ontology and the entity graph.
    subclass: Vec<(String, String)>,
}

impl<'a> SearchOracle<'a> {
    pub fn new(fx: &'a FacetFixture) -> Self {
        let mut subclass = Vec::new();
        for g in [&fx.graph, &fx.ontology.graph] {
            for t in g.iter().filter(|t| t.predicate().as_str() == SUBCLASS) {
                subclass.push((t.subject().value_str().to_string(), t.object().value_str().to_string()));
            }
        }
        SearchOracle { fx, subclass }
    }

    fn values(&self, e: &str, p: &str) -> Vec<String> {
        self.fx
            .graph
            .iter()
            .filter(|t| t.subject().value_str() == e && t.predicate().as_str() == p)
            .map(|t| t.object().value_str().to_string())
            .collect()
    }

    pub fn typed(&self) -> BTreeSet<String> {
        self.fx
            .graph
            .iter()
            .filter(|t| t.predicate().as_str() == RDF_TYPE && matches!(t.subject(), Term::Iri(_)))
            .map(|t| t.subject().value_str().to_string())
            .collect()
    }

    /// Whether `c` equals `d` or is reachable from it over subclass edges.
    pub fn is_subclass(&self, d: &str, c: &str) -> bool {
        if d == c {
            return true;
        }
        self.subclass.iter().any(|(s, p)| s == d && self.is_subclass(p, c))
    }

    pub fn broader_or_self(&self, c: &str, ancestor: &str) -> bool {
        c == ancestor || self.values(c, BROADER).iter().any(|b| self.broader_or_self(b, ancestor))
    }

    pub fn categories(&self, e: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = self.values(e, SUBJECT);
        while let Some(c) = stack.pop() {
            if out.insert(c.clone()) {
                stack.extend(self.values(&c, BROADER));
            }
        }
        out
    }

    fn kind(&self, facet: &str) -> (&FacetKind, &str) {
        let f = self.fx.facets.iter().find(|f| f.id == facet).unwrap();
        (&f.kind, f.anchor.as_str())
    }

    pub fn member(&self, e: &str, facet: &str, value: &str) -> bool {
        match self.kind(facet) {
            (FacetKind::ClassHierarchy, _) => self.values(e, RDF_TYPE).iter().any(|t| self.is_subclass(t, value)),
            (FacetKind::PropertyValue, p) => self.values(e, p).iter().any(|v| v == value),
            (FacetKind::Category, _) => self.categories(e).contains(value),
        }
    }

    pub fn evaluate(&self, selections: &[FilterSelection]) -> BTreeSet<String> {
        self.typed()
            .into_iter()
            .filter(|e| {
                selections
                    .iter()
                    .all(|s| s.values.iter().any(|v| self.member(e, &s.facet, v)))
            })
            .collect()
    }

    /// Values an entity contributes directly to a facet's suggestions.
    pub fn attested(&self, e: &str, facet: &str) -> BTreeSet<String> {
        match self.kind(facet) {
            (FacetKind::ClassHierarchy, anchor) => self
                .values(e, RDF_TYPE)
                .into_iter()
                .filter(|t| t != anchor && self.is_subclass(t, anchor))
                .collect(),
            (FacetKind::PropertyValue, p) => self.values(e, p).into_iter().collect(),
            (FacetKind::Category, anchor) => self
                .categories(e)
                .into_iter()
                .filter(|c| c != anchor && self.broader_or_self(c, anchor))
                .collect(),
        }
    }

    /// Parents and siblings of attested classes that stay under the anchor.
    pub fn hierarchy_neighbours(&self, attested: &BTreeSet<String>, anchor: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for v in attested {
            for (_, p) in self.subclass.iter().filter(|(s, _)| s == v) {
                out.insert(p.clone());
                for (s, _) in self.subclass.iter().filter(|(_, q)| q == p) {
                    if s != v {
                        out.insert(s.clone());
                    }
                }
            }
        }
        out.retain(|c| c != anchor && self.is_subclass(c, anchor) && !attested.contains(c));
        out
    }
}

/// Linear-scan completion oracle over label triples.
pub fn scan_complete(g: &Graph, predicates: &[&str], query: &str, limit: usize) -> Vec<(String, Option<String>, String)> {
    let q = normalize(query);
    if q.is_empty() {
        return Vec::new();
    }
    let mut hits: Vec<(usize, String, String, Option<String>)> = g
        .iter()
        .filter(|t| predicates.contains(&t.predicate().as_str()))
        .filter_map(|t| {
            let lit = t.object().as_literal()?;
            let n = normalize(lit.lexical());
            n.starts_with(&q).then(|| {
                (
                    n.chars().count(),
                    lit.lexical().to_string(),
                    t.subject().value_str().to_string(),
                    lit.language().map(str::to_string),
                )
            })
        })
        .collect();
    hits.sort();
    let mut out: Vec<(String, Option<String>, String)> = Vec::new();
    for (_, surface, concept, lang) in hits {
        if !out.iter().any(|(s, _, c)| *s == surface && *c == concept) {
            out.push((surface, lang, concept));
        }
    }
    out.truncate(limit);
    out
}
