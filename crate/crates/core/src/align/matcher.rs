//! Lexical alignment matchers.
//!
//! | id | evidence                                                   | default |
//! |----|------------------------------------------------------------|---------|
//! | M1 | same external identifier (scheme and exact value)          | 1.0     |
//! | M2 | same formula after removing whitespace                     | 0.9     |
//! | M3 | same normalized label, same language or either untagged    | 0.8     |
//! | M4 | same normalized label, both tagged with different languages | 0.6     |
//!
//! Each pair of entities of the same kind keeps only its best rule.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use super::facts::IdentifierFacts;
use super::ontology::{Label, Ontology};
use super::rules::{MappingRule, RuleKind};
use super::AlignError;
use crate::exec::Execution;
use crate::rdf::Iri;
use crate::text::normalize;

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlignConfig {
    pub external_id: f64,
    pub formula: f64,
    pub same_language_label: f64,
    pub cross_language_label: f64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            external_id: 1.0,
            formula: 0.9,
            same_language_label: 0.8,
            cross_language_label: 0.6,
        }
    }
}

impl AlignConfig {
    pub fn validate(&self) -> Result<(), AlignError> {
        for (name, v) in [
            ("external_id", self.external_id),
            ("formula", self.formula),
            ("same_language_label", self.same_language_label),
            ("cross_language_label", self.cross_language_label),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(AlignError::Config(format!("confidence `{name}` = {v} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// One side of an alignment: an ontology and the facts extracted from its data.
#[derive(Clone, Copy, Debug)]
pub struct AlignSide<'a> {
    pub ontology: &'a Ontology,
    pub facts: &'a IdentifierFacts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntityKind {
    Class,
    Property,
    Individual,
}

impl EntityKind {
    fn rule_kind(self) -> RuleKind {
        match self {
            EntityKind::Class => RuleKind::EquivalentClass,
            EntityKind::Property => RuleKind::EquivalentProperty,
            EntityKind::Individual => RuleKind::SameIndividual,
        }
    }
}

#[derive(Debug)]
struct Entity {
    iri: Iri,
    kind: EntityKind,
    /// Normalized label and its language.
    labels: Vec<(String, Option<String>)>,
    /// Formulas with all whitespace removed.
    formulas: Vec<String>,
    external_ids: Vec<(String, String)>,
}

impl<'a> AlignSide<'a> {
    pub fn kind_of(&self, iri: &Iri) -> EntityKind {
        if self.ontology.classes.contains_key(iri) {
            EntityKind::Class
        } else if self.ontology.properties.contains_key(iri) {
            EntityKind::Property
        } else {
            EntityKind::Individual
        }
    }

    fn entities(&self) -> Vec<Entity> {
        let mut labels: BTreeMap<&Iri, Vec<&Label>> = BTreeMap::new();
        for c in self.ontology.classes.values() {
            labels.entry(&c.iri).or_default().extend(&c.labels);
        }
        for p in self.ontology.properties.values() {
            labels.entry(&p.iri).or_default().extend(&p.labels);
        }
        for (iri, f) in &self.facts.entities {
            labels.entry(iri).or_default().extend(&f.names);
        }
        labels
            .into_iter()
            .map(|(iri, ls)| {
                let facts = self.facts.entities.get(iri);
                let mut norm: Vec<(String, Option<String>)> = ls
                    .iter()
                    .map(|l| (normalize(&l.text), l.language.clone()))
                    .filter(|(n, _)| !n.is_empty())
                    .collect();
                norm.sort();
                norm.dedup();
                let mut formulas: Vec<String> = facts
                    .map(|f| f.formulas.iter().map(|s| strip_whitespace(s)).filter(|s| !s.is_empty()).collect())
                    .unwrap_or_default();
                formulas.sort();
                formulas.dedup();
                Entity {
                    iri: iri.clone(),
                    kind: self.kind_of(iri),
                    labels: norm,
                    formulas,
                    external_ids: facts.map(|f| f.external_ids.clone()).unwrap_or_default(),
                }
            })
            .collect()
    }
}

fn strip_whitespace(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Inverted indexes over the target side.
struct TargetIndex<'e> {
    entities: &'e [Entity],
    by_id: HashMap<(&'e str, &'e str), Vec<usize>>,
    by_formula: HashMap<&'e str, Vec<usize>>,
    by_label: HashMap<&'e str, Vec<(usize, Option<&'e str>)>>,
}

impl<'e> TargetIndex<'e> {
    fn build(entities: &'e [Entity]) -> Self {
        let mut idx = TargetIndex {
            entities,
            by_id: HashMap::new(),
            by_formula: HashMap::new(),
            by_label: HashMap::new(),
        };
        for (i, e) in entities.iter().enumerate() {
            for (scheme, value) in &e.external_ids {
                idx.by_id.entry((scheme, value)).or_default().push(i);
            }
            for f in &e.formulas {
                idx.by_formula.entry(f).or_default().push(i);
            }
            for (label, lang) in &e.labels {
                idx.by_label.entry(label).or_default().push((i, lang.as_deref()));
            }
        }
        idx
    }
}

fn match_entity(e: &Entity, idx: &TargetIndex, cfg: &AlignConfig) -> Vec<MappingRule> {
    let mut best: BTreeMap<usize, (f64, &'static str)> = BTreeMap::new();
    let mut consider = |target: usize, confidence: f64, matcher: &'static str| {
        let t = &idx.entities[target];
        if t.kind != e.kind || t.iri == e.iri {
            return;
        }
        match best.get(&target) {
            Some((c, _)) if *c >= confidence => {}
            _ => {
                best.insert(target, (confidence, matcher));
            }
        }
    };
    for (scheme, value) in &e.external_ids {
        for &t in idx.by_id.get(&(scheme.as_str(), value.as_str())).into_iter().flatten() {
            consider(t, cfg.external_id, "M1");
        }
    }
    for f in &e.formulas {
        for &t in idx.by_formula.get(f.as_str()).into_iter().flatten() {
            consider(t, cfg.formula, "M2");
        }
    }
    for cross in [false, true] {
        for (label, lang) in &e.labels {
            for &(t, tlang) in idx.by_label.get(label.as_str()).into_iter().flatten() {
                let differ = matches!((lang.as_deref(), tlang), (Some(a), Some(b)) if a != b);
                match (cross, differ) {
                    (false, false) => consider(t, cfg.same_language_label, "M3"),
                    (true, true) => consider(t, cfg.cross_language_label, "M4"),
                    _ => {}
                }
            }
        }
    }
    best.into_iter()
        .map(|(t, (confidence, matcher))| MappingRule {
            kind: e.kind.rule_kind(),
            source: e.iri.clone(),
            target: idx.entities[t].iri.clone(),
            confidence,
            provenance: matcher.to_string(),
        })
        .collect()
}

/// Candidate mapping rules from side `a` (sources) to side `b` (targets).
///
/// Sorted by confidence descending, then source IRI, then target IRI.
pub fn suggest_alignments(a: AlignSide, b: AlignSide, cfg: &AlignConfig, exec: Execution) -> Vec<MappingRule> {
    debug_assert!(cfg.validate().is_ok());
    let sources = a.entities();
    let targets = b.entities();
    let idx = TargetIndex::build(&targets);
    let mut rules: Vec<MappingRule> = exec
        .map(&sources, |e| match_entity(e, &idx, cfg))
        .into_iter()
        .flatten()
        .collect();
    sort_rules(&mut rules);
    rules
}

pub(crate) fn sort_rules(rules: &mut [MappingRule]) {
    rules.sort_by(|x, y| {
        y.confidence
            .total_cmp(&x.confidence)
            .then_with(|| x.source.cmp(&y.source))
            .then_with(|| x.target.cmp(&y.target))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    fn onto(ttl: &str) -> Ontology {
        let text = format!(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             @prefix ex: <http://ex.org/> .\nex:onto a owl:Ontology .\n{ttl}"
        );
        Ontology::from_graph(parse_turtle(&text).unwrap(), "test").unwrap()
    }

    fn run(a: (&Ontology, &IdentifierFacts), b: (&Ontology, &IdentifierFacts)) -> Vec<MappingRule> {
        suggest_alignments(
            AlignSide { ontology: a.0, facts: a.1 },
            AlignSide { ontology: b.0, facts: b.1 },
            &AlignConfig::default(),
            Execution::Sequential,
        )
    }

    #[test]
    fn external_id_gives_same_individual() {
        let o = onto("");
        let mut fa = IdentifierFacts::new();
        fa.add_external_id(iri("a/water"), "cas", "7732-18-5").unwrap();
        let mut fb = IdentifierFacts::new();
        fb.add_external_id(iri("b/water"), "cas", "7732-18-5").unwrap();
        let rules = run((&o, &fa), (&o, &fb));
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].kind, RuleKind::SameIndividual);
        assert_eq!(rules[0].confidence, 1.0);
        assert_eq!(rules[0].provenance, "M1");
    }

    #[test]
    fn tagged_and_untagged_label_gives_equivalent_class() {
        let a = onto("ex:Compound a owl:Class ; rdfs:label \"compound\" .\n");
        let b = onto("ex:chebiCompound a owl:Class ; rdfs:label \"Compound\"@en .\n");
        let none = IdentifierFacts::new();
        let rules = run((&a, &none), (&b, &none));
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].kind, RuleKind::EquivalentClass);
        assert_eq!(rules[0].confidence, 0.8);
    }

    #[test]
    fn cross_language_and_kind_mismatch() {
        let a = onto("ex:A a owl:Class ; rdfs:label \"Methanol\"@de .\nex:p a owl:DatatypeProperty ; rdfs:label \"thing\" .\n");
        let b = onto("ex:B a owl:Class ; rdfs:label \"methanol\"@en .\nex:C a owl:Class ; rdfs:label \"thing\" .\n");
        let none = IdentifierFacts::new();
        let rules = run((&a, &none), (&b, &none));
        assert_eq!(rules.len(), 1);
        assert_eq!((rules[0].provenance.as_str(), rules[0].confidence), ("M4", 0.6));
    }

    #[test]
    fn best_evidence_wins() {
        let o = onto("");
        let mut fa = IdentifierFacts::new();
        fa.add_name(iri("a/w"), "Wasser", None);
        fa.add_formula(iri("a/w"), " H2 O");
        let mut fb = IdentifierFacts::new();
        fb.add_name(iri("b/w"), "Wasser", Some("de".into()));
        fb.add_formula(iri("b/w"), "H2O");
        let rules = run((&o, &fa), (&o, &fb));
        assert_eq!(rules.len(), 1);
        assert_eq!((rules[0].provenance.as_str(), rules[0].confidence), ("M2", 0.9));
    }
}
