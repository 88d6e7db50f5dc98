//! Materializing mapping rules into a graph.
//!
//! Accepted rules contribute an axiom triple and a provenance triple, then
//! three entailments run to a fixpoint:
//!
//! - E1: `x rdf:type A` gives `x rdf:type B` for `A ⊑ B` or `A ≡ B` (both ways).
//! - E2: a triple mentioning `a` as subject or object is copied to `b` for
//!   `sameAs(a, b)`, both ways. `owl:sameAs` and provenance triples are not copied.
//! - E3: `s p o` gives `s q o` for equivalent properties `p`, `q`, both ways.

use std::collections::{HashMap, VecDeque};

use super::ontology::Ontology;
use super::rules::{MappingRule, RuleKind};
use super::AlignError;
use crate::rdf::vocab::{owl, rdf, semlift};
use crate::rdf::{Graph, Iri, Literal, Term, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The axiom or provenance triple of a rule.
    Axiom,
    E1,
    E2,
    E3,
}

/// Why a triple was added.
#[derive(Clone, Debug, PartialEq)]
pub struct Justification {
    pub triple: Triple,
    pub derivation: Derivation,
    /// The triple the entailment fired on; `None` for axioms.
    pub premise: Option<Triple>,
    /// Index into [`ApplyOutcome::applied`].
    pub rule: usize,
}

#[derive(Clone, Debug)]
pub struct ApplyOutcome {
    pub graph: Graph,
    /// Rules at or above the threshold that referenced known IRIs.
    pub applied: Vec<MappingRule>,
    pub warnings: Vec<String>,
    /// One entry per added triple, in insertion order.
    pub justifications: Vec<Justification>,
}

#[derive(Default)]
struct RuleIndex {
    types: HashMap<Term, Vec<(Term, usize)>>,
    same: HashMap<Term, Vec<(Term, usize)>>,
    props: HashMap<Iri, Vec<(Iri, usize)>>,
}

impl RuleIndex {
    fn new(rules: &[MappingRule]) -> Self {
        let mut idx = RuleIndex::default();
        for (i, r) in rules.iter().enumerate() {
            let (s, t) = (Term::Iri(r.source.clone()), Term::Iri(r.target.clone()));
            match r.kind {
                RuleKind::SubClassOf => idx.types.entry(s).or_default().push((t, i)),
                RuleKind::EquivalentClass => {
                    idx.types.entry(s.clone()).or_default().push((t.clone(), i));
                    idx.types.entry(t).or_default().push((s, i));
                }
                RuleKind::SameIndividual => {
                    idx.same.entry(s.clone()).or_default().push((t.clone(), i));
                    idx.same.entry(t).or_default().push((s, i));
                }
                RuleKind::EquivalentProperty => {
                    idx.props.entry(r.source.clone()).or_default().push((r.target.clone(), i));
                    idx.props.entry(r.target.clone()).or_default().push((r.source.clone(), i));
                }
            }
        }
        idx
    }

    /// Triples entailed by `t` together with a single rule.
    fn consequences(&self, t: &Triple) -> Vec<(Triple, Derivation, usize)> {
        let mut out = Vec::new();
        let (s, p, o) = (t.subject(), t.predicate(), t.object());
        if p.as_str() == rdf::TYPE {
            for (target, i) in self.types.get(o).into_iter().flatten() {
                out.push((triple(s.clone(), p.clone(), target.clone()), Derivation::E1, *i));
            }
        }
        if p.as_str() != owl::SAME_AS && p.as_str() != semlift::MAPPED_BY {
            for (alias, i) in self.same.get(s).into_iter().flatten() {
                out.push((triple(alias.clone(), p.clone(), o.clone()), Derivation::E2, *i));
            }
            for (alias, i) in self.same.get(o).into_iter().flatten() {
                out.push((triple(s.clone(), p.clone(), alias.clone()), Derivation::E2, *i));
            }
        }
        for (q, i) in self.props.get(p).into_iter().flatten() {
            out.push((triple(s.clone(), q.clone(), o.clone()), Derivation::E3, *i));
        }
        out
    }
}

fn triple(s: Term, p: Iri, o: Term) -> Triple {
    Triple::new(s, p, o).expect("subject taken from an existing subject or an IRI")
}

/// Applies rules with `confidence >= threshold` to `graph` and computes the closure.
///
/// A rule whose source or target occurs neither in the graph nor in any of
/// `ontologies` is skipped with a warning.
pub fn apply_mappings(
    graph: &Graph,
    rules: &[MappingRule],
    threshold: f64,
    ontologies: &[&Ontology],
) -> Result<ApplyOutcome, AlignError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(AlignError::Config(format!("threshold {threshold} is outside [0, 1]")));
    }
    let known = |iri: &Iri| graph.mentions(iri) || ontologies.iter().any(|o| o.knows(iri));
    let mut applied = Vec::new();
    let mut warnings = Vec::new();
    for r in rules.iter().filter(|r| r.confidence >= threshold) {
        r.validate()?;
        match [&r.source, &r.target].into_iter().find(|iri| !known(iri)) {
            Some(missing) => {
                let msg = format!(
                    "skipping {} {} -> {}: unknown IRI {}",
                    r.kind,
                    r.source.as_str(),
                    r.target.as_str(),
                    missing.as_str()
                );
                log::warn!("{msg}");
                warnings.push(msg);
            }
            None => applied.push(r.clone()),
        }
    }

    let mut out = graph.clone();
    let mut justifications = Vec::new();
    for (i, r) in applied.iter().enumerate() {
        for t in [
            triple(r.source.clone().into(), r.kind.axiom_predicate(), r.target.clone().into()),
            triple(
                r.source.clone().into(),
                semlift::mapped_by(),
                Literal::string(&r.provenance).into(),
            ),
        ] {
            if out.insert(t.clone()) {
                justifications.push(Justification {
                    triple: t,
                    derivation: Derivation::Axiom,
                    premise: None,
                    rule: i,
                });
            }
        }
    }

    let index = RuleIndex::new(&applied);
    let mut queue: VecDeque<Triple> = out.iter().cloned().collect();
    while let Some(t) = queue.pop_front() {
        for (derived, derivation, rule) in index.consequences(&t) {
            if out.insert(derived.clone()) {
                justifications.push(Justification {
                    triple: derived.clone(),
                    derivation,
                    premise: Some(t.clone()),
                    rule,
                });
                queue.push_back(derived);
            }
        }
    }
    Ok(ApplyOutcome {
        graph: out,
        applied,
        warnings,
        justifications,
    })
}
