//! Names, formulas and external identifiers used as alignment evidence.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::ontology::Label;
use super::AlignError;
use crate::rdf::{Graph, Iri, Term};

/// Which predicates carry each kind of evidence in a graph.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct FactConfig {
    #[serde(default)]
    pub name_predicates: Vec<Iri>,
    #[serde(default)]
    pub formula_predicates: Vec<Iri>,
    /// Identifier scheme (such as `cas`) to the predicate holding it.
    #[serde(default)]
    pub identifier_predicates: BTreeMap<String, Vec<Iri>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EntityFacts {
    pub names: Vec<Label>,
    pub formulas: Vec<String>,
    /// `(scheme, value)` pairs, values kept verbatim.
    pub external_ids: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentifierFacts {
    pub entities: BTreeMap<Iri, EntityFacts>,
}

impl IdentifierFacts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collects facts for every IRI subject with a literal under a configured predicate.
    pub fn extract(graph: &Graph, cfg: &FactConfig) -> Result<Self, AlignError> {
        let mut facts = IdentifierFacts::new();
        let literals = |p: &Iri| -> Vec<(Iri, String, Option<String>)> {
            let mut out: Vec<_> = graph
                .with_predicate(p)
                .filter_map(|t| {
                    let Term::Iri(s) = t.subject() else { return None };
                    let lit = t.object().as_literal()?;
                    Some((s.clone(), lit.lexical().to_string(), lit.language().map(str::to_string)))
                })
                .collect();
            out.sort();
            out
        };
        for p in &cfg.name_predicates {
            for (s, text, language) in literals(p) {
                facts.add_name(s, text, language);
            }
        }
        for p in &cfg.formula_predicates {
            for (s, text, _) in literals(p) {
                facts.add_formula(s, text);
            }
        }
        for (scheme, preds) in &cfg.identifier_predicates {
            for p in preds {
                for (s, value, _) in literals(p) {
                    facts.add_external_id(s, scheme, value)?;
                }
            }
        }
        Ok(facts)
    }

    pub fn add_name(&mut self, entity: Iri, text: impl Into<String>, language: Option<String>) {
        let label = Label {
            text: text.into(),
            language,
        };
        let names = &mut self.entities.entry(entity).or_default().names;
        if !names.contains(&label) {
            names.push(label);
        }
    }

    pub fn add_formula(&mut self, entity: Iri, formula: impl Into<String>) {
        let formula = formula.into();
        let formulas = &mut self.entities.entry(entity).or_default().formulas;
        if !formulas.contains(&formula) {
            formulas.push(formula);
        }
    }

    pub fn add_external_id(&mut self, entity: Iri, scheme: &str, value: impl Into<String>) -> Result<(), AlignError> {
        if scheme.is_empty() {
            return Err(AlignError::Config("identifier scheme must be nonempty".into()));
        }
        let pair = (scheme.to_string(), value.into());
        let ids = &mut self.entities.entry(entity).or_default().external_ids;
        if !ids.contains(&pair) {
            ids.push(pair);
        }
        Ok(())
    }
}
