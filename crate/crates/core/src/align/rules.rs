//! Mapping rules and their tab-separated file format.
//!
//! One rule per line: `kind<TAB>source<TAB>target<TAB>confidence<TAB>provenance`.
//! Blank lines and lines starting with `#` are ignored when reading.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::AlignError;
use crate::rdf::vocab::{owl, rdfs};
use crate::rdf::{Graph, Iri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleKind {
    EquivalentClass,
    SubClassOf,
    EquivalentProperty,
    SameIndividual,
}

impl RuleKind {
    pub const ALL: [RuleKind; 4] = [
        RuleKind::EquivalentClass,
        RuleKind::SubClassOf,
        RuleKind::EquivalentProperty,
        RuleKind::SameIndividual,
    ];

    /// The predicate of the axiom triple this rule emits.
    pub fn axiom_predicate(self) -> Iri {
        match self {
            RuleKind::EquivalentClass => owl::equivalent_class(),
            RuleKind::SubClassOf => rdfs::sub_class_of(),
            RuleKind::EquivalentProperty => owl::equivalent_property(),
            RuleKind::SameIndividual => owl::same_as(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            RuleKind::EquivalentClass => "EquivalentClass",
            RuleKind::SubClassOf => "SubClassOf",
            RuleKind::EquivalentProperty => "EquivalentProperty",
            RuleKind::SameIndividual => "SameIndividual",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown rule kind `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MappingRule {
    pub kind: RuleKind,
    pub source: Iri,
    pub target: Iri,
    pub confidence: f64,
    /// Matcher id (`M1` to `M4`) or `manual`.
    pub provenance: String,
}

impl MappingRule {
    pub fn new(
        kind: RuleKind,
        source: Iri,
        target: Iri,
        confidence: f64,
        provenance: impl Into<String>,
    ) -> Result<Self, AlignError> {
        let rule = MappingRule {
            kind,
            source,
            target,
            confidence,
            provenance: provenance.into(),
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn validate(&self) -> Result<(), AlignError> {
        if self.source == self.target {
            return Err(AlignError::InvalidRule(format!("source and target are both {}", self.source)));
        }
        if !(0.0..=1.0).contains(&self.confidence) {
            return Err(AlignError::InvalidRule(format!("confidence {} is outside [0, 1]", self.confidence)));
        }
        if self.provenance.is_empty() || self.provenance.contains(['\t', '\n']) {
            return Err(AlignError::InvalidRule(format!("bad provenance `{}`", self.provenance)));
        }
        Ok(())
    }
}

pub fn write_rules(rules: &[MappingRule]) -> String {
    let mut out = String::new();
    for r in rules {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.kind,
            r.source.as_str(),
            r.target.as_str(),
            r.confidence,
            r.provenance
        ));
    }
    out
}

pub fn parse_rules(text: &str) -> Result<Vec<MappingRule>, AlignError> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| AlignError::RuleFormat { line: line_no, message };
        let fields: Vec<&str> = line.split('\t').collect();
        let [kind, source, target, confidence, provenance] = fields.as_slice() else {
            return Err(err(format!("expected 5 tab-separated fields, found {}", fields.len())));
        };
        let kind = kind.parse().map_err(err)?;
        let source = Iri::new(*source).map_err(|e| err(e.to_string()))?;
        let target = Iri::new(*target).map_err(|e| err(e.to_string()))?;
        let confidence: f64 = confidence
            .parse()
            .map_err(|_| err(format!("bad confidence `{confidence}`")))?;
        let rule = MappingRule::new(kind, source, target, confidence, *provenance).map_err(|e| err(e.to_string()))?;
        rules.push(rule);
    }
    Ok(rules)
}

/// Reads hand-written axioms from a graph as `manual` rules with confidence 1.0.
///
/// Only IRI-to-IRI axiom triples are used; reflexive axioms are skipped.
pub fn rules_from_graph(graph: &Graph) -> Vec<MappingRule> {
    let mut rules = Vec::new();
    for kind in RuleKind::ALL {
        let mut found: Vec<_> = graph
            .with_predicate(&kind.axiom_predicate())
            .filter_map(|t| Some((t.subject().as_iri()?.clone(), t.object().as_iri()?.clone())))
            .filter(|(s, o)| s != o)
            .collect();
        found.sort();
        for (source, target) in found {
            rules.push(MappingRule {
                kind,
                source,
                target,
                confidence: 1.0,
                provenance: "manual".into(),
            });
        }
    }
    super::matcher::sort_rules(&mut rules);
    rules
}
