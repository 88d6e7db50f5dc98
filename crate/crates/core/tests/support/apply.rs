//! The naive repeated-pass oracle for mapping application.

use semlift_core::align::{MappingRule, RuleKind};
use semlift_core::rdf::{Graph, Iri, Literal, Term, Triple};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
const MAPPED_BY: &str = "http://purl.org/semlift/vocab#mappedBy";

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

/// Applies every rule to every triple until nothing changes.
pub fn naive_apply(graph: &Graph, rules: &[MappingRule], threshold: f64, known: &dyn Fn(&Iri) -> bool) -> Graph {
    let mut g = graph.clone();
    let accepted: Vec<&MappingRule> = rules
        .iter()
        .filter(|r| r.confidence >= threshold && known(&r.source) && known(&r.target))
        .collect();
    let axiom = |k: RuleKind| match k {
        RuleKind::EquivalentClass => "http://www.w3.org/2002/07/owl#equivalentClass",
        RuleKind::SubClassOf => "http://www.w3.org/2000/01/rdf-schema#subClassOf",
        RuleKind::EquivalentProperty => "http://www.w3.org/2002/07/owl#equivalentProperty",
        RuleKind::SameIndividual => SAME_AS,
    };
    for r in &accepted {
        g.insert(Triple::new(r.source.clone(), iri(axiom(r.kind)), r.target.clone()).unwrap());
        g.insert(Triple::new(r.source.clone(), iri(MAPPED_BY), Literal::string(&r.provenance)).unwrap());
    }
    loop {
        let new: Vec<Triple> = g.iter().flat_map(|t| accepted.iter().flat_map(move |r| one_hop(t, r))).collect();
        if g.extend(new) == 0 {
            return g;
        }
    }
}

/// Direct consequences of one triple under one rule.
pub fn one_hop(t: &Triple, r: &MappingRule) -> Vec<Triple> {
    let (s, p, o) = (t.subject(), t.predicate(), t.object());
    let (a, b) = (Term::Iri(r.source.clone()), Term::Iri(r.target.clone()));
    let mut new = Vec::new();
    match r.kind {
        RuleKind::SubClassOf | RuleKind::EquivalentClass if p.as_str() == RDF_TYPE => {
            if *o == a {
                new.push(Triple::new(s.clone(), p.clone(), b.clone()).unwrap());
            }
            if *o == b && r.kind == RuleKind::EquivalentClass {
                new.push(Triple::new(s.clone(), p.clone(), a.clone()).unwrap());
            }
        }
        RuleKind::SameIndividual if p.as_str() != SAME_AS && p.as_str() != MAPPED_BY => {
            for (x, y) in [(&a, &b), (&b, &a)] {
                if s == x {
                    new.push(Triple::new(y.clone(), p.clone(), o.clone()).unwrap());
                }
                if o == x {
                    new.push(Triple::new(s.clone(), p.clone(), y.clone()).unwrap());
                }
            }
        }
        RuleKind::EquivalentProperty => {
            if *p == r.source {
                new.push(Triple::new(s.clone(), r.target.clone(), o.clone()).unwrap());
            }
            if *p == r.target {
                new.push(Triple::new(s.clone(), r.source.clone(), o.clone()).unwrap());
            }
        }
        _ => {}
    }
    new
}

