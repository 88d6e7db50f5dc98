//! Sequential against rayon execution for the data-parallel stages.

use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semlift_core::align::{suggest_alignments, AlignConfig, AlignSide, IdentifierFacts, Ontology};
use semlift_core::rdf::{parse_turtle, Graph, Iri};
use semlift_core::search::{FacetDefinition, FacetEngine, FacetKind, FilterSelection};
use semlift_core::xml::{convert_all, lift_schema, parse_document, parse_schema, LiftConfig, XmlDocument};
use semlift_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn fixture(rel: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn conversion(c: &mut Criterion) {
    let schema = parse_schema(&fixture("thermo/thermo.xsd")).unwrap();
    let cfg = LiftConfig::new("http://bench.org/onto#", "http://bench.org/id/", "schema").unwrap();
    let onto = lift_schema(&schema, &cfg).unwrap();
    let docs: Vec<XmlDocument> = ["d1", "d2", "d3"]
        .iter()
        .map(|d| parse_document(&fixture(&format!("thermo/docs/{d}.xml"))).unwrap())
        .collect();
    let batch: Vec<(String, XmlDocument)> = (0..600).map(|i| (format!("doc{i}"), docs[i % 3].clone())).collect();
    let mut group = c.benchmark_group("convert_600_documents");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| convert_all(&batch, &onto, &cfg, exec).unwrap()));
    }
    group.finish();
}

/// One side of a synthetic alignment problem: `n` individuals with names,
/// formulas and identifiers drawn from overlapping pools.
fn side(prefix: &str, n: usize, shift: usize) -> (Ontology, IdentifierFacts) {
    let onto = Ontology::from_graph(
        parse_turtle(&format!("<http://{prefix}.org/o> a <http://www.w3.org/2002/07/owl#Ontology> .")).unwrap(),
        prefix,
    )
    .unwrap();
    let mut facts = IdentifierFacts::new();
    for i in 0..n {
        let e = iri(&format!("http://{prefix}.org/e{i}"));
        let k = i + shift;
        facts.add_name(e.clone(), format!("compound {}", k % 700), Some(["en", "de"][k % 2].to_string()));
        facts.add_formula(e.clone(), format!("C{}H{}O", k % 37, k % 53));
        if k.is_multiple_of(3) {
            facts.add_external_id(e, "cas", format!("{}-00-{}", k, k % 10)).unwrap();
        }
    }
    (onto, facts)
}

fn alignment(c: &mut Criterion) {
    let mut group = c.benchmark_group("suggest_alignments");
    for n in [500, 2000] {
        let (oa, fa) = side("a", n, 0);
        let (ob, fb) = side("b", n, 7);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| {
                    suggest_alignments(
                        AlignSide { ontology: &oa, facts: &fa },
                        AlignSide { ontology: &ob, facts: &fb },
                        &AlignConfig::default(),
                        exec,
                    )
                })
            });
        }
    }
    group.finish();
}

/// A class tree of depth 3 and fan-out 4 with `n` typed entities carrying two properties.
fn facet_graph(n: usize) -> Graph {
    let mut ttl = String::from(
        "@prefix c: <http://bench.org/class#> .\n@prefix p: <http://bench.org/prop#> .\n\
         @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n",
    );
    let mut leaves = Vec::new();
    for a in 0..4 {
        ttl.push_str(&format!("c:A{a} rdfs:subClassOf c:Root .\n"));
        for b in 0..4 {
            ttl.push_str(&format!("c:A{a}B{b} rdfs:subClassOf c:A{a} .\n"));
            for l in 0..4 {
                ttl.push_str(&format!("c:A{a}B{b}L{l} rdfs:subClassOf c:A{a}B{b} .\n"));
                leaves.push(format!("c:A{a}B{b}L{l}"));
            }
        }
    }
    for i in 0..n {
        ttl.push_str(&format!(
            "<http://bench.org/id/{i}> a {} ; p:phase \"{}\" ; p:grade \"g{}\" .\n",
            leaves[i % leaves.len()],
            ["solid", "liquid", "gas"][i % 3],
            i % 11
        ));
    }
    parse_turtle(&ttl).unwrap()
}

fn facets(c: &mut Criterion) {
    let defs = vec![
        FacetDefinition {
            id: "class".into(),
            kind: FacetKind::ClassHierarchy,
            anchor: iri("http://bench.org/class#Root"),
            label: "Class".into(),
        },
        FacetDefinition {
            id: "phase".into(),
            kind: FacetKind::PropertyValue,
            anchor: iri("http://bench.org/prop#phase"),
            label: "Phase".into(),
        },
        FacetDefinition {
            id: "grade".into(),
            kind: FacetKind::PropertyValue,
            anchor: iri("http://bench.org/prop#grade"),
            label: "Grade".into(),
        },
    ];
    let g = facet_graph(5000);
    let selections = vec![
        FilterSelection::new("class", ["http://bench.org/class#A1", "http://bench.org/class#A2B3"]),
        FilterSelection::new("phase", ["liquid", "gas"]),
    ];
    let mut engines = BTreeMap::new();
    for (name, exec) in MODES {
        engines.insert(name, FacetEngine::build(&g, None, defs.clone(), exec).unwrap());
    }
    let mut group = c.benchmark_group("facets_5000_entities");
    for (name, _) in MODES {
        let engine = &engines[name];
        group.bench_function(BenchmarkId::new("evaluate", name), |b| b.iter(|| engine.evaluate(&selections).unwrap()));
        let state = engine.state_for(selections.clone()).unwrap();
        group.bench_function(BenchmarkId::new("suggest", name), |b| b.iter(|| engine.suggest(&state)));
    }
    group.finish();
}

criterion_group!(benches, conversion, alignment, facets);
criterion_main!(benches);
