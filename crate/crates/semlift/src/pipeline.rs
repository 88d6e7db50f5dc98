//! Pipeline stages over flat-file artifacts.
//!
//! Every stage is a pure function of the config and its inputs; the CLI decides
//! where inputs come from and where outputs go.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use semlift_core::align::{
    apply_mappings, load_ontology, parse_rules, suggest_alignments, AlignSide, ApplyOutcome, IdentifierFacts,
    MappingRule, Ontology,
};
use semlift_core::enrich::{enrich, EnrichmentReport};
use semlift_core::rdf::vocab::rdf;
use semlift_core::rdf::{parse_ntriples, parse_turtle, write_ntriples, Graph, Iri};
use semlift_core::xml::{convert_all, lift_schema, parse_document, parse_schema, DerivedOntology};

use crate::config::PipelineConfig;
use crate::error::{io_err, CliError};

pub const ONTOLOGY: &str = "ontology.ttl";
pub const REVIEW: &str = "review.txt";
pub const DATA: &str = "data.nt";
pub const ALIGNMENTS: &str = "alignments.tsv";
pub const MAPPED: &str = "mapped.nt";
pub const ENRICHED: &str = "enriched.nt";
pub const ENRICHMENT_REPORT: &str = "enrichment-report.json";
pub const SNAPSHOT: &str = "snapshot.json";

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    std::fs::write(path, text).map_err(io_err(path))
}

/// Reads N-Triples, or Turtle when the extension is `.ttl`.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    let parsed = if path.extension().is_some_and(|e| e == "ttl") {
        parse_turtle(&text)
    } else {
        parse_ntriples(&text)
    };
    parsed.map_err(|source| CliError::Rdf {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), CliError> {
    write_text(path, &write_ntriples(g))
}

pub fn lift(cfg: &PipelineConfig) -> Result<DerivedOntology, CliError> {
    let schema = parse_schema(&read_text(&cfg.lift.schema)?)?;
    Ok(lift_schema(&schema, &cfg.lift_config("schema")?)?)
}

/// Document ids are file stems and must be unique.
pub fn convert(cfg: &PipelineConfig, onto: &DerivedOntology, documents: &[PathBuf]) -> Result<Graph, CliError> {
    if documents.is_empty() {
        return Err(CliError::Input("no input documents".into()));
    }
    let mut ids = BTreeSet::new();
    let mut docs = Vec::with_capacity(documents.len());
    for path in documents {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| CliError::Input(format!("cannot derive a document id from {}", path.display())))?
            .to_string();
        if !ids.insert(id.clone()) {
            return Err(CliError::Input(format!("duplicate document id `{id}`")));
        }
        let doc = parse_document(&read_text(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        docs.push((id, doc));
    }
    Ok(convert_all(&docs, onto, &cfg.lift_config("schema")?, cfg.execution())?)
}

/// The derived ontology as an alignable [`Ontology`].
pub fn derived_ontology(onto: &DerivedOntology) -> Result<Ontology, CliError> {
    Ok(Ontology::from_graph(onto.to_graph(), "derived ontology")?)
}

/// The configured expert ontologies merged, or `None` when there are none.
pub fn expert_ontology(cfg: &PipelineConfig) -> Result<Option<Ontology>, CliError> {
    if cfg.align.ontologies.is_empty() {
        return Ok(None);
    }
    Ok(Some(load_ontology(&cfg.align.ontologies, &cfg.align.import_dirs)?))
}

/// Derived and expert ontologies in one, as used for search.
pub fn combined_ontology(derived: &Ontology, expert: Option<&Ontology>) -> Ontology {
    let mut all = derived.clone();
    if let Some(e) = expert {
        all.merge(e);
    }
    all
}

/// Suggested rules from the derived side to the expert side, followed by any hand-written rules.
pub fn align(
    cfg: &PipelineConfig,
    data: &Graph,
    derived: &Ontology,
    expert: Option<&Ontology>,
) -> Result<Vec<MappingRule>, CliError> {
    let mut rules = Vec::new();
    if let Some(expert) = expert {
        let derived_facts = IdentifierFacts::extract(data, &cfg.align.derived)?;
        let expert_facts = IdentifierFacts::extract(&expert.graph, &cfg.align.expert)?;
        let a = AlignSide {
            ontology: derived,
            facts: &derived_facts,
        };
        let b = AlignSide {
            ontology: expert,
            facts: &expert_facts,
        };
        rules = suggest_alignments(a, b, &cfg.align.confidence, cfg.execution());
    }
    for path in &cfg.align.rules {
        rules.extend(parse_rules(&read_text(path)?)?);
    }
    Ok(rules)
}

pub fn apply(
    cfg: &PipelineConfig,
    data: &Graph,
    rules: &[MappingRule],
    derived: &Ontology,
    expert: Option<&Ontology>,
) -> Result<ApplyOutcome, CliError> {
    let mut known = vec![derived];
    known.extend(expert);
    let outcome = apply_mappings(data, rules, cfg.align.threshold, &known)?;
    for w in &outcome.warnings {
        log::warn!("{w}");
    }
    Ok(outcome)
}

/// Entities typed with one of the configured target classes.
pub fn enrichment_targets(cfg: &PipelineConfig, g: &Graph) -> BTreeSet<Iri> {
    let type_p = rdf::type_();
    g.with_predicate(&type_p)
        .filter(|t| t.object().as_iri().is_some_and(|c| cfg.enrich.target_classes.contains(c)))
        .filter_map(|t| t.subject().as_iri().cloned())
        .collect()
}

pub fn enrich_graph(cfg: &PipelineConfig, g: &Graph) -> Result<(Graph, EnrichmentReport), CliError> {
    let targets = enrichment_targets(cfg, g);
    Ok(enrich(g, &targets, &cfg.enrich.sources, cfg.execution())?)
}

pub fn report_json(report: &EnrichmentReport) -> String {
    let mut text = serde_json::to_string_pretty(&serde_json::to_value(report).expect("report serializes"))
        .expect("value serializes");
    text.push('\n');
    text
}
