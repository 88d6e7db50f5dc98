//! The read-only index set a service instance answers from.

use std::time::{SystemTime, UNIX_EPOCH};

use semlift_core::align::Ontology;
use semlift_core::rdf::vocab::rdf;
use semlift_core::rdf::{write_ntriples, Graph, Iri, Term};
use semlift_core::search::{build_index, AutocompleteIndex, FacetEngine};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::pipeline;

/// What `snapshot.json` records about a built snapshot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotInfo {
    /// SHA-256 of the canonical N-Triples of the graph.
    pub hash: String,
    pub built_at_unix: u64,
    pub triples: usize,
    pub entities: usize,
    pub lexical_entries: usize,
}

pub struct Snapshot {
    pub graph: Graph,
    pub index: AutocompleteIndex,
    pub engine: FacetEngine,
    pub label_predicates: Vec<Iri>,
    pub info: SnapshotInfo,
}

pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_ntriples(g).as_bytes()))
}

impl Snapshot {
    pub fn build(cfg: &PipelineConfig, graph: Graph, ontology: Option<&Ontology>) -> Result<Snapshot, CliError> {
        let index = build_index(&graph, &cfg.search.label_predicates);
        let engine = FacetEngine::build(&graph, ontology, cfg.search.facets.clone(), cfg.execution())?;
        let info = SnapshotInfo {
            hash: graph_hash(&graph),
            built_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            triples: graph.len(),
            entities: engine.universe().len(),
            lexical_entries: index.len(),
        };
        Ok(Snapshot {
            graph,
            index,
            engine,
            label_predicates: cfg.search.label_predicates.clone(),
            info,
        })
    }

    /// Rebuilds from the enriched artifact, re-deriving the ontologies from the config.
    pub fn load(cfg: &PipelineConfig) -> Result<Snapshot, CliError> {
        let graph = pipeline::read_graph(&cfg.artifact(pipeline::ENRICHED))?;
        let derived = pipeline::derived_ontology(&pipeline::lift(cfg)?)?;
        let expert = pipeline::expert_ontology(cfg)?;
        let all = pipeline::combined_ontology(&derived, expert.as_ref());
        let snap = Snapshot::build(cfg, graph, Some(&all))?;
        let recorded = cfg.artifact(pipeline::SNAPSHOT);
        match std::fs::read_to_string(&recorded) {
            Ok(text) => {
                let info: SnapshotInfo = serde_json::from_str(&text)
                    .map_err(|e| CliError::Snapshot(format!("{}: {e}", recorded.display())))?;
                if info.hash != snap.info.hash {
                    return Err(CliError::Snapshot(format!(
                        "{} records hash {} but {} hashes to {}",
                        recorded.display(),
                        info.hash,
                        pipeline::ENRICHED,
                        snap.info.hash
                    )));
                }
            }
            Err(_) => log::warn!("{} not found; serving an unrecorded snapshot", recorded.display()),
        }
        Ok(snap)
    }

    pub fn info_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.info).expect("info serializes");
        text.push('\n');
        text
    }

    /// Preferred display label: English, then untagged, then any language, then the local name.
    pub fn label(&self, iri: &Iri) -> String {
        let subject = Term::Iri(iri.clone());
        let mut best: Option<(u8, &str)> = None;
        for p in &self.label_predicates {
            for o in self.graph.objects(&subject, p) {
                let Some(lit) = o.as_literal() else { continue };
                let rank = match lit.language() {
                    Some(l) if l.eq_ignore_ascii_case("en") || l.to_ascii_lowercase().starts_with("en-") => 0,
                    None => 1,
                    Some(_) => 2,
                };
                let candidate = (rank, lit.lexical());
                if best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
        best.map_or_else(|| iri.local_name().to_string(), |(_, s)| s.to_string())
    }

    pub fn types(&self, iri: &Iri) -> Vec<String> {
        let subject = Term::Iri(iri.clone());
        let mut out: Vec<String> = self
            .graph
            .objects(&subject, &rdf::type_())
            .filter_map(|o| o.as_iri().map(|c| c.as_str().to_string()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}
