//! Command-line front end. Each subcommand reads and writes artifacts in the output directory.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use semlift_core::align::{parse_rules, write_rules};
use semlift_core::search::FilterSelection;
use semlift_core::Execution;
use serde_json::json;

use crate::api::{router, AppState};
use crate::config::PipelineConfig;
use crate::error::CliError;
use crate::pipeline::{self, read_graph, read_text, write_graph, write_text};
use crate::snapshot::{Snapshot, SnapshotInfo};

#[derive(Debug, Parser)]
#[command(name = "semlift", version, about = "Lift XML into linked data, align, enrich and search it")]
pub struct Cli {
    /// Pipeline configuration file.
    #[arg(long, env = "SEMLIFT_CONFIG", default_value = "semlift.toml", global = true)]
    pub config: PathBuf,
    /// Output directory, overriding the configured one.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Log at debug level.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive the ontology from the XML schema.
    LiftSchema,
    /// Convert XML documents into instance data.
    Convert {
        /// Documents to convert instead of the configured ones.
        documents: Vec<PathBuf>,
    },
    /// Suggest alignments between the derived and expert ontologies.
    Align {
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Apply accepted alignments to the instance data.
    Apply {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        rules: Option<PathBuf>,
    },
    /// Merge descriptions from external sources.
    Enrich {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Build the search snapshot and record its hash.
    Index,
    /// Serve the HTTP API.
    Serve {
        #[arg(long)]
        bind: Option<String>,
        #[arg(long)]
        port: Option<u16>,
    },
    /// Query the snapshot from the command line.
    Query {
        /// Autocomplete this text.
        #[arg(long, conflicts_with = "select")]
        complete: Option<String>,
        /// A facet selection, `facet=value1,value2`; repeat to AND several.
        #[arg(long)]
        select: Vec<String>,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Run every stage from lifting to indexing.
    Pipeline,
}

pub fn load_config(cli: &Cli) -> Result<PipelineConfig, CliError> {
    let mut cfg = PipelineConfig::load(&cli.config)?;
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if cli.sequential {
        cfg.output.execution = Execution::Sequential;
    }
    Ok(cfg)
}

pub fn parse_selection(arg: &str) -> Result<FilterSelection, CliError> {
    let (facet, values) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Input(format!("selection `{arg}` is not of the form facet=value,...")))?;
    let values: Vec<&str> = values.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    Ok(FilterSelection::new(facet.trim(), values))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::LiftSchema => lift_schema(&cfg),
        Command::Convert { documents } => {
            let documents = if documents.is_empty() { cfg.lift.documents.clone() } else { documents };
            convert(&cfg, &documents)
        }
        Command::Align { data } => align(&cfg, data),
        Command::Apply { data, rules } => apply(&cfg, data, rules),
        Command::Enrich { input } => enrich(&cfg, input),
        Command::Index => index(&cfg).map(|_| ()),
        Command::Serve { bind, port } => serve(&cfg, bind, port),
        Command::Query { complete, select, limit } => query(&cfg, complete, &select, limit),
        Command::Pipeline => run_pipeline(&cfg).map(|info| println!("{}", json!(info))),
    }
}

fn lift_schema(cfg: &PipelineConfig) -> Result<(), CliError> {
    let onto = pipeline::lift(cfg)?;
    write_text(&cfg.artifact(pipeline::ONTOLOGY), &onto.to_turtle())?;
    write_text(&cfg.artifact(pipeline::REVIEW), &onto.review_report())
}

fn convert(cfg: &PipelineConfig, documents: &[PathBuf]) -> Result<(), CliError> {
    let onto = pipeline::lift(cfg)?;
    let data = pipeline::convert(cfg, &onto, documents)?;
    log::info!("converted {} documents into {} triples", documents.len(), data.len());
    write_graph(&cfg.artifact(pipeline::DATA), &data)
}

fn align(cfg: &PipelineConfig, data: Option<PathBuf>) -> Result<(), CliError> {
    let data = read_graph(&data.unwrap_or_else(|| cfg.artifact(pipeline::DATA)))?;
    let derived = pipeline::derived_ontology(&pipeline::lift(cfg)?)?;
    let expert = pipeline::expert_ontology(cfg)?;
    let rules = pipeline::align(cfg, &data, &derived, expert.as_ref())?;
    log::info!("{} alignment rules", rules.len());
    write_text(&cfg.artifact(pipeline::ALIGNMENTS), &write_rules(&rules))
}

fn apply(cfg: &PipelineConfig, data: Option<PathBuf>, rules: Option<PathBuf>) -> Result<(), CliError> {
    let data = read_graph(&data.unwrap_or_else(|| cfg.artifact(pipeline::DATA)))?;
    let rules = parse_rules(&read_text(&rules.unwrap_or_else(|| cfg.artifact(pipeline::ALIGNMENTS)))?)?;
    let derived = pipeline::derived_ontology(&pipeline::lift(cfg)?)?;
    let expert = pipeline::expert_ontology(cfg)?;
    let outcome = pipeline::apply(cfg, &data, &rules, &derived, expert.as_ref())?;
    write_graph(&cfg.artifact(pipeline::MAPPED), &outcome.graph)
}

fn enrich(cfg: &PipelineConfig, input: Option<PathBuf>) -> Result<(), CliError> {
    let mapped = read_graph(&input.unwrap_or_else(|| cfg.artifact(pipeline::MAPPED)))?;
    let (enriched, report) = pipeline::enrich_graph(cfg, &mapped)?;
    log::info!("enrichment added {} triples", report.total_added());
    write_graph(&cfg.artifact(pipeline::ENRICHED), &enriched)?;
    write_text(&cfg.artifact(pipeline::ENRICHMENT_REPORT), &pipeline::report_json(&report))
}

fn index(cfg: &PipelineConfig) -> Result<SnapshotInfo, CliError> {
    let graph = read_graph(&cfg.artifact(pipeline::ENRICHED))?;
    let derived = pipeline::derived_ontology(&pipeline::lift(cfg)?)?;
    let expert = pipeline::expert_ontology(cfg)?;
    let all = pipeline::combined_ontology(&derived, expert.as_ref());
    let snap = Snapshot::build(cfg, graph, Some(&all))?;
    write_text(&cfg.artifact(pipeline::SNAPSHOT), &snap.info_json())?;
    Ok(snap.info)
}

/// Every stage in order, in memory, writing each artifact on the way.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<SnapshotInfo, CliError> {
    let lifted = pipeline::lift(cfg)?;
    write_text(&cfg.artifact(pipeline::ONTOLOGY), &lifted.to_turtle())?;
    write_text(&cfg.artifact(pipeline::REVIEW), &lifted.review_report())?;

    let data = pipeline::convert(cfg, &lifted, &cfg.lift.documents)?;
    write_graph(&cfg.artifact(pipeline::DATA), &data)?;

    let derived = pipeline::derived_ontology(&lifted)?;
    let expert = pipeline::expert_ontology(cfg)?;
    let rules = pipeline::align(cfg, &data, &derived, expert.as_ref())?;
    write_text(&cfg.artifact(pipeline::ALIGNMENTS), &write_rules(&rules))?;

    let outcome = pipeline::apply(cfg, &data, &rules, &derived, expert.as_ref())?;
    write_graph(&cfg.artifact(pipeline::MAPPED), &outcome.graph)?;

    let (enriched, report) = pipeline::enrich_graph(cfg, &outcome.graph)?;
    write_graph(&cfg.artifact(pipeline::ENRICHED), &enriched)?;
    write_text(&cfg.artifact(pipeline::ENRICHMENT_REPORT), &pipeline::report_json(&report))?;

    let all = pipeline::combined_ontology(&derived, expert.as_ref());
    let snap = Snapshot::build(cfg, enriched, Some(&all))?;
    write_text(&cfg.artifact(pipeline::SNAPSHOT), &snap.info_json())?;
    Ok(snap.info)
}

fn query(cfg: &PipelineConfig, complete: Option<String>, select: &[String], limit: usize) -> Result<(), CliError> {
    let snap = Snapshot::load(cfg)?;
    let out = if let Some(text) = complete {
        json!({ "query": text, "completions": snap.index.complete(&text, limit)? })
    } else {
        let selections = select.iter().map(|s| parse_selection(s)).collect::<Result<Vec<_>, _>>()?;
        let st = snap.engine.state_for(selections)?;
        let entities: Vec<_> = st
            .results()
            .iter()
            .take(limit)
            .map(|iri| json!({ "iri": iri.as_str(), "label": snap.label(iri) }))
            .collect();
        json!({ "total": st.results().len(), "entities": entities, "suggestions": snap.engine.suggest(&st) })
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("json serializes"));
    Ok(())
}

fn serve(cfg: &PipelineConfig, bind: Option<String>, port: Option<u16>) -> Result<(), CliError> {
    let snap = Snapshot::load(cfg)?;
    let addr = format!(
        "{}:{}",
        bind.as_deref().unwrap_or(&cfg.service.bind),
        port.unwrap_or(cfg.service.port)
    );
    let app = router(AppState::new(cfg.clone(), snap));
    let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Serve(e.to_string()))?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .map_err(|e| CliError::Serve(format!("{addr}: {e}")))?;
        log::info!("listening on http://{addr}");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| CliError::Serve(e.to_string()))
    })
}
