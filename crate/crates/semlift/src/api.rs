//! HTTP API over a [`Snapshot`]: autocomplete, facets, search, entity pages.

use std::sync::{Arc, RwLock};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use semlift_core::enrich::categories_of;
use semlift_core::rdf::vocab::standard_prefixes;
use semlift_core::rdf::{write_turtle, Graph, Iri, Term};
use semlift_core::search::{FacetSuggestion, FilterSelection};
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::config::PipelineConfig;
use crate::snapshot::Snapshot;

pub const DEFAULT_COMPLETIONS: usize = 10;
pub const DEFAULT_PAGE: usize = 20;

#[derive(Clone)]
pub struct AppState {
    snapshot: Arc<RwLock<Arc<Snapshot>>>,
    config: Arc<PipelineConfig>,
}

impl AppState {
    pub fn new(config: PipelineConfig, snapshot: Snapshot) -> Self {
        AppState {
            snapshot: Arc::new(RwLock::new(Arc::new(snapshot))),
            config: Arc::new(config),
        }
    }

    pub fn current(&self) -> Arc<Snapshot> {
        self.snapshot.read().expect("snapshot lock").clone()
    }
}

pub fn router(state: AppState) -> Router {
    let mut app = Router::new()
        .route("/health", get(health))
        .route("/autocomplete", get(autocomplete))
        .route("/facets", get(facets))
        .route("/search", post(search))
        .route("/entity/{iri}", get(entity));
    if state.config.service.allow_reload {
        app = app.route("/admin/reload", post(reload));
    }
    app = match &state.config.service.ui_dir {
        Some(dir) => app.nest_service("/ui", ServeDir::new(dir).append_index_html_on_directories(true)),
        None => app
            .route("/ui", get(ui_missing))
            .route("/ui/", get(ui_missing))
            .route("/ui/{*rest}", get(ui_missing)),
    };
    app.fallback(not_found).with_state(state)
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    let body = json!({ "error": { "status": status.as_u16(), "message": message.into() } });
    (status, Json(body)).into_response()
}

async fn not_found() -> Response {
    error(StatusCode::NOT_FOUND, "no such route")
}

async fn ui_missing() -> Response {
    error(StatusCode::NOT_FOUND, "ui not built")
}

async fn health(State(state): State<AppState>) -> Json<Value> {
    let snap = state.current();
    Json(json!({
        "status": "ok",
        "snapshot": {
            "hash": snap.info.hash,
            "triples": snap.info.triples,
            "entities": snap.info.entities,
            "lexical_entries": snap.info.lexical_entries,
        }
    }))
}

#[derive(Deserialize)]
struct CompleteParams {
    q: String,
    limit: Option<usize>,
}

async fn autocomplete(State(state): State<AppState>, params: Result<Query<CompleteParams>, QueryRejection>) -> Response {
    let Query(params) = match params {
        Ok(p) => p,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.body_text()),
    };
    let snap = state.current();
    match snap.index.complete(&params.q, params.limit.unwrap_or(DEFAULT_COMPLETIONS)) {
        Ok(found) => Json(json!({ "query": params.q, "completions": found })).into_response(),
        Err(e) => error(StatusCode::BAD_REQUEST, e.to_string()),
    }
}

async fn facets(State(state): State<AppState>) -> Json<Value> {
    let snap = state.current();
    let initial = snap.engine.initial_state();
    Json(json!({
        "facets": snap.engine.facets(),
        "total": initial.results().len(),
        "suggestions": snap.engine.suggest(&initial),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRequest {
    #[serde(default)]
    pub selections: Vec<FilterSelection>,
    #[serde(default)]
    pub offset: usize,
    #[serde(default = "default_page")]
    pub limit: usize,
}

fn default_page() -> usize {
    DEFAULT_PAGE
}

async fn search(State(state): State<AppState>, body: Result<Json<SearchRequest>, JsonRejection>) -> Response {
    let Json(req) = match body {
        Ok(b) => b,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.body_text()),
    };
    if req.limit == 0 {
        return error(StatusCode::BAD_REQUEST, "limit must be at least 1");
    }
    let snap = state.current();
    let st = match snap.engine.state_for(req.selections) {
        Ok(st) => st,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let entities: Vec<Value> = st
        .results()
        .iter()
        .skip(req.offset)
        .take(req.limit)
        .map(|iri| json!({ "iri": iri.as_str(), "label": snap.label(iri), "types": snap.types(iri) }))
        .collect();
    let suggestions: Vec<FacetSuggestion> = snap.engine.suggest(&st);
    Json(json!({
        "total": st.results().len(),
        "offset": req.offset,
        "entities": entities,
        "suggestions": suggestions,
    }))
    .into_response()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Json,
    Turtle,
}

/// Picks a representation from an `Accept` header; `None` means 406.
pub fn negotiate(accept: Option<&str>) -> Option<Representation> {
    let Some(accept) = accept.filter(|a| !a.trim().is_empty()) else {
        return Some(Representation::Json);
    };
    let mut ranges: Vec<(f32, usize, String)> = Vec::new();
    for (pos, part) in accept.split(',').enumerate() {
        let mut pieces = part.split(';');
        let media = pieces.next().unwrap_or("").trim().to_ascii_lowercase();
        let mut q = 1.0f32;
        for param in pieces {
            if let Some((k, v)) = param.split_once('=') {
                if k.trim().eq_ignore_ascii_case("q") {
                    q = v.trim().parse().unwrap_or(0.0);
                }
            }
        }
        if q > 0.0 && !media.is_empty() {
            ranges.push((q, pos, media));
        }
    }
    ranges.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    ranges.into_iter().find_map(|(_, _, media)| match media.as_str() {
        "application/json" | "application/*" | "*/*" => Some(Representation::Json),
        "text/turtle" | "text/*" => Some(Representation::Turtle),
        _ => None,
    })
}

fn term_json(term: &Term) -> Value {
    match term {
        Term::Iri(iri) => json!({ "type": "iri", "value": iri.as_str() }),
        Term::Blank(b) => json!({ "type": "blank", "value": b.label() }),
        Term::Literal(lit) => {
            let mut v = json!({ "type": "literal", "value": lit.lexical() });
            if let Some(lang) = lit.language() {
                v["language"] = json!(lang);
            } else {
                v["datatype"] = json!(lit.datatype().as_str());
            }
            v
        }
    }
}

async fn entity(State(state): State<AppState>, Path(raw): Path<String>, headers: HeaderMap) -> Response {
    let Ok(iri) = Iri::new(raw.as_str()) else {
        return error(StatusCode::BAD_REQUEST, format!("`{raw}` is not an absolute IRI"));
    };
    let accept = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok());
    let Some(repr) = negotiate(accept) else {
        return error(
            StatusCode::NOT_ACCEPTABLE,
            "supported representations are application/json and text/turtle",
        );
    };
    let snap = state.current();
    let subject = Term::Iri(iri.clone());
    if !snap.graph.has_subject(&subject) {
        return error(StatusCode::NOT_FOUND, format!("no description of <{}>", iri.as_str()));
    }
    let mut description = Graph::new();
    description.extend(snap.graph.with_subject(&subject).cloned());
    match repr {
        Representation::Turtle => (
            [(header::CONTENT_TYPE, "text/turtle; charset=utf-8")],
            write_turtle(&description, &standard_prefixes()),
        )
            .into_response(),
        Representation::Json => {
            let labels: Vec<Value> = snap
                .label_predicates
                .iter()
                .flat_map(|p| snap.graph.objects(&subject, p))
                .filter_map(|o| o.as_literal())
                .map(|l| json!({ "value": l.lexical(), "language": l.language() }))
                .collect();
            let properties: Vec<Value> = description
                .sorted()
                .into_iter()
                .map(|t| json!({ "predicate": t.predicate().as_str(), "object": term_json(t.object()) }))
                .collect();
            let categories: Vec<String> = categories_of(&snap.graph, &iri)
                .into_iter()
                .map(|c| c.as_str().to_string())
                .collect();
            Json(json!({
                "iri": iri.as_str(),
                "label": snap.label(&iri),
                "types": snap.types(&iri),
                "labels": labels,
                "categories": categories,
                "properties": properties,
            }))
            .into_response()
        }
    }
}

async fn reload(State(state): State<AppState>) -> Response {
    let config = state.config.clone();
    let rebuilt = tokio::task::spawn_blocking(move || Snapshot::load(&config)).await;
    match rebuilt {
        Ok(Ok(snap)) => {
            let info = snap.info.clone();
            *state.snapshot.write().expect("snapshot lock") = Arc::new(snap);
            log::info!("reloaded snapshot {}", info.hash);
            Json(json!({ "status": "reloaded", "hash": info.hash })).into_response()
        }
        Ok(Err(e)) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}
