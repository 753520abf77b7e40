//! Session API for assisted play over HTTP.
//!
//! Every endpoint lives under `/api/v1`. A session wraps one dictionary and
//! the feedback entered so far; state is kept in memory only.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use wordle_exact::assistant::{AssistConfig, Assistant, Suggestion};
use wordle_exact::{DictFormat, Dictionary, Error as CoreError};

pub const API_PREFIX: &str = "/api/v1";
const DEFAULT_LIST_LIMIT: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dictionary { path: String, source: CoreError },
}

/// Reads every `*.txt` and `*.dict` file in `dir`; the file stem becomes the
/// dictionary name.
pub fn load_dictionaries(dir: &Path) -> Result<BTreeMap<String, Arc<Dictionary>>, LoadError> {
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| LoadError::Io { path, source }
    };
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        let ext = path.extension().and_then(|e| e.to_str());
        if !matches!(ext, Some("txt" | "dict")) {
            continue;
        }
        let Some(name) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
        let dict = Dictionary::parse(&text, DictFormat::detect(&text)).map_err(|source| {
            LoadError::Dictionary {
                path: path.display().to_string(),
                source,
            }
        })?;
        out.insert(name.to_string(), Arc::new(dict));
    }
    Ok(out)
}

struct Session {
    dictionary: String,
    assistant: Assistant,
}

pub struct AppState {
    dictionaries: BTreeMap<String, Arc<Dictionary>>,
    sessions: RwLock<HashMap<String, Arc<RwLock<Session>>>>,
    next_id: AtomicU64,
    config: AssistConfig,
}

impl AppState {
    pub fn new(dictionaries: BTreeMap<String, Arc<Dictionary>>, config: AssistConfig) -> Self {
        Self {
            dictionaries,
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
            config,
        }
    }

    fn session(&self, id: &str) -> Result<Arc<RwLock<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session `{id}`")))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    detail: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, detail: impl Into<String>) -> Self {
        Self {
            status,
            code,
            detail: detail.into(),
        }
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> Self {
        let (status, code) = match &e {
            CoreError::MarkingParse { .. } => (StatusCode::BAD_REQUEST, "malformed_marking"),
            CoreError::IncompatibleWords { .. }
            | CoreError::InvalidSymbol(_)
            | CoreError::UnknownSymbol(_) => (StatusCode::BAD_REQUEST, "malformed_guess"),
            CoreError::InconsistentFeedback { .. } => (StatusCode::CONFLICT, "inconsistent_feedback"),
            CoreError::NothingToUndo => (StatusCode::CONFLICT, "nothing_to_undo"),
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        };
        Self::new(status, code, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "malformed_request", e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "malformed_request", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.code, "detail": self.detail }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Serialize)]
struct DictionaryInfo {
    name: String,
    k: usize,
    size: usize,
}

#[derive(Serialize)]
struct DictionaryList {
    dictionaries: Vec<DictionaryInfo>,
}

#[derive(Deserialize)]
struct CreateRequest {
    dictionary: String,
}

#[derive(Serialize)]
struct Created {
    session: String,
    k: usize,
    size: usize,
}

#[derive(Deserialize)]
struct FeedbackRequest {
    guess: String,
    marking: String,
}

#[derive(Serialize)]
struct FeasibleCount {
    feasible: usize,
}

#[derive(Deserialize)]
struct ListParams {
    limit: Option<usize>,
}

#[derive(Serialize)]
struct FeasibleList {
    total: usize,
    words: Vec<String>,
}

#[derive(Serialize)]
struct Row {
    guess: String,
    marking: String,
}

#[derive(Serialize)]
struct SessionView {
    session: String,
    dictionary: String,
    k: usize,
    history: Vec<Row>,
    feasible: usize,
}

pub fn router(state: Arc<AppState>) -> Router {
    let api = Router::new()
        .route("/dictionaries", get(list_dictionaries))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(show_session))
        .route("/sessions/{id}/feedback", post(post_feedback))
        .route("/sessions/{id}/suggestion", get(get_suggestion))
        .route("/sessions/{id}/feasible", get(list_feasible))
        .route("/sessions/{id}/undo", post(undo_last));
    Router::new().nest(API_PREFIX, api).with_state(state)
}

pub async fn serve(addr: SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn list_dictionaries(State(state): State<Arc<AppState>>) -> Json<DictionaryList> {
    let dictionaries = state
        .dictionaries
        .iter()
        .map(|(name, d)| DictionaryInfo {
            name: name.clone(),
            k: d.k(),
            size: d.len(),
        })
        .collect();
    Json(DictionaryList { dictionaries })
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<Created>), ApiError> {
    let Json(req) = body?;
    let dict = state.dictionaries.get(&req.dictionary).cloned().ok_or_else(|| {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown_dictionary",
            format!("no dictionary `{}`", req.dictionary),
        )
    })?;
    let id = format!("s{}", state.next_id.fetch_add(1, Ordering::Relaxed));
    let created = Created {
        session: id.clone(),
        k: dict.k(),
        size: dict.len(),
    };
    let session = Session {
        dictionary: req.dictionary,
        assistant: Assistant::new(dict, state.config),
    };
    state
        .sessions
        .write()
        .expect("session table poisoned")
        .insert(id, Arc::new(RwLock::new(session)));
    Ok((StatusCode::CREATED, Json(created)))
}

async fn show_session(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<SessionView> {
    let session = state.session(&id)?;
    let s = session.read().expect("session poisoned");
    let d = s.assistant.dictionary();
    let history = s
        .assistant
        .history()
        .steps()
        .iter()
        .map(|step| Row {
            guess: render_guess(d, &step.guess),
            marking: step.marking.to_digits(),
        })
        .collect();
    Ok(Json(SessionView {
        session: id,
        dictionary: s.dictionary.clone(),
        k: d.k(),
        history,
        feasible: s.assistant.feasible_count(),
    }))
}

/// Guesses may use symbols outside the dictionary alphabet; those render
/// as `?`.
fn render_guess(d: &Dictionary, w: &wordle_exact::Word) -> String {
    let names: Vec<&str> = w
        .symbols()
        .iter()
        .map(|&s| d.alphabet().name(s).unwrap_or("?"))
        .collect();
    if d.alphabet().is_single_char() {
        names.concat()
    } else {
        names.join(",")
    }
}

async fn post_feedback(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<FeedbackRequest>, JsonRejection>,
) -> ApiResult<FeasibleCount> {
    let session = state.session(&id)?;
    let Json(req) = body?;
    let mut s = session.write().expect("session poisoned");
    let feasible = s.assistant.feedback(&req.guess, &req.marking)?;
    Ok(Json(FeasibleCount { feasible }))
}

async fn undo_last(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<FeasibleCount> {
    let session = state.session(&id)?;
    let mut s = session.write().expect("session poisoned");
    let feasible = s.assistant.undo()?;
    Ok(Json(FeasibleCount { feasible }))
}

async fn get_suggestion(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<Suggestion> {
    let session = state.session(&id)?;
    // exact search can take a while; keep it off the async workers
    let suggestion = tokio::task::spawn_blocking(move || {
        let s = session.read().expect("session poisoned");
        s.assistant.suggest()
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))??;
    Ok(Json(suggestion))
}

async fn list_feasible(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    params: Result<Query<ListParams>, QueryRejection>,
) -> ApiResult<FeasibleList> {
    let session = state.session(&id)?;
    let Query(params) = params?;
    let s = session.read().expect("session poisoned");
    let (total, words) = s
        .assistant
        .list_feasible(Some(params.limit.unwrap_or(DEFAULT_LIST_LIMIT)));
    Ok(Json(FeasibleList { total, words }))
}
