//! HTTP game service for Paint Can and Blackout.
//!
//! Sessions live in memory, one mutex each, so moves on a session are
//! serialized while different sessions proceed independently. All move
//! legality comes from the core rulesets; clients only ever send moves.
//!
//! Routes:
//!
//! | method | path                  | body                 |
//! |--------|-----------------------|----------------------|
//! | POST   | `/games`              | [`CreateGame`]       |
//! | GET    | `/games/{id}`         |                      |
//! | POST   | `/games/{id}/moves`   | move document        |
//! | GET    | `/games/{id}/hint`    |                      |
//! | POST   | `/reduce/{kind}`      | source document text |
//! | GET    | `/healthz`            |                      |

pub mod ai;
pub mod session;

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use parking_lot::{Mutex, RwLock};
use serde::Deserialize;
use serde_json::{json, Value};
use superstars::reductions::{run_reduction, ReductionKind};
use superstars::{Error, ErrorKind};
use tower_http::services::ServeDir;

use session::{MoveError, Position, Ruleset, Session, SideName};

pub const DEFAULT_AI_BUDGET: u64 = 200_000;

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    /// Node budget for AI searches when a session does not set one.
    pub ai_budget: Option<u64>,
    /// Directory served for paths no route matches.
    pub static_dir: Option<PathBuf>,
    /// Append-only JSON-lines log of session creations and moves.
    pub history_log: Option<PathBuf>,
}

type SessionRef = Arc<Mutex<Session>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, SessionRef>>>,
    ai_budget: u64,
    log: Option<Arc<Mutex<File>>>,
}

impl AppState {
    pub fn new(config: &ServiceConfig) -> std::io::Result<AppState> {
        let log = match &config.history_log {
            Some(path) => Some(Arc::new(Mutex::new(OpenOptions::new().create(true).append(true).open(path)?))),
            None => None,
        };
        Ok(AppState { sessions: Arc::default(), ai_budget: config.ai_budget.unwrap_or(DEFAULT_AI_BUDGET), log })
    }

    fn session(&self, id: &str) -> Result<SessionRef, ApiError> {
        self.sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown-session", format!("no session `{id}`")))
    }

    fn record(&self, entry: Value) {
        if let Some(log) = &self.log {
            // Logging is best effort; a full disk must not stop play.
            let _ = writeln!(log.lock(), "{entry}");
        }
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { status, code, message: message.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> ApiError {
        let (status, code) = match (&e, e.kind()) {
            (Error::IllegalMove(_), _) => (StatusCode::UNPROCESSABLE_ENTITY, "illegal-move"),
            (_, ErrorKind::Parse) => (StatusCode::BAD_REQUEST, "parse-error"),
            (_, ErrorKind::Budget) => (StatusCode::SERVICE_UNAVAILABLE, "budget-exceeded"),
            (_, ErrorKind::Precondition) => (StatusCode::UNPROCESSABLE_ENTITY, "precondition"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({"error": self.code, "message": self.message}))).into_response()
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateGame {
    pub ruleset: Ruleset,
    pub position: Value,
    pub human_side: SideName,
    pub ai_budget: Option<u64>,
}

async fn create_game(
    State(app): State<AppState>,
    body: Result<Json<CreateGame>, axum::extract::rejection::JsonRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Json(req) = body.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "parse-error", e.body_text()))?;
    let initial = Position::parse(req.ruleset, &req.position)?;
    let id = uuid::Uuid::new_v4().to_string();
    let budget = req.ai_budget.unwrap_or(app.ai_budget);
    let mut session = Session::new(id.clone(), initial, req.human_side.player(), budget);
    app.record(
        json!({"session": id, "ruleset": req.ruleset, "initial": session.initial.document(), "human": req.human_side}),
    );
    let (session, state) = blocking(move || {
        session.run_ai()?;
        let state = session.state();
        Ok((session, state))
    })
    .await?;
    for e in &state.history {
        app.record(json!({"session": id, "entry": e}));
    }
    app.sessions.write().insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(state)))
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let s = app.session(&id)?;
    let state = s.lock().state();
    Ok(Json(state))
}

async fn post_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<Value>, axum::extract::rejection::JsonRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Json(doc) = body.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "parse-error", e.body_text()))?;
    let s = app.session(&id)?;
    let log = app.clone();
    let state = blocking(move || {
        let mut session = s.lock();
        let before = session.history.len();
        let mv = session.position.parse_move(&doc)?;
        match session.human_move(mv)? {
            Ok(()) => {}
            Err(MoveError::Finished) => {
                return Err(ApiError::new(StatusCode::CONFLICT, "finished", "the game is over"));
            }
            Err(MoveError::OutOfTurn) => {
                return Err(ApiError::new(StatusCode::CONFLICT, "out-of-turn", "it is not the human's turn"));
            }
        }
        session.run_ai()?;
        for e in &session.history[before..] {
            log.record(json!({"session": session.id, "entry": e}));
        }
        Ok(session.state())
    })
    .await?;
    Ok(Json(state))
}

async fn hint(State(app): State<AppState>, Path(id): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let s = app.session(&id)?;
    let h = blocking(move || {
        let session = s.lock();
        if session.is_finished() {
            return Err(ApiError::new(StatusCode::CONFLICT, "finished", "the game is over"));
        }
        Ok(ai::choose(&session.position, session.ai_budget)?)
    })
    .await?;
    Ok(Json(h))
}

#[derive(Debug, Deserialize)]
struct ReduceQuery {
    #[serde(default)]
    certificate: bool,
}

async fn reduce(
    Path(kind): Path<String>,
    Query(q): Query<ReduceQuery>,
    body: String,
) -> Result<impl IntoResponse, ApiError> {
    let kind: ReductionKind =
        kind.parse().map_err(|e: Error| ApiError::new(StatusCode::NOT_FOUND, "unknown-reduction", e.to_string()))?;
    let out = blocking(move || Ok(run_reduction(kind, &body, q.certificate)?)).await?;
    Ok(Json(out))
}

async fn healthz() -> Json<Value> {
    Json(json!({"status": "ok"}))
}

pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/hint", get(hint))
        .route("/reduce/{kind}", post(reduce))
        .route("/healthz", get(healthz))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until Ctrl-C.
pub async fn serve(port: u16, config: ServiceConfig) -> std::io::Result<()> {
    let state = AppState::new(&config)?;
    let app = router(state, config.static_dir.clone());
    let listener = tokio::net::TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], port))).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
