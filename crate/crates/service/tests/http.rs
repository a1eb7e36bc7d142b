use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use superstars_service::{router, AppState, ServiceConfig};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(&ServiceConfig::default()).unwrap(), None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn create(app: &Router, body: Value) -> Value {
    let (status, state) = call(app, "POST", "/games", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{state}");
    state
}

#[tokio::test]
async fn health() {
    let (status, body) = call(&app(), "GET", "/healthz", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
}

#[tokio::test]
async fn paint_can_figure_one_is_served_as_given() {
    let app = app();
    let state = create(&app, json!({"ruleset": "paintcan", "position": "BRGYB/GGGG", "humanSide": "Left"})).await;
    assert_eq!(state["position"]["stacks"], "BRGYB/GGGG");
    assert_eq!(state["toMove"], "Left");
    assert_eq!(state["status"], "ongoing");
    // Left may take B at 0, G at 2, B at 4, or any of the four greens.
    assert_eq!(state["legalMoves"].as_array().unwrap().len(), 7);
    assert!(state["history"].as_array().unwrap().is_empty());

    let id = state["id"].as_str().unwrap();
    let (status, again) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again["position"], state["position"]);
}

#[tokio::test]
async fn gray_bricks_are_rejected() {
    let app = app();
    let state = create(&app, json!({"ruleset": "paintcan", "position": "BRGYB/GGGG", "humanSide": "Left"})).await;
    let id = state["id"].as_str().unwrap();
    let uri = format!("/games/{id}/moves");

    let (status, err) = call(&app, "POST", &uri, Some(json!({"stack": 0, "brick": 3}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["error"], "illegal-move");
    let (status, err) = call(&app, "POST", &uri, Some(json!({"stack": 0, "brick": 1}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{err}");
    let (_, unchanged) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(unchanged["position"]["stacks"], "BRGYB/GGGG");

    // A legal move gets an AI reply appended.
    let (status, after) = call(&app, "POST", &uri, Some(json!({"stack": 1, "brick": 0}))).await;
    assert_eq!(status, StatusCode::OK, "{after}");
    let history = after["history"].as_array().unwrap();
    assert_eq!(history.len(), 2);
    assert_eq!(history[0]["by"], "Left");
    assert_eq!(history[1]["by"], "Right");
    assert!(history[1]["source"].is_string());
}

#[tokio::test]
async fn ai_moves_first_when_it_is_to_act() {
    let app = app();
    // *2 with the AI as Left to move: taking the bottom brick wins at once.
    let state = create(
        &app,
        json!({"ruleset": "paintcan", "position": {"stacks": "GG", "toMove": "Left"}, "humanSide": "Right"}),
    )
    .await;
    assert_eq!(state["history"].as_array().unwrap().len(), 1);
    assert_eq!(state["history"][0]["source"], "strategy");
    assert_eq!(state["status"], "finished");
    assert_eq!(state["winner"], "Left");
}

#[tokio::test]
async fn finished_sessions_reject_moves() {
    let app = app();
    // Taking the only brick leaves Right without a move.
    let state = create(&app, json!({"ruleset": "paintcan", "position": "B", "humanSide": "Left"})).await;
    let id = state["id"].as_str().unwrap();
    let (status, after) =
        call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"stack": 0, "brick": 0}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(after["status"], "finished");
    assert_eq!(after["winner"], "Left");
    assert!(after["legalMoves"].as_array().unwrap().is_empty());
    let (status, err) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"stack": 0, "brick": 0}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "finished");
    let (status, _) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn blackout_reduction_session_hands_the_human_oneon() {
    let app = app();
    let (status, reduced) = call(
        &app,
        "POST",
        "/reduce/pure-to-blackout",
        Some(json!({"elements": 3, "sets": [[1], [2, 3], [1, 2]], "k": 2})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{reduced}");
    let board: Value = serde_json::from_str(reduced["output"].as_str().unwrap()).unwrap();
    assert_eq!(board["toMove"], "AllOff");

    let state = create(&app, json!({"ruleset": "blackout", "position": board, "humanSide": "OneOn"})).await;
    assert_eq!(state["toMove"], "OneOn");
    assert_eq!(state["history"][0]["by"], "AllOff");
    let id = state["id"].as_str().unwrap();
    let legal = state["legalMoves"].as_array().unwrap();
    assert!(!legal.is_empty());
    assert!(legal.iter().all(|m| m["side"] == "OneOn" || m["type"] == "pass"));

    let (status, hint) = call(&app, "GET", &format!("/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(legal.contains(&hint["move"]), "{hint}");

    // Moving one of AllOff's switches is playing out of turn.
    let (status, err) = call(
        &app,
        "POST",
        &format!("/games/{id}/moves"),
        Some(json!({"type": "switch", "side": "AllOff", "row": 0, "on": true})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "out-of-turn");
    let (status, after) = call(&app, "POST", &format!("/games/{id}/moves"), Some(legal[0].clone())).await;
    assert_eq!(status, StatusCode::OK, "{after}");
    assert!(after["history"].as_array().unwrap().len() >= 2);
}

#[tokio::test]
async fn bad_requests() {
    let app = app();
    let (status, err) = call(&app, "GET", "/games/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["error"], "unknown-session");
    let (status, _) = call(&app, "GET", "/games/nope/hint", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, err) =
        call(&app, "POST", "/games", Some(json!({"ruleset": "paintcan", "position": "BXQ", "humanSide": "Left"})))
            .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["error"], "parse-error");
    let (status, _) = call(&app, "POST", "/games", Some(json!({"ruleset": "chess"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(
        &app,
        "POST",
        "/games",
        Some(json!({"ruleset": "blackout", "position": {"lights": "1"}, "humanSide": "OneOn"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, err) = call(&app, "POST", "/reduce/sat-to-chess", Some(json!({}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["error"], "unknown-reduction");
}

#[tokio::test]
async fn reduce_endpoint_runs_the_pipeline() {
    let app = app();
    let req = Request::builder()
        .method("POST")
        .uri("/reduce/epmx-to-stars?certificate=true")
        .body(Body::from(include_str!("../../core/tests/fixtures/epmx_four_clause.json")))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let body: Value = serde_json::from_slice(&resp.into_body().collect().await.unwrap().to_bytes()).unwrap();
    assert_eq!(body["output"], "{*1,*2,*16|0}+{*4,*7,*32|0}+{0|*1,*2}+{0|*8,*9,*10}+*15");
    assert_eq!(body["certificate"]["kind"], "epmx-to-stars");
}

#[tokio::test]
async fn history_log_is_appended() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("history.jsonl");
    let config = ServiceConfig { history_log: Some(path.clone()), ..Default::default() };
    let app = router(AppState::new(&config).unwrap(), None);
    let state = create(&app, json!({"ruleset": "paintcan", "position": "BRGYB/GGGG", "humanSide": "Left"})).await;
    let id = state["id"].as_str().unwrap();
    call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"stack": 1, "brick": 0}))).await;
    let lines: Vec<Value> =
        std::fs::read_to_string(&path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l["session"] == id));
}

#[tokio::test]
async fn static_files_are_served() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>board</p>").unwrap();
    let app = router(AppState::new(&ServiceConfig::default()).unwrap(), Some(dir.path().to_path_buf()));
    let resp = app.oneshot(Request::get("/index.html").body(Body::empty()).unwrap()).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&bytes[..], b"<p>board</p>");
}
