//! HTTP JSON API. Handlers are pure functions of the query parameters; the
//! server in [`router`] only adapts them to axum.

use std::collections::HashMap;

use arrowfocal::render::RenderConfig;
use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde_json::{json, Value};

use crate::ops::{self, Failure};

pub type Params = HashMap<String, String>;

fn required<'a>(q: &'a Params, name: &str) -> Result<&'a str, Failure> {
    q.get(name)
        .map(String::as_str)
        .ok_or_else(|| Failure::input("missing_parameter", format!("query parameter `{name}` is required")))
}

fn number_or(q: &Params, name: &str, default: f64) -> Result<f64, Failure> {
    q.get(name).map_or(Ok(default), |v| ops::parse_number(name, v))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports contain only finite numbers")
}

/// `GET /api/scene?f=&delta=&range=A:B&arrows=&samples=[&g=][&probe=]`
pub fn scene(q: &Params) -> Result<Value, Failure> {
    let f = ops::parse_function(required(q, "f")?)?;
    let g = q.get("g").map(|g| ops::parse_function(g)).transpose()?;
    let mut cfg = RenderConfig {
        delta: number_or(q, "delta", 1.0)?,
        ..RenderConfig::default()
    };
    if let Some(r) = q.get("range") {
        cfg.arrow_range = ops::parse_range("range", r)?;
    }
    if let Some(n) = q.get("arrows") {
        cfg.arrow_count = ops::parse_count("arrows", n)?;
    }
    if let Some(n) = q.get("samples") {
        cfg.focal_sample_count = ops::parse_count("samples", n)?;
    }
    if let Some(x0) = q.get("probe") {
        cfg.probe = Some(ops::parse_number("probe", x0)?);
    }
    ops::scene(&f, &cfg, g.as_ref()).map(|s| to_value(&s))
}

/// `GET /api/probe?f=&x0=[&delta=]`
pub fn probe(q: &Params) -> Result<Value, Failure> {
    let f = ops::parse_function(required(q, "f")?)?;
    let x0 = ops::parse_number("x0", required(q, "x0")?)?;
    ops::probe(&f, x0, number_or(q, "delta", 1.0)?).map(|r| to_value(&r))
}

/// `GET /api/implicit?f=`
pub fn implicit(q: &Params) -> Result<Value, Failure> {
    let f = ops::parse_function(required(q, "f")?)?;
    ops::implicit(&f).map(|r| to_value(&r))
}

/// `GET /api/transform?g=&kind=&c=`
pub fn transform(q: &Params) -> Result<Value, Failure> {
    let g = ops::parse_function(required(q, "g")?)?;
    let kind = ops::parse_kind(required(q, "kind")?, required(q, "c")?)?;
    ops::transform(&g, &kind).map(|r| to_value(&r))
}

/// `GET /api/compose?a=&b=&c=&d=[&local=true]`
pub fn compose(q: &Params) -> Result<Value, Failure> {
    let [a, b, c, d] = ["a", "b", "c", "d"].map(|k| required(q, k).and_then(|v| ops::parse_number(k, v)));
    let local = q.get("local").is_some_and(|v| v == "true" || v == "1");
    Ok(to_value(&ops::compose(a?, b?, c?, d?, local)))
}

pub fn error_body(e: &Failure) -> Value {
    json!({ "error": e.code, "message": e.message })
}

/// Status code and body for a handler result.
pub fn respond(result: Result<Value, Failure>) -> (u16, Value) {
    match result {
        Ok(v) => (200, v),
        Err(e) => (e.status(), error_body(&e)),
    }
}

fn http(result: Result<Value, Failure>) -> Response {
    let (status, body) = respond(result);
    let status = StatusCode::from_u16(status).expect("handler statuses are valid");
    (status, [(header::ACCESS_CONTROL_ALLOW_ORIGIN, "*")], Json(body)).into_response()
}

async fn not_found() -> Response {
    let body = error_body(&Failure::input("not_found", "unknown endpoint"));
    (StatusCode::NOT_FOUND, Json(body)).into_response()
}

pub fn router() -> Router {
    Router::new()
        .route("/api/scene", get(|Query(q): Query<Params>| async move { http(scene(&q)) }))
        .route("/api/probe", get(|Query(q): Query<Params>| async move { http(probe(&q)) }))
        .route("/api/implicit", get(|Query(q): Query<Params>| async move { http(implicit(&q)) }))
        .route("/api/transform", get(|Query(q): Query<Params>| async move { http(transform(&q)) }))
        .route("/api/compose", get(|Query(q): Query<Params>| async move { http(compose(&q)) }))
        .fallback(not_found)
}

/// Serves the API on an already bound listener until the task is dropped.
pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
