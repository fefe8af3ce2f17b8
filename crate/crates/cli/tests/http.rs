use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::sync::mpsc;
use std::time::Duration;

use serde_json::Value;

fn start_server() -> SocketAddr {
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let runtime = tokio::runtime::Runtime::new().unwrap();
        runtime.block_on(async {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            arrowfocal_cli::api::serve(listener).await.unwrap();
        });
    });
    rx.recv_timeout(Duration::from_secs(10)).unwrap()
}

/// Status code and JSON body of `GET path`.
fn get(addr: SocketAddr, path: &str) -> (u16, Value) {
    let mut stream = TcpStream::connect(addr).unwrap();
    stream.set_read_timeout(Some(Duration::from_secs(30))).unwrap();
    write!(stream, "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").unwrap();
    let mut raw = String::new();
    stream.read_to_string(&mut raw).unwrap();
    let (head, body) = raw.split_once("\r\n\r\n").unwrap();
    let status = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(head.to_ascii_lowercase().contains("content-type: application/json"), "{head}");
    (status, serde_json::from_str(body).unwrap())
}

#[test]
fn endpoints_over_tcp() {
    let addr = start_server();

    let (status, body) = get(addr, "/api/implicit?f=x%5E2");
    assert_eq!(status, 200);
    assert_eq!(body["equation"], "(x-1)^2 + 4*x*y = 0");
    assert_eq!(body["class"], "hyperbola");

    let (status, body) = get(addr, "/api/probe?f=x%5E2&x0=-1");
    assert_eq!(status, 200);
    assert!((body["fprime"].as_f64().unwrap() + 2.0).abs() < 1e-12);

    let (status, body) = get(addr, "/api/scene?f=sin(x)&range=0:6.283185307179586&arrows=9&samples=201");
    assert_eq!(status, 200);
    assert_eq!(body["arrows"].as_array().unwrap().len(), 9);
    assert_eq!(body["cusps"].as_array().unwrap().len(), 1);

    let (status, body) = get(addr, "/api/transform?g=1%2F(4x)&kind=scale-output&c=2");
    assert_eq!(status, 200);
    assert_eq!(body["degree"], 2);

    let (status, body) = get(addr, "/api/compose?a=2&b=-2&c=2&d=3");
    assert_eq!(status, 200);
    assert_eq!(body["collinear"], true);

    let (status, body) = get(addr, "/api/implicit?f=exp(x)");
    assert_eq!(status, 422);
    assert_eq!(body["error"], "not_rational");
    assert!(body["message"].is_string());

    let (status, body) = get(addr, "/api/probe?f=x%5E%5E2&x0=1");
    assert_eq!(status, 400);
    assert_eq!(body["error"], "parse_error");

    let (status, body) = get(addr, "/api/nowhere");
    assert_eq!(status, 404);
    assert_eq!(body["error"], "not_found");
}
