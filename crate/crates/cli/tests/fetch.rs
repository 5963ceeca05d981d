use sha2::{Digest, Sha256};
use std::io::{Read, Write};
use std::net::TcpListener;
use std::thread;
use zetabound::zeros::{load_zeros, ZeroFormat};
use zetabound_cli::fetch::{fetch_zeros, normalize, FetchError};

const BODY: &str = "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n";

/// Serves one canned response per accepted connection, `hits` times.
fn serve(status: &'static str, body: &'static str, hits: usize) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    thread::spawn(move || {
        for stream in listener.incoming().take(hits) {
            let mut s = stream.unwrap();
            let mut buf = [0u8; 4096];
            let _ = s.read(&mut buf);
            let resp = format!(
                "HTTP/1.1 {status}\r\nContent-Length: {}\r\nContent-Type: text/plain\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            s.write_all(resp.as_bytes()).unwrap();
        }
    });
    format!("http://{addr}/zeros1")
}

fn sha(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[test]
fn fetches_and_normalizes() {
    let url = serve("200 OK", BODY, 1);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.txt");
    let n = fetch_zeros(&url, &out, Some(&sha(BODY).to_uppercase())).unwrap();
    assert_eq!(n, 5);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with(&format!("# source: {url}\n# fetched: ")));
    let table = load_zeros(&out, ZeroFormat::Commented).unwrap();
    assert_eq!(table.len(), 5);
    assert_eq!(table.source, url);
    assert!((table.gamma_max - 32.935061588).abs() < 1e-12);
}

#[test]
fn checksum_mismatch_leaves_nothing() {
    let url = serve("200 OK", BODY, 1);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.txt");
    let err = fetch_zeros(&url, &out, Some(&"0".repeat(64))).unwrap_err();
    assert!(matches!(err, FetchError::Checksum { .. }), "{err}");
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn not_found_names_the_status() {
    let url = serve("404 Not Found", "missing", 1);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.txt");
    let err = fetch_zeros(&url, &out, None).unwrap_err();
    assert!(matches!(err, FetchError::Network(_)));
    assert!(err.to_string().contains("404"), "{err}");
    assert!(!out.exists());
}

#[test]
fn unparsable_payload_is_rejected() {
    let url = serve("200 OK", "<html>not a zero list</html>\n", 1);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.txt");
    assert!(matches!(fetch_zeros(&url, &out, None), Err(FetchError::Payload(_))));
    assert!(!out.exists());
}

#[test]
fn unreachable_host_is_a_network_error() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    drop(listener);
    let dir = tempfile::tempdir().unwrap();
    let err = fetch_zeros(&format!("http://{addr}/z"), &dir.path().join("z.txt"), None).unwrap_err();
    assert!(matches!(err, FetchError::Network(_)));
}

#[test]
fn normalize_accepts_indexed_lines() {
    let text = normalize("1 14.134725142\n2 21.022039639\n\n3 25.010857580\n", "u", "2026-01-01").unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, vec!["14.134725142", "21.022039639", "25.010857580"]);
    assert!(normalize("", "u", "d").is_err());
    assert!(normalize("21.0\n14.1\n", "u", "d").is_err());
}
