//! Download of published zero-ordinate lists.

use sha2::{Digest, Sha256};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use zetabound::zeros::{parse_zeros, ZeroFormat};

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("network: {0}")]
    Network(String),
    #[error("checksum mismatch: expected {expected}, got {actual}")]
    Checksum { expected: String, actual: String },
    #[error("payload: {0}")]
    Payload(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

/// Turns a downloaded list into the commented zero-file format. Lines may
/// carry a leading index column; the last field is the ordinate.
pub fn normalize(body: &str, url: &str, fetched: &str) -> Result<String, FetchError> {
    let mut out = String::new();
    out.push_str(&format!("# source: {url}\n# fetched: {fetched}\n"));
    let mut count = 0usize;
    for (i, raw) in body.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let field = l.split_whitespace().last().expect("non-empty line");
        if field.parse::<f64>().map(|v| !v.is_finite()).unwrap_or(true) {
            return Err(FetchError::Payload(format!("line {}: {l:?} is not an ordinate", i + 1)));
        }
        out.push_str(field);
        out.push('\n');
        count += 1;
    }
    if count == 0 {
        return Err(FetchError::Payload("no ordinates in the response".into()));
    }
    parse_zeros(&out, ZeroFormat::Commented).map_err(|e| FetchError::Payload(e.to_string()))?;
    Ok(out)
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Partial(Option<PathBuf>);

impl Drop for Partial {
    fn drop(&mut self) {
        if let Some(p) = self.0.take() {
            let _ = std::fs::remove_file(p);
        }
    }
}

/// GET `url`, check the SHA-256 of the raw body when given, normalize and
/// write `out`. Nothing is left at `out` on failure.
pub fn fetch_zeros(url: &str, out: &Path, checksum: Option<&str>) -> Result<usize, FetchError> {
    let resp = match ureq::get(url).call() {
        Ok(r) => r,
        Err(ureq::Error::Status(code, r)) => {
            return Err(FetchError::Network(format!("HTTP {code} {} for {url}", r.status_text())));
        }
        Err(e) => return Err(FetchError::Network(e.to_string())),
    };
    let mut body = Vec::new();
    resp.into_reader().read_to_end(&mut body).map_err(|e| FetchError::Network(e.to_string()))?;
    if let Some(expected) = checksum {
        let actual = sha256_hex(&body);
        if !actual.eq_ignore_ascii_case(expected.trim()) {
            return Err(FetchError::Checksum { expected: expected.trim().to_lowercase(), actual });
        }
    }
    let text = String::from_utf8(body).map_err(|_| FetchError::Payload("response is not UTF-8 text".into()))?;
    let fetched = chrono::Utc::now().format("%Y-%m-%d").to_string();
    let normalized = normalize(&text, url, &fetched)?;
    let count = normalized.lines().filter(|l| !l.starts_with('#')).count();

    let io = |p: &Path, e: std::io::Error| FetchError::Io { path: p.display().to_string(), msg: e.to_string() };
    let mut tmp_name = out.as_os_str().to_owned();
    tmp_name.push(".partial");
    let tmp = PathBuf::from(tmp_name);
    let mut guard = Partial(Some(tmp.clone()));
    let mut f = std::fs::File::create(&tmp).map_err(|e| io(&tmp, e))?;
    f.write_all(normalized.as_bytes()).map_err(|e| io(&tmp, e))?;
    f.sync_all().map_err(|e| io(&tmp, e))?;
    std::fs::rename(&tmp, out).map_err(|e| io(out, e))?;
    guard.0 = None;
    Ok(count)
}
