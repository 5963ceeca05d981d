//! Optional JSON config file whose keys mirror the command-line flags.

use serde_json::{Map, Value};
use std::path::Path;

#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: Map<String, Value>,
}

fn key(k: &str) -> String {
    k.trim_start_matches('-').replace('_', "-")
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        match serde_json::from_str::<Value>(text).map_err(|e| e.to_string())? {
            Value::Object(m) => Ok(Self { values: m.into_iter().map(|(k, v)| (key(&k), v)).collect() }),
            _ => Err("config must be a JSON object".into()),
        }
    }

    fn get(&self, k: &str) -> Option<&Value> {
        self.values.get(&key(k))
    }

    pub fn f64(&self, k: &str) -> Result<Option<f64>, String> {
        match self.get(k) {
            None => Ok(None),
            Some(Value::Number(n)) => n.as_f64().map(Some).ok_or_else(|| format!("{k}: not a number")),
            Some(Value::String(s)) => s.parse().map(Some).map_err(|_| format!("{k}: {s:?} is not a number")),
            Some(v) => Err(format!("{k}: expected a number, got {v}")),
        }
    }

    pub fn u64(&self, k: &str) -> Result<Option<u64>, String> {
        match self.get(k) {
            None => Ok(None),
            Some(Value::Number(n)) => n.as_u64().map(Some).ok_or_else(|| format!("{k}: not a non-negative integer")),
            Some(v) => Err(format!("{k}: expected an integer, got {v}")),
        }
    }

    pub fn string(&self, k: &str) -> Result<Option<String>, String> {
        match self.get(k) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(format!("{k}: expected a string, got {v}")),
        }
    }

    pub fn bool(&self, k: &str) -> Result<bool, String> {
        match self.get(k) {
            None => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(v) => Err(format!("{k}: expected true or false, got {v}")),
        }
    }
}
