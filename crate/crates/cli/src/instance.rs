//! Instance files: `{"lambda": [...], "mu": [...], "name": "..."}`.
//!
//! Entries are JSON integers or `"num/den"` strings. Floats are rejected so
//! nothing inexact reaches the certificates.

use std::io::Read;
use std::path::Path;

use interlace_majorize::rational::parse_rational;
use interlace_majorize::{PolyPair, Rational, RootList};
use serde_json::Value;

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub lambda: Vec<Rational>,
    pub mu: Vec<Rational>,
}

impl Instance {
    /// Reads from a path, or from stdin for `-`.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = if path.as_os_str() == "-" {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("read stdin: {e}"))?;
            buf
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("read {}: {e}", path.display()))?
        };
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        let obj = doc.as_object().ok_or("instance must be a JSON object")?;
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err("\"name\" must be a string".into()),
        };
        let lambda = roots(obj.get("lambda"), "lambda")?;
        let mu = roots(obj.get("mu"), "mu")?;
        if lambda.len() != mu.len() {
            return Err(format!("\"lambda\" has {} entries but \"mu\" has {}", lambda.len(), mu.len()));
        }
        Ok(Self { name, lambda, mu })
    }

    /// Root lists sorted largest first.
    pub fn pair(&self) -> Result<PolyPair, String> {
        let lam = RootList::from_unsorted(self.lambda.clone()).map_err(|e| e.to_string())?;
        let mu = RootList::from_unsorted(self.mu.clone()).map_err(|e| e.to_string())?;
        PolyPair::new(lam, mu).map_err(|e| e.to_string())
    }
}

fn roots(value: Option<&Value>, key: &str) -> Result<Vec<Rational>, String> {
    let items = match value {
        Some(Value::Array(items)) => items,
        Some(_) => return Err(format!("\"{key}\" must be an array")),
        None => return Err(format!("missing \"{key}\"")),
    };
    if items.is_empty() {
        return Err(format!("\"{key}\" is empty"));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| match item {
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_rational(&n.to_string()).map_err(|e| format!("{key}[{i}]: {e}"))
            }
            Value::Number(n) => Err(format!("{key}[{i}]: {n} is not exact; write it as \"num/den\"")),
            Value::String(s) => parse_rational(s).map_err(|e| format!("{key}[{i}]: {e}")),
            other => Err(format!("{key}[{i}]: expected an integer or \"num/den\" string, got {other}")),
        })
        .collect()
}
