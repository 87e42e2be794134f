use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_LAW_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;

/// A finished report and the exit code it maps to.
pub struct Outcome {
    pub envelope: Value,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input",
            message,
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.kind, "message": self.message, "exit_code": self.code}).to_string()
    }
}

impl From<nnspectra::Error> for Failure {
    fn from(e: nnspectra::Error) -> Self {
        if e.is_budget() {
            Failure {
                code: EXIT_BUDGET,
                kind: "budget",
                message: e.to_string(),
            }
        } else {
            Failure::input(e.to_string())
        }
    }
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn envelope(command: &str, input_digest: String, parameters: Map<String, Value>, results: Value, warnings: Vec<String>) -> Value {
    json!({
        "command": command,
        "input_digest": input_digest,
        "parameters": parameters,
        "results": results,
        "warnings": warnings,
    })
}

/// Two-column table of the envelope with nested values flattened to dotted keys.
pub fn pretty(envelope: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", envelope, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[]).len(), 64);
    }

    #[test]
    fn pretty_flattens() {
        let t = pretty(&json!({"a": {"b": 1, "c": "x"}, "d": [1, 2]}));
        assert_eq!(t, "a.b  1\na.c  x\nd    [1,2]\n");
    }
}
