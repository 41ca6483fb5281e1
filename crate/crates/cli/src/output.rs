//! Text artifacts and the numeric formatting they share.

use acmac_core::format::round9;
use serde_json::Value;

/// A file produced by a command, kept in memory until the run finishes.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    pub fn new(name: &str, contents: String) -> Self {
        Self {
            name: name.into(),
            contents,
        }
    }

    pub fn json(name: &str, value: &Value) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
        text.push('\n');
        Self::new(name, text)
    }
}

/// Rounds every non-integer number in `v` to 9 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round9(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

/// CSV body preceded by a `# manifest:` comment line.
pub fn csv_with_block(block: &Value, body: &str) -> String {
    format!("# manifest: {block}\n{body}")
}
