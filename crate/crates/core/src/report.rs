//! JSON run reports with numbers rounded to 10 significant digits.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

pub const SIGNIFICANT_DIGITS: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: String,
    pub wall_time: f64,
}

impl RunReport {
    /// Wraps serializable inputs and results; every float is rounded.
    pub fn new(
        command: &str,
        inputs: &impl Serialize,
        results: &impl Serialize,
        started: Instant,
    ) -> Result<RunReport> {
        Ok(RunReport {
            command: command.to_string(),
            inputs: round_floats(serde_json::to_value(inputs)?),
            results: round_floats(serde_json::to_value(results)?),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time: round_sig(started.elapsed().as_secs_f64()),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant decimal digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Rounds every non-integer number inside a JSON value.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 7.0), 0.1428571429);
        assert_eq!(round_sig(-2.0f64.sqrt() * 1e-7), -1.414213562e-7);
        let v = round_floats(json!({"a": [1.23456789012345, 7], "b": {"c": 2.0}}));
        assert_eq!(v, json!({"a": [1.23456789, 7], "b": {"c": 2.0}}));
    }
}
