//! Versioned JSON reports with a hash of their canonical serialization.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;

pub const SCHEMA_VERSION: &str = "1";

/// Canonical serialization: object keys sorted (serde_json maps are ordered), no whitespace.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn hash_value(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical(v).as_bytes()))
}

pub fn report(command: &str, inputs: Value, outputs: Value) -> Value {
    let body = json!({"command": command, "inputs": inputs, "outputs": outputs});
    let h = hash_value(&body);
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": body["inputs"],
        "outputs": body["outputs"],
        "determinism_hash": h,
    })
}

pub fn error_report(command: &str, e: &Error) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"kind": e.kind(), "message": e.to_string()},
    })
}

/// Recompute the hash of a report and compare with the stored one.
pub fn verify(r: &Value) -> bool {
    let body = json!({"command": r["command"], "inputs": r["inputs"], "outputs": r["outputs"]});
    r["determinism_hash"].as_str() == Some(hash_value(&body).as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_order_independent() {
        let a = report("x", json!({"b": 1, "a": 2}), json!([1, 2]));
        let b = report("x", json!({"a": 2, "b": 1}), json!([1, 2]));
        assert_eq!(a["determinism_hash"], b["determinism_hash"]);
        assert!(verify(&a));
        let back: Value = serde_json::from_str(&canonical(&a)).unwrap();
        assert_eq!(back, a);
    }
}
