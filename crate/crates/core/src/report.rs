//! Deterministic JSON reports.
//!
//! Keys are sorted, integers and rationals are decimal strings, tuples and
//! matrices are arrays (matrices row-major). Identical inputs give
//! byte-identical output.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, ErrorKind};
use crate::lattice::LatticeMatrix;
use crate::maps::{AffinePolyMap, ProjectiveMap, ProjectivePoint};
use crate::newton::LatticePolytope;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InputError,
    PreconditionFailed,
    VerificationFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input-error",
            Status::PreconditionFailed => "precondition-failed",
            Status::VerificationFailed => "verification-failed",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::PreconditionFailed => 2,
            Status::VerificationFailed => 3,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e.kind() {
            ErrorKind::Input => Status::InputError,
            ErrorKind::Precondition => Status::PreconditionFailed,
            ErrorKind::Verification => Status::VerificationFailed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: Value,
    pub inputs_digest: String,
    pub result: Value,
    pub status: Status,
}

impl Report {
    pub fn new(command: Value, inputs_digest: String, result: Value, status: Status) -> Self {
        Report {
            command,
            inputs_digest,
            result,
            status,
        }
    }

    pub fn failure(command: Value, inputs_digest: String, error: &Error) -> Self {
        let status = Status::of_error(error);
        Report {
            command,
            inputs_digest,
            result: json!({ "error": error.to_string() }),
            status,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "result": self.result,
            "status": self.status.as_str(),
        })
    }

    /// Pretty-printed document with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// SHA-256 over the length-prefixed parts, as lowercase hex.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn int(v: impl std::fmt::Display) -> Value {
    Value::String(v.to_string())
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn ints<T: std::fmt::Display>(vs: &[T]) -> Value {
    Value::Array(vs.iter().map(int).collect())
}

pub fn polynomial(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn map(f: &ProjectiveMap) -> Value {
    Value::Array(f.components().iter().map(polynomial).collect())
}

pub fn affine(f: &AffinePolyMap) -> Value {
    Value::Array(f.components().iter().map(polynomial).collect())
}

pub fn matrix(m: &LatticeMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| ints(r)).collect())
}

pub fn point(p: &ProjectivePoint) -> Value {
    Value::Array(p.coords().iter().map(rational).collect())
}

pub fn polytope(p: &LatticePolytope) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), int(p.dim()));
    m.insert("affine_dim".into(), int(p.affine_dim()));
    m.insert(
        "vertices".into(),
        Value::Array(p.vertices().iter().map(|v| ints(v)).collect()),
    );
    Value::Object(m)
}
