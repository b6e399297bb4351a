//! Machine-readable command reports and the JSON encodings they embed.

use std::fmt;

use modspec_core::localization::{LocalKind, LocalizedModule};
use modspec_core::spectrum::OpenSet;
use modspec_core::{FgModule, Ideal, ModElement, Submodule};
use serde_json::{json, Map, Value};

use crate::input::int_value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A property that must hold on the instance failed.
    Violation,
    Error,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 2,
            Status::Error => 1,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "status": self.status.name(),
            "error": self.error,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

pub fn ideal_json(i: &Ideal) -> Value {
    int_value(i.gen())
}

pub fn element_json(x: &ModElement) -> Value {
    x.coords().iter().map(|&c| int_value(c)).collect()
}

pub fn module_json(m: &FgModule) -> Value {
    let mut o = Map::new();
    o.insert("ring".into(), m.ring().to_string().into());
    match m.prufer_prime() {
        Some(p) => {
            o.insert("kind".into(), "prufer".into());
            o.insert("p".into(), int_value(p));
        }
        None => {
            o.insert("kind".into(), "finitely_presented".into());
            o.insert("factors".into(), m.factors().iter().map(|&e| int_value(e)).collect());
            o.insert("free_rank".into(), Value::from(m.free_rank()));
            o.insert("cardinality".into(), cardinality_json(m.finite_cardinality(u128::MAX).ok()));
        }
    }
    o.insert("annihilator".into(), m.annihilator().map_or(Value::Null, |a| ideal_json(&a)));
    Value::Object(o)
}

pub fn cardinality_json(c: Option<u128>) -> Value {
    match c {
        Some(c) if c <= 1 << 53 => Value::from(c as u64),
        Some(c) => Value::String(c.to_string()),
        None => "infinite".into(),
    }
}

pub fn submodule_json(m: &FgModule, n: &Submodule) -> Value {
    if m.is_prufer() {
        return json!({ "whole": m.is_full(n) });
    }
    let gens: Vec<Value> = m
        .submodule_generators(n)
        .map(|g| g.iter().map(element_json).collect())
        .unwrap_or_default();
    json!({
        "generators": gens,
        "cardinality": cardinality_json(m.submodule_cardinality(n).ok()),
    })
}

pub fn localized_json(l: &LocalizedModule) -> Value {
    let kind = match l.kind {
        LocalKind::Zero => json!("zero"),
        LocalKind::Prufer(p) => json!({ "prufer": int_value(p) }),
        LocalKind::Standard => json!("finitely_presented"),
    };
    json!({
        "ring": l.base.to_string(),
        "kind": kind,
        "factors": l.factors.iter().map(|&e| int_value(e)).collect::<Vec<_>>(),
        "free_rank": l.free_rank,
        "cardinality": cardinality_json(l.cardinality()),
    })
}

pub fn open_json(u: &OpenSet) -> Value {
    u.primes().iter().map(|&p| int_value(p)).collect()
}
