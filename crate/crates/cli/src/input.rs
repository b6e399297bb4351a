//! Module description files.
//!
//! ```json
//! {"ring": {"kind": "Zmod", "n": 12},
//!  "module": {"kind": "presentation", "generators": 1, "relations": [[4]]},
//!  "caps": {"cardinality": 4096}}
//! ```
//!
//! Integers may be JSON numbers or decimal strings.

use modspec_core::arith::{self, Int, RingDesc};
use modspec_core::{Caps, FgModule};
use serde_json::{Map, Value};

use crate::error::InputError;

/// Above this magnitude integers are written as decimal strings.
const EXACT_JSON_LIMIT: Int = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    Z,
    Zmod(Int),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    InvariantFactors { factors: Vec<Int>, free_rank: usize },
    Presentation { generators: usize, relations: Vec<Vec<Int>> },
    Prufer { p: Int },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CapsSpec {
    pub cardinality: Option<u128>,
    pub bruteforce: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFile {
    pub ring: RingSpec,
    pub module: ModuleSpec,
    pub caps: CapsSpec,
}

pub fn int_value(x: Int) -> Value {
    if x.abs() <= EXACT_JSON_LIMIT {
        Value::from(x as i64)
    } else {
        Value::String(x.to_string())
    }
}

fn err(field: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Field { field: field.into(), message: message.into() }
}

pub fn parse_int(v: &Value, field: &str) -> Result<Int, InputError> {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_i64() {
                Ok(x as Int)
            } else if let Some(x) = n.as_u64() {
                Ok(x as Int)
            } else {
                Err(err(field, format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|_| err(field, format!("{s:?} is not a decimal integer"))),
        other => Err(err(field, format!("expected an integer, found {}", kind_of(other)))),
    }
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object()
        .ok_or_else(|| err(field, format!("expected an object, found {}", kind_of(v))))
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array()
        .ok_or_else(|| err(field, format!("expected an array, found {}", kind_of(v))))
}

fn get<'a>(obj: &'a Map<String, Value>, parent: &str, key: &str) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| err(join(parent, key), "missing"))
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

fn only_keys(obj: &Map<String, Value>, parent: &str, allowed: &[&str]) -> Result<(), InputError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(err(join(parent, k), "unknown field")),
        None => Ok(()),
    }
}

fn nonneg(v: &Value, field: &str) -> Result<usize, InputError> {
    let x = parse_int(v, field)?;
    usize::try_from(x).map_err(|_| err(field, format!("{x} is negative")))
}

fn kind<'a>(obj: &'a Map<String, Value>, parent: &str) -> Result<&'a str, InputError> {
    let field = join(parent, "kind");
    get(obj, parent, "kind")?
        .as_str()
        .ok_or_else(|| err(field, "expected a string"))
}

fn parse_ring(v: &Value) -> Result<RingSpec, InputError> {
    let obj = object(v, "ring")?;
    match kind(obj, "ring")? {
        "Z" => {
            only_keys(obj, "ring", &["kind"])?;
            Ok(RingSpec::Z)
        }
        "Zmod" => {
            only_keys(obj, "ring", &["kind", "n"])?;
            let n = parse_int(get(obj, "ring", "n")?, "ring.n")?;
            if n < 2 {
                return Err(err("ring.n", format!("modulus must be at least 2, got {n}")));
            }
            Ok(RingSpec::Zmod(n))
        }
        other => Err(err("ring.kind", format!("unknown ring kind {other:?} (expected \"Z\" or \"Zmod\")"))),
    }
}

fn parse_module(v: &Value, ring: RingSpec) -> Result<ModuleSpec, InputError> {
    let obj = object(v, "module")?;
    match kind(obj, "module")? {
        "invariant_factors" => {
            only_keys(obj, "module", &["kind", "factors", "free_rank"])?;
            let mut factors = Vec::new();
            for (i, x) in array(get(obj, "module", "factors")?, "module.factors")?.iter().enumerate() {
                let field = format!("module.factors[{i}]");
                let f = parse_int(x, &field)?;
                if f < 1 {
                    return Err(err(field, format!("invariant factors must be positive, got {f}")));
                }
                factors.push(f);
            }
            let free_rank = match obj.get("free_rank") {
                Some(x) => nonneg(x, "module.free_rank")?,
                None => 0,
            };
            Ok(ModuleSpec::InvariantFactors { factors, free_rank })
        }
        "presentation" => {
            only_keys(obj, "module", &["kind", "generators", "relations"])?;
            let generators = nonneg(get(obj, "module", "generators")?, "module.generators")?;
            let mut relations = Vec::new();
            for (i, r) in array(get(obj, "module", "relations")?, "module.relations")?.iter().enumerate() {
                let field = format!("module.relations[{i}]");
                let row = array(r, &field)?;
                if row.len() != generators {
                    return Err(err(field, format!("has {} entries, expected {generators}", row.len())));
                }
                let row = row
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_int(x, &format!("module.relations[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                relations.push(row);
            }
            Ok(ModuleSpec::Presentation { generators, relations })
        }
        "prufer" => {
            only_keys(obj, "module", &["kind", "p"])?;
            let p = parse_int(get(obj, "module", "p")?, "module.p")?;
            let prime = p >= 2 && arith::is_prime(p).map_err(|e| err("module.p", e.to_string()))?;
            if !prime {
                return Err(err("module.p", format!("{p} is not prime")));
            }
            if ring != RingSpec::Z {
                return Err(err("ring", "the Prufer group is a module over Z"));
            }
            Ok(ModuleSpec::Prufer { p })
        }
        other => Err(err(
            "module.kind",
            format!("unknown module kind {other:?} (expected \"invariant_factors\", \"presentation\" or \"prufer\")"),
        )),
    }
}

fn parse_caps(v: &Value) -> Result<CapsSpec, InputError> {
    let obj = object(v, "caps")?;
    only_keys(obj, "caps", &["cardinality", "bruteforce"])?;
    let cap = |key: &str| -> Result<Option<u128>, InputError> {
        match obj.get(key) {
            None => Ok(None),
            Some(x) => {
                let field = join("caps", key);
                let c = parse_int(x, &field)?;
                if c < 1 {
                    return Err(err(field, format!("caps must be positive, got {c}")));
                }
                Ok(Some(c as u128))
            }
        }
    };
    Ok(CapsSpec { cardinality: cap("cardinality")?, bruteforce: cap("bruteforce")? })
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let v: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let obj = object(&v, "")?;
        only_keys(obj, "", &["ring", "module", "caps"])?;
        let ring = parse_ring(get(obj, "", "ring")?)?;
        let module = parse_module(get(obj, "", "module")?, ring)?;
        let caps = match obj.get("caps") {
            Some(c) => parse_caps(c)?,
            None => CapsSpec::default(),
        };
        let file = ModuleFile { ring, module, caps };
        file.build()?;
        Ok(file)
    }

    pub fn ring(&self) -> RingDesc {
        match self.ring {
            RingSpec::Z => RingDesc::Integers,
            RingSpec::Zmod(n) => RingDesc::IntegersMod(n),
        }
    }

    pub fn build(&self) -> Result<FgModule, InputError> {
        let ring = self.ring();
        let built = match &self.module {
            ModuleSpec::InvariantFactors { factors, free_rank } => FgModule::from_invariants(ring, factors, *free_rank),
            ModuleSpec::Presentation { generators, relations } => FgModule::normalize(ring, *generators, relations),
            ModuleSpec::Prufer { p } => FgModule::prufer(*p),
        };
        built.map_err(|e| err("module", e.to_string()))
    }

    /// File caps over the defaults, then the environment override.
    pub fn caps(&self, env_cardinality: Option<u128>) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = self.caps.cardinality {
            caps.cardinality = c;
        }
        if let Some(c) = self.caps.bruteforce {
            caps.bruteforce = c;
        }
        if let Some(c) = env_cardinality {
            caps.cardinality = c;
        }
        caps
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        let mut ring = Map::new();
        match self.ring {
            RingSpec::Z => {
                ring.insert("kind".into(), "Z".into());
            }
            RingSpec::Zmod(n) => {
                ring.insert("kind".into(), "Zmod".into());
                ring.insert("n".into(), int_value(n));
            }
        }
        root.insert("ring".into(), Value::Object(ring));
        let mut module = Map::new();
        match &self.module {
            ModuleSpec::InvariantFactors { factors, free_rank } => {
                module.insert("kind".into(), "invariant_factors".into());
                module.insert("factors".into(), factors.iter().map(|&f| int_value(f)).collect());
                module.insert("free_rank".into(), Value::from(*free_rank));
            }
            ModuleSpec::Presentation { generators, relations } => {
                module.insert("kind".into(), "presentation".into());
                module.insert("generators".into(), Value::from(*generators));
                let rows: Vec<Value> =
                    relations.iter().map(|r| r.iter().map(|&x| int_value(x)).collect()).collect();
                module.insert("relations".into(), Value::Array(rows));
            }
            ModuleSpec::Prufer { p } => {
                module.insert("kind".into(), "prufer".into());
                module.insert("p".into(), int_value(*p));
            }
        }
        root.insert("module".into(), Value::Object(module));
        if self.caps != CapsSpec::default() {
            let mut caps = Map::new();
            if let Some(c) = self.caps.cardinality {
                caps.insert("cardinality".into(), int_value(c as Int));
            }
            if let Some(c) = self.caps.bruteforce {
                caps.insert("bruteforce".into(), int_value(c as Int));
            }
            root.insert("caps".into(), Value::Object(caps));
        }
        Value::Object(root)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
    }
}

/// Parses and validates a module description.
pub fn parse_module_file(text: &str) -> Result<FgModule, InputError> {
    ModuleFile::parse(text)?.build()
}

/// `"a,b;c,d"` as coordinate vectors of length `dim`; empty means no generators.
pub fn parse_vectors(text: &str, dim: usize, field: &str) -> Result<Vec<Vec<Int>>, InputError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .enumerate()
        .map(|(i, part)| {
            let v = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<Int>()
                        .map_err(|_| err(format!("{field}[{i}]"), format!("{x:?} is not an integer")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if v.len() != dim {
                return Err(err(format!("{field}[{i}]"), format!("has {} entries, expected {dim}", v.len())));
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_scalar(text: &str, field: &str) -> Result<Int, InputError> {
    text.trim()
        .parse::<Int>()
        .map_err(|_| err(field, format!("{text:?} is not an integer")))
}

/// `D(f)` as its element `f`.
pub fn parse_open(text: &str) -> Result<Int, InputError> {
    let t = text.trim();
    let inner = t
        .strip_prefix("D(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err("--open", format!("{t:?} is not of the form D(f)")))?;
    parse_scalar(inner, "--open")
}
