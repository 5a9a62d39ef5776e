use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const KINDS: [&str; 8] = ["tate", "weil", "section2", "grunwald-wang", "building", "gm", "torus", "kappa"];

#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("schema error in {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("unsupported kind {0:?} (expected one of {kinds})", kinds = KINDS.join(", "))]
    UnsupportedKind(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

pub fn schema(path: &str, msg: impl Into<String>) -> InputError {
    InputError::Schema { path: path.to_string(), msg: msg.into() }
}

/// A group given by name (`Z/n`, `(Z/2)^k`, `S3`, `Dn`, `Q8`) or by its table.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TateParams {
    pub group: GroupSpec,
    /// torsion orders of the generators, 0 for Z
    pub factors: Vec<i64>,
    /// one row-major matrix per group element; trivial action when absent
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WeilParams {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub iota: Option<usize>,
    /// generators of H
    #[serde(default)]
    pub h: Vec<usize>,
    /// run every datum on the test groups of order at most this
    #[serde(default)]
    pub max_order: Option<usize>,
    /// also check transition vanishing for `G × Z/s` over the datum
    #[serde(default)]
    pub tower: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleParams {
    /// one configuration, or all six when absent
    #[serde(default)]
    pub config: Option<lrdesk::gerbe::LocalConfig>,
    pub instances: usize,
    #[serde(default)]
    pub averaged: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingParams {
    #[serde(default)]
    pub n: Option<usize>,
    pub v1: i64,
    pub v2: i64,
    pub p: u64,
    /// decimal rational; `−p` when absent
    #[serde(default)]
    pub lambda: Option<String>,
    #[serde(default)]
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GmParams {
    #[serde(rename = "N", alias = "n")]
    pub n: u64,
    pub p: u64,
    pub m_max: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TorusParams {
    pub r: usize,
    pub mu: Vec<i64>,
    /// claimed valuation of ε; the translation vector when absent
    #[serde(default)]
    pub eps_valuation: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum KappaCase {
    Nested,
    Perturbed,
    Random,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct KappaParams {
    pub case: KappaCase,
    /// number of random data
    #[serde(default)]
    pub count: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "parameters", rename_all = "kebab-case")]
pub enum Kind {
    Tate(TateParams),
    Weil(WeilParams),
    #[serde(rename = "section2")]
    Cocycle(CocycleParams),
    GrunwaldWang,
    Building(BuildingParams),
    Gm(GmParams),
    Torus(TorusParams),
    Kappa(KappaParams),
}

#[derive(Clone, Debug, Serialize)]
pub struct Scenario {
    #[serde(flatten)]
    pub kind: Kind,
    pub seed: u64,
}

impl Scenario {
    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("scenario serializes")
    }
}

fn params<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| schema("parameters", e.to_string()))
}

pub fn parse(text: &str) -> Result<Scenario, InputError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| InputError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
    from_value(v)
}

pub fn from_value(v: Value) -> Result<Scenario, InputError> {
    let Value::Object(mut obj) = v else {
        return Err(schema("$", "scenario must be an object"));
    };
    if let Some(k) = obj.keys().find(|k| !["kind", "parameters", "seed"].contains(&k.as_str())) {
        return Err(schema(k, "unknown field"));
    }
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(schema("kind", "must be a string")),
        None => return Err(schema("kind", "missing")),
    };
    let seed = match obj.remove("seed") {
        None => 0,
        Some(v) => v.as_u64().ok_or_else(|| schema("seed", "must be a nonnegative integer"))?,
    };
    let p = obj.remove("parameters").unwrap_or(Value::Object(Default::default()));
    let kind = match kind.as_str() {
        "tate" => Kind::Tate(params(p)?),
        "weil" => Kind::Weil(params(p)?),
        "section2" => Kind::Cocycle(params(p)?),
        "grunwald-wang" => match &p {
            Value::Object(m) if m.is_empty() => Kind::GrunwaldWang,
            Value::Null => Kind::GrunwaldWang,
            _ => return Err(schema("parameters", "grunwald-wang takes no parameters")),
        },
        "building" => Kind::Building(params(p)?),
        "gm" => Kind::Gm(params(p)?),
        "torus" => Kind::Torus(params(p)?),
        "kappa" => Kind::Kappa(params(p)?),
        other => return Err(InputError::UnsupportedKind(other.to_string())),
    };
    Ok(Scenario { kind, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_echoes() {
        let s = parse(r#"{"kind": "gm", "parameters": {"N": 5, "p": 2, "m_max": 4}}"#).unwrap();
        assert_eq!(s.echo()["kind"], "gm");
        let back = from_value(s.echo()).unwrap();
        assert_eq!(back.echo(), s.echo());
        let gw = parse(r#"{"kind": "grunwald-wang"}"#).unwrap();
        assert_eq!(gw.echo(), from_value(gw.echo()).unwrap().echo());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("{"), Err(InputError::Parse { .. })));
        assert!(matches!(parse(r#"{"kind": "moduli"}"#), Err(InputError::UnsupportedKind(_))));
        assert!(matches!(parse(r#"{"kind": "gm", "parameters": {"N": 5}}"#), Err(InputError::Schema { .. })));
        assert!(matches!(
            parse(r#"{"kind": "gm", "parameters": {"N": 5, "p": 2, "m_max": 4, "q": 1}}"#),
            Err(InputError::Schema { .. })
        ));
        assert!(matches!(parse(r#"{"kind": "gm", "extra": 1}"#), Err(InputError::Schema { .. })));
    }
}
