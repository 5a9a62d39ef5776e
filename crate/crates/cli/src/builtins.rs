use serde_json::{json, Value};

use crate::scenario::{from_value, InputError, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    /// reproduces a worked example
    Paper,
    /// consequence checked on further data
    Derived,
    /// seeded random family
    Random,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Paper => "paper",
            Tag::Derived => "derived",
            Tag::Random => "random",
        }
    }
}

pub struct Builtin {
    pub name: &'static str,
    pub tag: Tag,
    pub scenario: Value,
}

pub fn builtins() -> Vec<Builtin> {
    use Tag::*;
    let b = |name, tag, scenario| Builtin { name, tag, scenario };
    vec![
        b("tate_fundamental_z2", Paper, json!({"kind": "tate", "parameters": {"group": "Z/2", "factors": [0]}})),
        b("weil_qi_inert", Paper, json!({"kind": "weil", "parameters": {"group": "Z/2", "iota": 1, "h": [1]}})),
        b("grunwald_wang", Paper, json!({"kind": "grunwald-wang"})),
        b(
            "building_n2_v1_3",
            Paper,
            json!({"kind": "building", "parameters": {"n": 2, "v1": 1, "v2": 3, "p": 5, "depth": 2}}),
        ),
        b("gm_n5_p2", Paper, json!({"kind": "gm", "parameters": {"N": 5, "p": 2, "m_max": 4}})),
        b("torus_split_gm", Paper, json!({"kind": "torus", "parameters": {"r": 1, "mu": [1]}})),
        b("kappa_nested", Paper, json!({"kind": "kappa", "parameters": {"case": "nested"}})),
        b("tate_fundamental_z6", Derived, json!({"kind": "tate", "parameters": {"group": "Z/6", "factors": [0]}})),
        b(
            "tate_v4_sign",
            Derived,
            json!({"kind": "tate", "parameters": {"group": "(Z/2)^2", "factors": [0],
                "action": [[[1]], [[-1]], [[1]], [[-1]]]}}),
        ),
        b("weil_up_to_8", Derived, json!({"kind": "weil", "parameters": {"max_order": 8}})),
        b(
            "weil_tower_split_qi",
            Derived,
            json!({"kind": "weil", "parameters": {"group": "Z/2", "iota": 1, "h": [], "tower": 2}}),
        ),
        b(
            "building_n1_v1_1",
            Derived,
            json!({"kind": "building", "parameters": {"v1": 1, "v2": 1, "p": 3, "depth": 2}}),
        ),
        b(
            "building_n3_v1_5",
            Derived,
            json!({"kind": "building", "parameters": {"v1": 1, "v2": 5, "p": 3, "depth": 1}}),
        ),
        b(
            "building_n2_v3_1",
            Derived,
            json!({"kind": "building", "parameters": {"v1": 3, "v2": 1, "p": 5, "depth": 1}}),
        ),
        b("gm_n8_p3", Derived, json!({"kind": "gm", "parameters": {"N": 8, "p": 3, "m_max": 4}})),
        b("torus_quadratic", Derived, json!({"kind": "torus", "parameters": {"r": 2, "mu": [1, 0]}})),
        b("kappa_perturbed", Derived, json!({"kind": "kappa", "parameters": {"case": "perturbed"}})),
        b(
            "section2_instances",
            Random,
            json!({"kind": "section2", "parameters": {"instances": 24, "averaged": false}}),
        ),
        b(
            "section2_averaged",
            Random,
            json!({"kind": "section2", "parameters": {"instances": 24, "averaged": true}}),
        ),
        b("kappa_random", Random, json!({"kind": "kappa", "parameters": {"case": "random", "count": 100}})),
    ]
}

/// The builtins of a suite, parsed, with random ones seeded by `seed`.
pub fn suite(name: &str, seed: u64) -> Result<Vec<(&'static str, Scenario)>, InputError> {
    let keep: &dyn Fn(Tag) -> bool = match name {
        "all" => &|_| true,
        "paper" => &|t| t == Tag::Paper,
        "random" => &|t| t == Tag::Random,
        other => {
            return Err(crate::scenario::schema("suite", format!("unknown suite {other:?} (all, paper, random)")))
        }
    };
    builtins()
        .into_iter()
        .filter(|b| keep(b.tag))
        .map(|b| {
            let mut s = from_value(b.scenario)?;
            if b.tag == Tag::Random {
                s.seed = seed;
            }
            Ok((b.name, s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        for b in builtins() {
            from_value(b.scenario.clone()).unwrap_or_else(|e| panic!("{}: {e}", b.name));
        }
        assert_eq!(suite("all", 0).unwrap().len(), builtins().len());
        assert!(suite("bogus", 0).is_err());
    }
}
