// SPDX-License-Identifier: Apache-2.0

//! Text format for DFAOs.
//!
//! ```json
//! {
//!   "base": 2,
//!   "states": ["even", "odd"],
//!   "initial": "even",
//!   "delta": { "even": { "0": "even", "1": "odd" }, "odd": { "0": "odd", "1": "even" } },
//!   "output": { "even": "int:1", "odd": "int:-1" }
//! }
//! ```
//!
//! [`save_dfao`] emits a canonical pretty-printed document: states in
//! index order, digits ascending. Loading a saved file and saving it
//! again reproduces it byte for byte.

use serde_json::{json, Map, Value as Json};
use sha2::{Digest, Sha256};

use super::{validate, Dfao};
use crate::error::{Error, Result};
use crate::value::Value;

pub fn save_dfao(d: &Dfao) -> String {
    let mut delta = Map::new();
    let mut output = Map::new();
    for (s, name) in d.names().iter().enumerate() {
        let mut row = Map::new();
        for digit in 0..d.base() {
            row.insert(
                digit.to_string(),
                Json::String(d.names()[d.step(s, digit)].clone()),
            );
        }
        delta.insert(name.clone(), Json::Object(row));
        output.insert(name.clone(), Json::String(d.output(s).to_string()));
    }
    let doc = json!({
        "base": d.base(),
        "states": d.names(),
        "initial": d.names()[d.initial()],
        "delta": delta,
        "output": output,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json serialization");
    text.push('\n');
    text
}

/// Parses a DFAO document without the leading-zero check.
pub fn parse_dfao(text: &str) -> Result<Dfao> {
    let doc: Json = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("DFAO document must be an object".into()))?;
    let field = |key: &str| {
        obj.get(key)
            .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
    };
    let base = field("base")?
        .as_u64()
        .and_then(|b| u32::try_from(b).ok())
        .ok_or_else(|| Error::Parse("`base` must be a small positive integer".into()))?;
    crate::digits::check_base(base)?;
    let names: Vec<String> = field("states")?
        .as_array()
        .ok_or_else(|| Error::Parse("`states` must be a list".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("state names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let index = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    };
    let initial = index(
        field("initial")?
            .as_str()
            .ok_or_else(|| Error::Parse("`initial` must be a state name".into()))?,
    )?;
    let delta_obj = field("delta")?
        .as_object()
        .ok_or_else(|| Error::Parse("`delta` must be an object".into()))?;
    let output_obj = field("output")?
        .as_object()
        .ok_or_else(|| Error::Parse("`output` must be an object".into()))?;
    for key in delta_obj.keys().chain(output_obj.keys()) {
        index(key)?;
    }
    let mut rows = Vec::with_capacity(names.len());
    let mut outputs = Vec::with_capacity(names.len());
    for name in &names {
        let row_obj = delta_obj
            .get(name)
            .and_then(Json::as_object)
            .ok_or_else(|| Error::MissingTransition {
                state: name.clone(),
                digit: 0,
            })?;
        let mut row: Vec<Option<usize>> = vec![None; base as usize];
        for (digit, target) in row_obj {
            let digit: u32 = digit
                .parse()
                .map_err(|_| Error::Parse(format!("bad digit key `{digit}`")))?;
            if digit >= base {
                return Err(Error::DigitOutOfRange { digit, base });
            }
            let target = target
                .as_str()
                .ok_or_else(|| Error::Parse("transition targets must be state names".into()))?;
            row[digit as usize] = Some(index(target)?);
        }
        let row = row
            .into_iter()
            .enumerate()
            .map(|(digit, t)| {
                t.ok_or_else(|| Error::MissingTransition {
                    state: name.clone(),
                    digit: digit as u32,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        let out = output_obj
            .get(name)
            .and_then(Json::as_str)
            .ok_or_else(|| Error::Parse(format!("missing output for state `{name}`")))?;
        outputs.push(out.parse::<Value>()?);
    }
    Dfao::new(base, names, initial, rows, outputs)
}

/// Parses and validates a DFAO document.
pub fn load_dfao(text: &str) -> Result<Dfao> {
    let d = parse_dfao(text)?;
    validate(&d)?;
    Ok(d)
}

/// SHA-256 of the canonical text form, hex encoded.
pub fn dfao_hash(d: &Dfao) -> String {
    hex::encode(Sha256::digest(save_dfao(d).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_is_bit_exact() {
        for (name, d) in fixtures::registry() {
            let text = save_dfao(&d);
            let back = parse_dfao(&text).unwrap();
            assert_eq!(back, d, "{name}");
            assert_eq!(save_dfao(&back), text, "{name}");
        }
    }

    #[test]
    fn parses_documented_example() {
        let text = r#"{
          "base": 2,
          "states": ["even", "odd"],
          "initial": "even",
          "delta": { "even": { "1": "odd", "0": "even" }, "odd": { "0": "odd", "1": "even" } },
          "output": { "even": "int:1", "odd": "zeta:2,1" }
        }"#;
        let d = load_dfao(text).unwrap();
        assert_eq!(d.eval(7), &Value::MINUS_ONE);
        assert_eq!(d.eval(5), &Value::ONE);
        let canonical = save_dfao(&d);
        assert!(canonical.contains("\"odd\": \"int:-1\""));
        assert_eq!(save_dfao(&load_dfao(&canonical).unwrap()), canonical);
    }

    #[test]
    fn load_errors() {
        let missing = r#"{"base": 2, "states": ["a"], "initial": "a",
            "delta": {"a": {"0": "a"}}, "output": {"a": "int:1"}}"#;
        assert!(matches!(
            load_dfao(missing),
            Err(Error::MissingTransition { digit: 1, .. })
        ));
        let bad_digit = r#"{"base": 2, "states": ["a"], "initial": "a",
            "delta": {"a": {"0": "a", "1": "a", "2": "a"}}, "output": {"a": "int:1"}}"#;
        assert!(matches!(
            load_dfao(bad_digit),
            Err(Error::DigitOutOfRange { digit: 2, base: 2 })
        ));
        let unknown = r#"{"base": 2, "states": ["a"], "initial": "b",
            "delta": {"a": {"0": "a", "1": "a"}}, "output": {"a": "int:1"}}"#;
        assert!(matches!(load_dfao(unknown), Err(Error::UnknownState(_))));
        let variant = save_dfao(&fixtures::leading_zero_variant());
        assert!(matches!(
            load_dfao(&variant),
            Err(Error::LeadingZeroVariance { .. })
        ));
        assert!(matches!(load_dfao("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn hash_is_stable() {
        let d = fixtures::power_indicator(2);
        assert_eq!(dfao_hash(&d), dfao_hash(&parse_dfao(&save_dfao(&d)).unwrap()));
        assert_ne!(dfao_hash(&d), dfao_hash(&fixtures::power_indicator(3)));
    }
}
