//! Variety preset files.
//!
//! ```json
//! {"name": "blowup-p3", "basis": ["L", "E"],
//!  "triple": {"LLL": "1", "EEE": "1"}, "H": {"L": "2", "E": "-1"},
//!  "lattice": ["7", "1", "1/2", "1/6"],
//!  "nef_cone": [{"L": "1", "E": "0"}, {"L": "1", "E": "-1"}]}
//! ```
//!
//! Triple entries are keyed by any ordering of three basis names; missing
//! entries are zero. `nef_cone` may be omitted for Picard rank one, where the
//! generator is taken as the nef ray.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use tiltwall_core::{parse_rational, DivisorClass, Lattice, Rational, TripleForm, Variety};

use crate::error::CliError;

const BLOWUP_P3: &str = include_str!("../presets/blowup-p3.json");
const P3: &str = include_str!("../presets/p3.json");

pub const SHIPPED: [(&str, &str); 2] = [("blowup-p3", BLOWUP_P3), ("p3", P3)];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetFile {
    name: String,
    basis: Vec<String>,
    triple: BTreeMap<String, String>,
    #[serde(rename = "H")]
    polarization: BTreeMap<String, String>,
    lattice: [String; 4],
    #[serde(default)]
    nef_cone: Option<Vec<BTreeMap<String, String>>>,
}

fn invalid(why: impl Into<String>) -> CliError {
    CliError::Preset(why.into())
}

fn rational(field: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| invalid(format!("{field}: {e}")))
}

fn divisor(basis: &[String], entries: &BTreeMap<String, String>) -> Result<DivisorClass, CliError> {
    let mut coeffs = [Rational::from_integer(0.into()), Rational::from_integer(0.into())];
    for (name, value) in entries {
        let idx = basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| invalid(format!("unknown basis element {name:?}")))?;
        coeffs[idx] = rational(name, value)?;
    }
    let [l, e] = coeffs;
    Ok(DivisorClass::new(l, e))
}

/// Splits a key like `"LEL"` into basis names and counts the second generator.
fn e_count(basis: &[String], key: &str) -> Result<usize, CliError> {
    let mut rest = key;
    let mut count = 0;
    let mut factors = 0;
    while !rest.is_empty() {
        let (idx, name) = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| rest.starts_with(b.as_str()))
            .max_by_key(|(_, b)| b.len())
            .ok_or_else(|| invalid(format!("triple key {key:?} is not a product of basis names")))?;
        count += idx;
        factors += 1;
        rest = &rest[name.len()..];
    }
    if factors != 3 {
        return Err(invalid(format!("triple key {key:?} must name three factors")));
    }
    Ok(count)
}

pub fn parse_preset(text: &str) -> Result<Variety, CliError> {
    let file: PresetFile =
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed preset JSON: {e}")))?;
    let basis = file.basis;
    if basis.is_empty() || basis.len() > 2 {
        return Err(invalid("basis must have one or two generators"));
    }
    if basis.iter().any(|b| b.is_empty() || !b.chars().all(|c| c.is_ascii_alphabetic())) {
        return Err(invalid("basis names must be nonempty and alphabetic"));
    }
    if basis.len() == 2 && basis[0] == basis[1] {
        return Err(invalid("basis names must be distinct"));
    }

    let mut table: [Option<Rational>; 4] = Default::default();
    for (key, value) in &file.triple {
        let k = e_count(&basis, key)?;
        let value = rational(key, value)?;
        match &table[k] {
            Some(prev) if *prev != value => {
                return Err(invalid(format!("triple entry {key:?} contradicts a permutation of it")))
            }
            _ => table[k] = Some(value),
        }
    }
    let table = table.map(|entry| entry.unwrap_or_else(|| Rational::from_integer(0.into())));

    let [d0, d1, d2, d3] = &file.lattice;
    let lattice = Lattice::new([
        rational("lattice", d0)?,
        rational("lattice", d1)?,
        rational("lattice", d2)?,
        rational("lattice", d3)?,
    ])
    .map_err(|e| invalid(e.to_string()))?;

    let polarization = divisor(&basis, &file.polarization)?;
    let nef_cone = match file.nef_cone {
        Some(rays) => rays
            .iter()
            .map(|r| divisor(&basis, r))
            .collect::<Result<Vec<_>, _>>()?,
        None if basis.len() == 1 => vec![DivisorClass::from_ints(1, 0)],
        None => return Err(invalid("nef_cone is required for Picard rank two")),
    };

    Variety::new(file.name, basis, TripleForm::new(table), polarization, lattice, nef_cone)
        .map_err(|e| invalid(e.to_string()))
}

/// A shipped preset name, or a path to a preset file.
pub fn load(name_or_path: &str) -> Result<Variety, CliError> {
    if let Some((_, text)) = SHIPPED.iter().find(|(name, _)| *name == name_or_path) {
        return parse_preset(text);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown variety {name_or_path:?}; shipped presets are blowup-p3 and p3, or pass a file path"
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_preset(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_presets_match_builtins() {
        assert_eq!(load("blowup-p3").unwrap(), Variety::blowup_p3());
        assert_eq!(load("p3").unwrap(), Variety::p3());
    }

    #[test]
    fn permuted_triple_keys_are_accepted() {
        let text = BLOWUP_P3.replace("\"LLE\": \"0\"", "\"ELL\": \"0\"");
        assert_eq!(parse_preset(&text).unwrap(), Variety::blowup_p3());
    }

    #[test]
    fn contradictory_permutations_are_rejected() {
        let text = BLOWUP_P3.replace("\"LEE\": \"0\"", "\"LEE\": \"0\", \"EEL\": \"2\"");
        assert!(matches!(parse_preset(&text), Err(CliError::Preset(_))));
    }

    #[test]
    fn non_ample_polarization_is_rejected() {
        let text = BLOWUP_P3.replace("\"H\": { \"L\": \"2\", \"E\": \"-1\" }", "\"H\": { \"L\": \"1\", \"E\": \"0\" }");
        assert!(matches!(parse_preset(&text), Err(CliError::Preset(_))));
    }

    #[test]
    fn negative_sign_convention_breaks_the_guard() {
        // E³ = -1 would give H³ = 9; the shipped data must give 7.
        let flipped = parse_preset(&BLOWUP_P3.replace("\"EEE\": \"1\"", "\"EEE\": \"-1\"")).unwrap();
        assert_eq!(flipped.h_cubed(), Rational::from_integer(9.into()));
        assert_eq!(load("blowup-p3").unwrap().h_cubed(), Rational::from_integer(7.into()));
    }

    #[test]
    fn rank_two_without_cone_is_rejected() {
        let text = r#"{"name":"x","basis":["L","E"],"triple":{"LLL":"1","EEE":"1"},
            "H":{"L":"2","E":"-1"},"lattice":["7","1","1/2","1/6"]}"#;
        assert!(matches!(parse_preset(text), Err(CliError::Preset(_))));
    }

    #[test]
    fn unknown_name_is_usage_error() {
        assert!(matches!(load("no-such-variety"), Err(CliError::Usage(_))));
    }
}
