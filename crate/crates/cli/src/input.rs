//! JSON input formats.
//!
//! A code file looks like
//!
//! ```json
//! {"n": 3, "T": [[1, 2], [1, 3]], "pi": [2, 1], "one_based": true}
//! ```
//!
//! with optional `"Z"` (explicit Z supports, same convention as `"T"`),
//! `"pi"` (1-based permutation), and the golden-file fields `"m"`, `"w"`
//! and `"Z_expected"`.

use serde::{Deserialize, Serialize};

use qccdts::dts::{DtsFamily, SupportSet};
use qccdts::reflect::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeInput {
    pub n: usize,
    #[serde(rename = "T")]
    pub t: Vec<Vec<u32>>,
    #[serde(rename = "Z", default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one_based: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(
        rename = "Z_expected",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub z_expected: Option<Vec<Vec<u32>>>,
}

/// DTS family interchange format, also the output of `search`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub one_based: bool,
    pub sets: Vec<Vec<u32>>,
}

impl FamilyJson {
    pub fn from_family(family: &DtsFamily, one_based: bool) -> Self {
        let sets = family
            .sets()
            .iter()
            .map(|s| {
                if one_based {
                    s.to_one_based()
                } else {
                    s.elements().to_vec()
                }
            })
            .collect();
        Self { one_based, sets }
    }
}

/// A validated code input: X family, optional explicit Z family, optional
/// permutation.
#[derive(Clone, Debug)]
pub struct ParsedCode {
    pub n: usize,
    /// Convention the sets were read in.
    pub one_based: bool,
    pub x_family: DtsFamily,
    pub z_family: Option<Vec<SupportSet>>,
    pub pi: Option<Permutation>,
    pub m: Option<u32>,
    pub w: Option<usize>,
    pub z_expected: Option<Vec<SupportSet>>,
}

fn convert(sets: &[Vec<u32>], one_based: bool) -> Result<Vec<SupportSet>, String> {
    sets.iter()
        .map(|s| {
            if one_based {
                SupportSet::from_one_based(s.iter().copied())
            } else {
                SupportSet::new(s.iter().copied())
            }
            .map_err(|e| e.to_string())
        })
        .collect()
}

/// Parses and validates a code file. `convention` overrides the file's
/// `one_based` field; with neither, sets are read as 1-based.
pub fn parse_code(text: &str, convention: Option<bool>) -> Result<ParsedCode, String> {
    let raw: CodeInput = serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let one_based = convention.or(raw.one_based).unwrap_or(true);
    if raw.t.is_empty() {
        return Err("\"T\" must list at least one set".into());
    }
    if raw.t.iter().any(Vec::is_empty) {
        return Err("every set in \"T\" must be nonempty".into());
    }
    if raw.n != raw.t.len() + 1 {
        return Err(format!(
            "n = {} but {} sets given; a systematic code needs n = sets + 1",
            raw.n,
            raw.t.len()
        ));
    }
    let x_sets = convert(&raw.t, one_based)?;
    let x_family = DtsFamily::new(x_sets).map_err(|e| e.to_string())?;
    let z_family = match &raw.z {
        Some(z) => {
            if z.len() != raw.t.len() {
                return Err(format!(
                    "\"Z\" has {} sets, \"T\" has {}",
                    z.len(),
                    raw.t.len()
                ));
            }
            Some(convert(z, one_based)?)
        }
        None => None,
    };
    let z_expected = raw
        .z_expected
        .as_ref()
        .map(|z| convert(z, one_based))
        .transpose()?;
    let pi = raw
        .pi
        .as_ref()
        .map(|p| {
            if p.len() != raw.t.len() {
                return Err(format!(
                    "\"pi\" has {} entries, expected {}",
                    p.len(),
                    raw.t.len()
                ));
            }
            Permutation::from_one_based(p).map_err(|e| e.to_string())
        })
        .transpose()?;
    Ok(ParsedCode {
        n: raw.n,
        one_based,
        x_family,
        z_family,
        pi,
        m: raw.m,
        w: raw.w,
        z_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_file_parses() {
        let p = parse_code(
            r#"{"n": 3, "T": [[1, 2], [1, 3]], "one_based": true}"#,
            None,
        )
        .unwrap();
        assert_eq!(p.x_family.sets()[1].elements(), &[0, 2]);
        assert!(p.pi.is_none());
    }

    #[test]
    fn flag_overrides_file_convention() {
        let text = r#"{"n": 3, "T": [[0, 1], [0, 2]], "one_based": true}"#;
        assert!(parse_code(text, None).is_err());
        let p = parse_code(text, Some(false)).unwrap();
        assert_eq!(p.x_family.sets()[0].elements(), &[0, 1]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(parse_code("{", None)
            .unwrap_err()
            .starts_with("malformed JSON"));
        assert!(parse_code(r#"{"n": 1, "T": []}"#, None).is_err());
        assert!(parse_code(r#"{"n": 3, "T": [[1, 2]]}"#, None).is_err());
        assert!(parse_code(r#"{"n": 3, "T": [[1, 2], [1, 3]], "pi": [1, 1]}"#, None).is_err());
        assert!(parse_code(r#"{"n": 3, "T": [[1, 2], [1, 3, 4]]}"#, None).is_err());
    }

    #[test]
    fn golden_fields_round_trip() {
        let text =
            r#"{"n":3,"m":2,"w":2,"T":[[1,2],[1,3]],"Z_expected":[[1,3],[2,3]],"one_based":true}"#;
        let raw: CodeInput = serde_json::from_str(text).unwrap();
        let back: CodeInput = serde_json::from_str(&serde_json::to_string(&raw).unwrap()).unwrap();
        assert_eq!(raw, back);
        let p = parse_code(text, None).unwrap();
        assert_eq!(p.m, Some(2));
        assert_eq!(p.z_expected.unwrap()[1].elements(), &[1, 2]);
    }
}
