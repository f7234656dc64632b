//! Group files: JSON objects `{name, degree, generators, declared_order,
//! provenance}` with 0-based image arrays.

use std::fmt;
use std::path::{Path, PathBuf};

use blockcheck_core::permgroup::{schreier_sims, PermGroup, Permutation};
use serde_json::Value;

/// A parse or validation failure, located in the file where possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: PathBuf,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.path.display())?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
            if let Some(col) = self.column {
                write!(f, ":{col}")?;
            }
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct GroupFile {
    pub path: PathBuf,
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub declared_order: String,
    pub provenance: String,
    pub group: PermGroup,
}

/// Byte offsets of the opening bracket of each element of the array stored
/// under `key` at the top level of the object.
fn array_element_offsets(text: &str, key: &str) -> Vec<usize> {
    let Some(start) = key_offset(text, key) else { return Vec::new() };
    let bytes = text.as_bytes();
    let mut i = start;
    while i < bytes.len() && bytes[i] != b'[' {
        i += 1;
    }
    let mut depth = 0usize;
    let mut out = Vec::new();
    while i < bytes.len() {
        match bytes[i] {
            b'[' => {
                depth += 1;
                if depth == 2 {
                    out.push(i);
                }
            }
            b']' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
        i += 1;
    }
    out
}

fn key_offset(text: &str, key: &str) -> Option<usize> {
    text.find(&format!("\"{key}\""))
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

pub fn parse_group_file(path: &Path) -> Result<GroupFile, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: None,
        column: None,
        message: format!("cannot read file: {e}"),
    })?;
    parse_group_text(path, &text)
}

pub fn parse_group_text(path: &Path, text: &str) -> Result<GroupFile, ParseError> {
    let at = |offset: Option<usize>, message: String| {
        let (line, column) = offset.map(|o| line_col(text, o)).map_or((None, None), |(l, c)| (Some(l), Some(c)));
        ParseError { path: path.to_path_buf(), line, column, message }
    };
    let at_key = |key: &str, message: String| at(key_offset(text, key), message);

    let v: Value = serde_json::from_str(text).map_err(|e| ParseError {
        path: path.to_path_buf(),
        line: Some(e.line()),
        column: Some(e.column()),
        message: format!("malformed JSON: {e}"),
    })?;
    let obj = v.as_object().ok_or_else(|| at(Some(0), "expected a JSON object".into()))?;

    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| at_key("name", "`name` must be a nonempty string".into()))?
        .to_string();
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| at_key("degree", "`degree` must be a positive integer".into()))? as usize;
    let declared_order = match obj.get("declared_order") {
        Some(Value::String(s)) if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => s.clone(),
        Some(Value::Number(n)) if n.is_u64() => n.to_string(),
        _ => return Err(at_key("declared_order", "`declared_order` must be a decimal string".into())),
    };
    let provenance = obj
        .get("provenance")
        .and_then(Value::as_str)
        .ok_or_else(|| at_key("provenance", "`provenance` must be a string".into()))?
        .to_string();
    let gens_value = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| at_key("generators", "`generators` must be an array of image arrays".into()))?;

    let offsets = array_element_offsets(text, "generators");
    let mut generators = Vec::with_capacity(gens_value.len());
    for (i, g) in gens_value.iter().enumerate() {
        let here = offsets.get(i).copied().or_else(|| key_offset(text, "generators"));
        let images = g
            .as_array()
            .ok_or_else(|| at(here, format!("generator {i} is not an array")))?;
        if images.len() != degree {
            return Err(at(here, format!("generator {i} has {} images, degree is {degree}", images.len())));
        }
        let images: Vec<u32> = images
            .iter()
            .map(|x| x.as_u64().filter(|&x| (x as usize) < degree).map(|x| x as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| at(here, format!("generator {i} has an image outside 0..{degree}")))?;
        let perm = Permutation::from_images(images).map_err(|e| at(here, format!("generator {i} is not a bijection ({e})")))?;
        generators.push(perm);
    }
    let group = if generators.is_empty() {
        PermGroup::trivial(degree)
    } else {
        schreier_sims(&generators).map_err(|e| at_key("generators", e.to_string()))?
    };
    let order = group.order().to_string();
    if order != declared_order {
        return Err(at_key("declared_order", format!("declared order {declared_order} but the generators give {order}")));
    }
    Ok(GroupFile { path: path.to_path_buf(), name, degree, generators, declared_order, provenance, group })
}
