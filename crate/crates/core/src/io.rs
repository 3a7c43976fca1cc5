//! Arrangement input files.
//!
//! ```text
//! { "dim": 2,
//!   "hyperplanes": [[-1, 1, "-1/2"], [1, 1, "-1/2"]],
//!   "flag": {"base": [0, 0], "basis": [[1, 0], [0, 1]]},
//!   "weights": ["2", "1/3"] }
//! ```
//!
//! Each hyperplane row is `[a_1, ..., a_l, b]` for `a . x + b = 0`.
//! Coefficients are JSON integers or `"p/q"` strings; bare `p/q` tokens are
//! quoted before parsing. Errors about a hyperplane carry the line it starts on.

use std::fmt;
use std::path::Path;

use serde_json::Value;

use crate::flag::{FlagError, OrientedFlag};
use crate::geometry::{Arrangement, GeometryError, Hyperplane};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: Option<usize>,
    pub message: String,
}

impl InputError {
    fn new(line: Option<usize>, message: impl Into<String>) -> Self {
        InputError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone)]
pub struct InputSpec {
    pub arrangement: Arrangement,
    pub flag: Option<OrientedFlag>,
    pub weights: Option<Vec<Rational>>,
}

/// Quotes bare `p/q` tokens outside strings. Newlines are untouched, so line
/// numbers survive.
fn quote_fractions(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '"' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                if chars[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            i = (i + 1).min(chars.len());
            out.extend(&chars[start..i]);
            continue;
        }
        if c == '-' || c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || "-+./".contains(chars[i])) {
                i += 1;
            }
            let tok: String = chars[start..i].iter().collect();
            if tok.contains('/') {
                out.push('"');
                out.push_str(&tok);
                out.push('"');
            } else {
                out.push_str(&tok);
            }
            continue;
        }
        out.push(c);
        i += 1;
    }
    out
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].matches('\n').count() + 1
}

/// Start line of each element of the top-level array under `key`.
fn element_lines(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let Some(k) = text.find(&needle) else {
        return Vec::new();
    };
    let mut lines = Vec::new();
    let mut depth = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    let mut expecting = false;
    for (off, c) in text[k + needle.len()..].char_indices() {
        let pos = k + needle.len() + off;
        if in_str {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_str = false;
            }
            continue;
        }
        match c {
            '"' => {
                if depth == 1 && expecting {
                    lines.push(line_of(text, pos));
                    expecting = false;
                }
                in_str = true;
            }
            '[' | '{' => {
                depth += 1;
                if depth == 1 {
                    expecting = true;
                } else if depth == 2 && expecting {
                    lines.push(line_of(text, pos));
                    expecting = false;
                }
            }
            ']' | '}' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            ',' if depth == 1 => expecting = true,
            c if depth == 1 && expecting && !c.is_whitespace() => {
                lines.push(line_of(text, pos));
                expecting = false;
            }
            _ => {}
        }
    }
    lines
}

fn coefficient(v: &Value, line: Option<usize>, what: &str) -> Result<Rational, InputError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(InputError::new(
                line,
                format!("{what}: `{n}` is not an integer; write it as a \"p/q\" string"),
            )),
        },
        Value::String(s) => parse_rational(s).map_err(|e| InputError::new(line, format!("{what}: {e}"))),
        other => Err(InputError::new(line, format!("{what}: expected a number, got {other}"))),
    }
}

fn vector(v: &Value, len: usize, line: Option<usize>, what: &str) -> Result<Vec<Rational>, InputError> {
    let arr = v
        .as_array()
        .ok_or_else(|| InputError::new(line, format!("{what}: expected an array")))?;
    if arr.len() != len {
        return Err(InputError::new(
            line,
            format!("{what}: expected {len} entries, got {}", arr.len()),
        ));
    }
    arr.iter().map(|x| coefficient(x, line, what)).collect()
}

fn parse_json(text: &str) -> Result<(String, Value), InputError> {
    let quoted = quote_fractions(text);
    let value = serde_json::from_str(&quoted)
        .map_err(|e| InputError::new(Some(e.line()), format!("invalid document: {e}")))?;
    Ok((quoted, value))
}

fn flag_from_value(v: &Value, dim: usize, line: Option<usize>) -> Result<OrientedFlag, InputError> {
    let base = vector(&v["base"], dim, line, "flag base")?;
    let rows = v["basis"]
        .as_array()
        .ok_or_else(|| InputError::new(line, "flag basis: expected an array of vectors"))?;
    if rows.len() != dim {
        return Err(InputError::new(
            line,
            format!("flag basis: expected {dim} vectors, got {}", rows.len()),
        ));
    }
    let basis = rows
        .iter()
        .map(|r| vector(r, dim, line, "flag basis"))
        .collect::<Result<Vec<_>, _>>()?;
    OrientedFlag::new(base, basis).map_err(|e: FlagError| InputError::new(line, e.to_string()))
}

pub fn parse_input(text: &str) -> Result<InputSpec, InputError> {
    let (quoted, doc) = parse_json(text)?;
    let dim = doc["dim"]
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| InputError::new(None, "`dim` must be a positive integer"))? as usize;
    let rows = doc["hyperplanes"]
        .as_array()
        .ok_or_else(|| InputError::new(None, "`hyperplanes` must be an array"))?;
    let lines = element_lines(&quoted, "hyperplanes");
    let line = |i: usize| lines.get(i).copied();
    let mut hs = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let what = format!("hyperplane {}", i + 1);
        let mut v = vector(row, dim + 1, line(i), &what)?;
        let offset = v.pop().expect("dim + 1 >= 2 entries");
        hs.push(Hyperplane::new(v, offset));
    }
    let arrangement = Arrangement::new(dim, hs).map_err(|e| match e {
        GeometryError::ZeroNormal(i) => InputError::new(line(i - 1), e.to_string()),
        GeometryError::Duplicate { second, .. } => InputError::new(line(second - 1), e.to_string()),
        other => InputError::new(None, other.to_string()),
    })?;
    let flag_line = quoted.find("\"flag\"").map(|o| line_of(&quoted, o));
    let flag = match &doc["flag"] {
        Value::Null => None,
        v => Some(flag_from_value(v, dim, flag_line)?),
    };
    let weights = match &doc["weights"] {
        Value::Null => None,
        v => {
            let wl = quoted.find("\"weights\"").map(|o| line_of(&quoted, o));
            Some(parse_weight_values(v, arrangement.len(), wl)?)
        }
    };
    Ok(InputSpec {
        arrangement,
        flag,
        weights,
    })
}

fn parse_weight_values(v: &Value, n: usize, line: Option<usize>) -> Result<Vec<Rational>, InputError> {
    let w = vector(v, n, line, "weights")?;
    if let Some(i) = w.iter().position(|x| *x == Rational::from_integer(0.into())) {
        return Err(InputError::new(line, format!("weights: q{} is zero", i + 1)));
    }
    Ok(w)
}

pub fn read_input(path: &Path) -> Result<InputSpec, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(None, format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

/// A flag document: either the flag object itself or a document with a `flag` key.
pub fn parse_flag(text: &str, dim: usize) -> Result<OrientedFlag, InputError> {
    let (_, doc) = parse_json(text)?;
    let v = if doc.get("flag").is_some() { &doc["flag"] } else { &doc };
    flag_from_value(v, dim, None)
}

pub fn read_flag(path: &Path, dim: usize) -> Result<OrientedFlag, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(None, format!("cannot read {}: {e}", path.display())))?;
    parse_flag(&text, dim)
}

/// The flag in the input format, rationals as strings.
pub fn flag_to_json(flag: &OrientedFlag) -> String {
    let vec = |v: &[Rational]| -> String {
        let items: Vec<String> = v.iter().map(|x| format!("\"{x}\"")).collect();
        format!("[{}]", items.join(", "))
    };
    let basis: Vec<String> = flag.basis().iter().map(|v| vec(v)).collect();
    format!("{{\"base\": {}, \"basis\": [{}]}}", vec(flag.base()), basis.join(", "))
}

/// A comma-separated list of rationals, e.g. `2,-1,1/3`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, InputError> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| InputError::new(None, e.to_string())))
        .collect()
}
