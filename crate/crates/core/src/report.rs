//! Command reports: human-readable text plus line-oriented `key = value`
//! fields for the structured format.

use std::fmt::Display;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub text: Vec<String>,
    pub fields: Vec<(String, String)>,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render_text(&self) -> String {
        let mut s = self.text.join("\n");
        s.push('\n');
        s
    }

    pub fn render_structured(&self) -> String {
        self.fields.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// Parses structured output back into its fields.
pub fn parse_structured(text: &str) -> Result<Vec<(String, String)>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_once(" = ")
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("not a `key = value` line: {l}"))
        })
        .collect()
}

/// `(a, b, c)`.
pub fn tuple<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Inverse of [`tuple`] for integers.
pub fn parse_tuple(s: &str) -> Option<Vec<i64>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_roundtrip() {
        let mut r = Report::default();
        r.field("h", tuple(&[1, 3, 3]));
        r.field("d1.0.0", "-q1 + q1^-1");
        let back = parse_structured(&r.render_structured()).unwrap();
        assert_eq!(back, r.fields);
        assert_eq!(parse_tuple(r.get("h").unwrap()), Some(vec![1, 3, 3]));
        assert_eq!(parse_tuple("()"), Some(vec![]));
        assert!(parse_structured("oops").is_err());
    }
}
