use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A report tree. Maps are key-sorted, so serialization is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Null,
    Bool(bool),
    Int(i64),
    Number(f64),
    Text(String),
    List(Vec<ReportValue>),
    Map(BTreeMap<String, ReportValue>),
}

impl From<bool> for ReportValue {
    fn from(v: bool) -> Self {
        ReportValue::Bool(v)
    }
}

impl From<f64> for ReportValue {
    fn from(v: f64) -> Self {
        ReportValue::Number(v)
    }
}

impl From<i64> for ReportValue {
    fn from(v: i64) -> Self {
        ReportValue::Int(v)
    }
}

impl From<u32> for ReportValue {
    fn from(v: u32) -> Self {
        ReportValue::Int(v.into())
    }
}

impl From<usize> for ReportValue {
    fn from(v: usize) -> Self {
        ReportValue::Int(v as i64)
    }
}

impl From<&str> for ReportValue {
    fn from(v: &str) -> Self {
        ReportValue::Text(v.to_string())
    }
}

impl From<String> for ReportValue {
    fn from(v: String) -> Self {
        ReportValue::Text(v)
    }
}

impl<T: Into<ReportValue>> From<Option<T>> for ReportValue {
    fn from(v: Option<T>) -> Self {
        v.map_or(ReportValue::Null, Into::into)
    }
}

impl<T: Into<ReportValue>> From<Vec<T>> for ReportValue {
    fn from(v: Vec<T>) -> Self {
        ReportValue::List(v.into_iter().map(Into::into).collect())
    }
}

impl ReportValue {
    pub fn map() -> Self {
        ReportValue::Map(BTreeMap::new())
    }

    /// Inserts into a map value; panics on other variants.
    pub fn with(mut self, key: &str, value: impl Into<ReportValue>) -> Self {
        self.insert(key, value);
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Into<ReportValue>) {
        match self {
            ReportValue::Map(m) => {
                m.insert(key.to_string(), value.into());
            }
            other => panic!("insert into non-map report value {other:?}"),
        }
    }

    pub fn get(&self, key: &str) -> Option<&ReportValue> {
        match self {
            ReportValue::Map(m) => m.get(key),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            ReportValue::Number(v) => Some(v),
            ReportValue::Int(v) => Some(v as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            ReportValue::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            ReportValue::Text(s) => Some(s),
            _ => None,
        }
    }

    fn write(&self, out: &mut String, indent: usize) {
        let pad = |out: &mut String, k: usize| out.extend(std::iter::repeat_n(' ', k));
        match self {
            ReportValue::Null => out.push_str("null"),
            ReportValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            ReportValue::Int(v) => write!(out, "{v}").unwrap(),
            // 17 significant digits; non-finite values have no JSON form
            ReportValue::Number(v) if v.is_finite() => write!(out, "{v:.16e}").unwrap(),
            ReportValue::Number(_) => out.push_str("null"),
            ReportValue::Text(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
            ReportValue::List(items) if items.is_empty() => out.push_str("[]"),
            ReportValue::List(items) => {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    pad(out, indent + 2);
                    item.write(out, indent + 2);
                    out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push(']');
            }
            ReportValue::Map(m) if m.is_empty() => out.push_str("{}"),
            ReportValue::Map(m) => {
                out.push_str("{\n");
                for (k, (key, item)) in m.iter().enumerate() {
                    pad(out, indent + 2);
                    out.push_str(&serde_json::to_string(key).expect("string serializes"));
                    out.push_str(": ");
                    item.write(out, indent + 2);
                    out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }

    fn from_json(v: serde_json::Value) -> Self {
        use serde_json::Value;
        match v {
            Value::Null => ReportValue::Null,
            Value::Bool(b) => ReportValue::Bool(b),
            Value::Number(n) => match n.as_i64() {
                Some(i) => ReportValue::Int(i),
                None => ReportValue::Number(n.as_f64().unwrap_or(f64::NAN)),
            },
            Value::String(s) => ReportValue::Text(s),
            Value::Array(a) => ReportValue::List(a.into_iter().map(Self::from_json).collect()),
            Value::Object(o) => ReportValue::Map(o.into_iter().map(|(k, v)| (k, Self::from_json(v))).collect()),
        }
    }
}

/// Machine-readable command output.
///
/// Top-level keys: `command`, `inputs`, `result`, `tolerances` and
/// `timing_ms`. Timing is the only field that varies between identical
/// runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    root: ReportValue,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            root: ReportValue::map()
                .with("command", command)
                .with("inputs", ReportValue::map())
                .with("result", ReportValue::map())
                .with("tolerances", ReportValue::map()),
        }
    }

    fn section(&mut self, name: &str) -> &mut ReportValue {
        match &mut self.root {
            ReportValue::Map(m) => m.entry(name.to_string()).or_insert_with(ReportValue::map),
            _ => unreachable!("report root is a map"),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<ReportValue>) -> &mut Self {
        self.section("inputs").insert(key, value);
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<ReportValue>) -> &mut Self {
        self.section("result").insert(key, value);
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.section("tolerances").insert(key, value);
        self
    }

    pub fn set_timing_ms(&mut self, ms: f64) {
        self.root.insert("timing_ms", ms);
    }

    /// The report with the timing field removed, for comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        if let ReportValue::Map(m) = &mut r.root {
            m.remove("timing_ms");
        }
        r
    }

    pub fn root(&self) -> &ReportValue {
        &self.root
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&ReportValue> {
        self.root.get(section)?.get(key)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.root.write(&mut out, 0);
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let root = ReportValue::from_json(v);
        match root.get("command") {
            Some(ReportValue::Text(_)) => Ok(Self { root }),
            _ => Err(Error::MissingKey("command")),
        }
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("norm");
        r.input("p", 2.0)
            .input("group", "similitude")
            .result("value", 0.1 + 0.2)
            .result("ratios", vec![Some(1.0), None, Some(-2.5e-300)])
            .result("count", 32usize)
            .result("nested", ReportValue::map().with("flag", true).with("z", ReportValue::List(vec![])))
            .tolerance("abs", 1e-9);
        r.set_timing_ms(12.5);
        r
    }

    #[test]
    fn round_trip_is_exact() {
        let r = sample();
        let text = r.to_json();
        let back = Report::parse(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn seventeen_digits_and_sorted_keys() {
        let text = sample().to_json();
        assert!(text.contains("\"value\": 3.0000000000000004e-1"));
        let a = text.find("\"count\"").unwrap();
        let b = text.find("\"nested\"").unwrap();
        let c = text.find("\"value\"").unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn timing_is_separable() {
        let mut a = sample();
        let mut b = sample();
        a.set_timing_ms(1.0);
        b.set_timing_ms(2.0);
        assert_ne!(a, b);
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    }

    #[test]
    fn parse_rejects_non_reports() {
        assert!(Report::parse("[1,2]").is_err());
        assert!(Report::parse("{\"command\": 3}").is_err());
        assert!(Report::parse("{").is_err());
    }
}
