use std::fmt::Write;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "table" => Some(Format::Table),
            _ => None,
        }
    }
}

/// The result of one command. Keys in `results` are sorted, so rendering is
/// deterministic once `elapsed_ms` is left out.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub results: Value,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>, ok: bool, results: Value) -> Self {
        Report {
            command: command.into(),
            ok,
            results,
            notes: Vec::new(),
            warnings: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn with_notes<I: IntoIterator<Item = S>, S: Into<String>>(mut self, notes: I) -> Self {
        self.notes.extend(notes.into_iter().map(Into::into));
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("ok".into(), Value::Bool(self.ok));
        m.insert("results".into(), self.results.clone());
        if !self.notes.is_empty() {
            m.insert("notes".into(), self.notes.clone().into());
        }
        if !self.warnings.is_empty() {
            m.insert("warnings".into(), self.warnings.clone().into());
        }
        if let Some(ms) = self.elapsed_ms {
            m.insert("elapsed_ms".into(), Value::from(ms as u64));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => self.to_table(),
        }
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "ok: {}", self.ok).unwrap();
        flatten("", &self.results, &mut out);
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed_ms: {ms}").unwrap();
        }
        out
    }
}

/// Objects become dotted paths; arrays of scalars stay on one line.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array() && !is_flat(x)) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => writeln!(out, "{prefix}: {v}").unwrap(),
    }
}

fn is_flat(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_rendering() {
        let r = Report::new("theta", true, json!({"bijective": true, "levels": [8, 4], "classes": [{"size": 1}]}));
        let t = r.render(Format::Table);
        assert!(t.contains("bijective: true\n"));
        assert!(t.contains("levels: [8,4]\n"));
        assert!(t.contains("classes.0.size: 1\n"));
    }

    #[test]
    fn json_omits_timing_when_absent() {
        let mut r = Report::new("h1", true, json!({}));
        assert!(!r.render(Format::Json).contains("elapsed_ms"));
        r.elapsed_ms = Some(3);
        assert!(r.render(Format::Json).contains("\"elapsed_ms\": 3"));
    }
}
