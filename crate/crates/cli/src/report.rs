//! Reports: a header, named fields in insertion order, and a status.
//! Machine output is one JSON object per line; human output is a table.

use std::fmt::Write as _;

use gradconf::CONVENTION_VERSION;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A mathematical failure, usually with a certificate.
    Fail,
    /// The question could not be decided over the rationals.
    Inconclusive,
    InputError,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::InputError => "input-error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Inconclusive => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub degree_bound: u32,
    pub status: Status,
    pub fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, input: &str, seed: u64, degree_bound: u32) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            seed,
            degree_bound,
            status: Status::Pass,
            fields: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let header = json!({
            "record": "header",
            "tool": "gradconf",
            "convention": CONVENTION_VERSION,
            "command": self.command,
            "input": self.input,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
        });
        writeln!(out, "{header}").unwrap();
        for (k, v) in &self.fields {
            writeln!(out, "{}", json!({ "record": "field", "key": k, "value": v })).unwrap();
        }
        let status = json!({ "record": "status", "status": self.status.name(), "exit_code": self.exit_code() });
        writeln!(out, "{status}").unwrap();
        out
    }

    pub fn render_human(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("input".into(), self.input.clone()),
            ("convention".into(), CONVENTION_VERSION.into()),
            ("seed".into(), self.seed.to_string()),
            ("degree-bound".into(), self.degree_bound.to_string()),
        ];
        for (k, v) in &self.fields {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            rows.push((k.clone(), text));
        }
        rows.push(("status".into(), format!("{} (exit {})", self.status.name(), self.exit_code())));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
        out
    }
}
