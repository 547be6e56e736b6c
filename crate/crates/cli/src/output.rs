//! Report rendering: text summaries, JSON, and CSV.
//!
//! CSV output is the JSON document flattened to `field,value` rows, with
//! nested keys joined by `.` and array positions as path segments. Numbers
//! are written with the same shortest round-trip formatting as in JSON.

use std::fmt::Write as _;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};
use sumsetlab::analytic::LemmaReport;
use sumsetlab::verify::{CampaignReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Rendered {
    json: Value,
    text: String,
    pub pass: bool,
}

impl Rendered {
    /// Embeds `command` and `config` next to the report's own fields.
    pub fn new(
        command: &str,
        config: &impl Serialize,
        report: impl Serialize,
        text: String,
        pass: bool,
    ) -> anyhow::Result<Self> {
        let mut obj = match serde_json::to_value(report)? {
            Value::Object(m) => m,
            other => Map::from_iter([("report".to_string(), other)]),
        };
        obj.insert("command".into(), Value::String(command.into()));
        obj.insert("config".into(), serde_json::to_value(config)?);
        Ok(Rendered { json: Value::Object(obj), text, pass })
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => to_csv(&self.json),
        }
    }
}

/// Scalar leaves of a JSON document as `(path, value)` pairs.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(v: &Value, path: &str, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| walk(x, &join(k), out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| walk(x, &join(&i.to_string()), out)),
            Value::Null => out.push((path.to_string(), String::new())),
            Value::String(s) => out.push((path.to_string(), s.clone())),
            Value::Bool(b) => out.push((path.to_string(), b.to_string())),
            Value::Number(n) => out.push((path.to_string(), n.to_string())),
        }
    }
    let mut out = Vec::new();
    walk(v, "", &mut out);
    out
}

fn to_csv(v: &Value) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value"])?;
    for (k, x) in flatten(v) {
        w.write_record([k, x])?;
    }
    String::from_utf8(w.into_inner().context("flushing CSV")?).context("CSV is UTF-8")
}

fn fmt_margin(m: Option<f64>) -> String {
    m.map_or("-".into(), |m| format!("{m:.6e}"))
}

fn fmt_witness(w: &Witness) -> String {
    let sets: Vec<String> = w
        .sets
        .iter()
        .map(|s| {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|p| if p.len() == 1 { p[0].to_string() } else { format!("{p:?}") })
                .collect();
            format!("{{{}}}", pts.join(", "))
        })
        .collect();
    format!("#{} margin {:.6e}: {}", w.index, w.margin, sets.join(" ; "))
}

pub fn campaign_text(r: &CampaignReport) -> String {
    let mut s = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let seed = r.seed.map_or("-".into(), |x| x.to_string());
    let _ = writeln!(s, "statement {}  mode {}  seed {}", r.statement, r.mode, seed);
    let _ = writeln!(s, "params    {}", params.join(" "));
    let _ = writeln!(
        s,
        "instances {}  violations {}  near-equalities {}  min log-margin {}",
        r.instances,
        r.violations,
        r.near_equality_count,
        fmt_margin(r.min_log_margin)
    );
    if let Some(w) = &r.argmin {
        let _ = writeln!(s, "argmin    {}", fmt_witness(w));
    }
    for w in &r.violation_examples {
        let _ = writeln!(s, "violation {}", fmt_witness(w));
    }
    for c in &r.side_checks {
        let tag = if c.enforced { "" } else { " (informational)" };
        let _ = writeln!(
            s,
            "check     {}{tag}: {} checked, {} failures, min {}",
            c.name,
            c.checked,
            c.failures,
            fmt_margin(c.min_margin)
        );
    }
    if let Some(note) = &r.note {
        let _ = writeln!(s, "note      {note}");
    }
    let _ = writeln!(s, "{} ({} ms)", if r.pass() { "PASS" } else { "FAIL" }, r.wall_time_ms);
    s
}

pub fn lemma_text(reports: &[LemmaReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(
            s,
            "{:<17} {}  min margin {:.6e} at {:?} [{}], {} points, grid {}",
            r.lemma,
            if r.pass { "PASS" } else { "FAIL" },
            r.min_margin,
            r.argmin,
            r.argmin_case,
            r.points,
            r.grid
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_paths() {
        let v: Value = serde_json::from_str(r#"{"a":{"b":[1,2.5]},"c":null,"d":"x"}"#).unwrap();
        let f = flatten(&v);
        assert_eq!(
            f,
            vec![
                ("a.b.0".to_string(), "1".to_string()),
                ("a.b.1".into(), "2.5".into()),
                ("c".into(), "".into()),
                ("d".into(), "x".into()),
            ]
        );
    }
}
