use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Everything a subcommand produces.
pub struct Report {
    pub config: Value,
    pub results: Vec<Value>,
    /// Scalar result keys written as CSV columns, in order.
    pub columns: &'static [&'static str],
    pub passed: bool,
}

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

pub fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    let results: Vec<Value> = report.results.iter().cloned().map(round_value).collect();
    match format {
        Format::Json => {
            let doc = json!({ "config": round_value(report.config.clone()), "results": results });
            let mut out = serde_json::to_vec_pretty(&doc)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(report.columns)?;
            for r in &results {
                w.write_record(report.columns.iter().map(|c| cell(r.get(*c))))?;
            }
            w.into_inner().map_err(|e| e.into_error())
        }
    }
}

fn sidecar(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Writes the report to `out` (or stdout) and the timing sidecar next to it.
pub fn emit(report: &Report, format: Format, out: Option<&Path>, command: &str, seconds: f64) -> io::Result<()> {
    let bytes = render(report, format)?;
    match out {
        Some(path) => {
            fs::write(path, &bytes)?;
            let meta = json!({ "command": command, "wall_time_s": seconds, "passed": report.passed });
            fs::write(sidecar(path), serde_json::to_vec_pretty(&meta)?)?;
        }
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}
