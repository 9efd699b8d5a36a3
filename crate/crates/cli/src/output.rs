use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Where rendered output goes, and whether it carries a timestamp.
pub struct Sink {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timestamp: bool,
}

impl Sink {
    pub fn timestamp(&self) -> Option<String> {
        self.timestamp
            .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    }

    pub fn emit(&self, text: &str) -> io::Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }

    /// Renders a JSON document, adding the timestamp field when enabled.
    pub fn json<T: Serialize>(&self, command: &str, body: &T) -> String {
        let mut value = serde_json::json!({ "command": command });
        if let Some(ts) = self.timestamp() {
            value["timestamp"] = serde_json::Value::String(ts);
        }
        let body = serde_json::to_value(body).expect("serializable report");
        if let (Some(dst), serde_json::Value::Object(src)) = (value.as_object_mut(), body) {
            dst.extend(src);
        }
        let mut out = serde_json::to_string_pretty(&value).expect("serializable report");
        out.push('\n');
        out
    }

    /// Prepends a `# generated ...` line to plain output when enabled.
    pub fn plain(&self, body: String) -> String {
        match self.timestamp() {
            Some(ts) => format!("# generated {ts}\n{body}"),
            None => body,
        }
    }
}

/// Minimal CSV writer; every field here is a number, a fraction or a bare word.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", header.join(","));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| quote(c)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

fn quote(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        let text = csv(&["a", "b"], &[vec!["1/2".into(), "x,y".into()]]);
        assert_eq!(text, "a,b\n1/2,\"x,y\"\n");
    }
}
