//! Output plumbing: text/JSON emission and minimal CSV encoding.

use serde::Serialize;
use std::path::Path;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A report that can render itself as a human-readable block. The JSON twin
/// comes from `Serialize` and carries the same fields.
pub trait Render {
    fn text(&self) -> String;
}

pub fn emit<R: Serialize + Render>(report: &R, format: Format) {
    match format {
        Format::Text => print_stdout(&report.text()),
        Format::Json => {
            print_stdout(&serde_json::to_string_pretty(report).expect("report serializes"))
        }
    }
}

/// Print a line to stdout, exiting quietly if the reader closed the pipe
/// (e.g. the output was piped into `head`).
fn print_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

/// RFC 4180 quoting: quote only when the field needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    fields.iter().map(|f| csv_field(f.as_ref())).collect::<Vec<_>>().join(",")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), super::CliError> {
    std::fs::write(path, contents)
        .map_err(|e| super::CliError::Io(path.display().to_string(), e.to_string()))
}

/// Two-column aligned key/value block for text reports.
pub fn kv_block(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("  {k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}
