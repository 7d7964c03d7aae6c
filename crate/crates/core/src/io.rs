//! CSV point-cloud ingestion and result-document serialization.
//!
//! Two text formats live here:
//!
//! * **Clouds** — comma-separated rows, one observation per line, optional
//!   single header row. Written with Rust's shortest-round-trip float
//!   `Display`, so write-then-read returns the exact same cloud. LF or
//!   CRLF accepted on read; LF written.
//! * **Result documents** — a versioned record of one command run: the
//!   command name, its full configuration (including the seed), flat
//!   numeric results, and an optional per-row table. JSON is the primary
//!   serialization (single object, fixed key order, reals at 17
//!   significant digits so they round-trip bit-exactly); CSV renders the
//!   table when present and `key,value` rows otherwise.

use crate::wasserstein::PointCloud;
use crate::{Error, Result};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

/// Output serialization for result documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::invalid(format!(
                "unknown format {other:?}; expected json or csv"
            ))),
        }
    }
}

/// A configuration value echoed into a result document.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigValue {
    Text(String),
    Int(i64),
    UInt(u64),
    Real(f64),
    Bool(bool),
}

/// A rectangular numeric table (e.g. one row per sample size).
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Versioned record of a single command run. See the module docs for the
/// serialization rules.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    /// Always [`SCHEMA_VERSION`] for documents produced by this crate.
    pub schema_version: String,
    /// The subcommand that produced the document.
    pub command: String,
    /// Flag echo, in insertion order, seed included.
    pub config: Vec<(String, ConfigValue)>,
    /// Flat numeric results, in insertion order.
    pub results: Vec<(String, f64)>,
    pub table: Option<Table>,
    pub warning: Option<String>,
    /// Unix seconds at completion; omitted by default so documents are
    /// byte-reproducible, opt-in via the CLI.
    pub timestamp: Option<String>,
}

pub const SCHEMA_VERSION: &str = "1";

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            config: Vec::new(),
            results: Vec::new(),
            table: None,
            warning: None,
            timestamp: None,
        }
    }

    pub fn push_config(&mut self, key: &str, value: ConfigValue) {
        self.config.push((key.to_string(), value));
    }

    pub fn push_result(&mut self, key: &str, value: f64) {
        self.results.push((key.to_string(), value));
    }

    /// Serialize as a single JSON object with fixed key order and reals
    /// rendered by [`format_float`]. Errors on non-finite reals.
    pub fn to_json_string(&self) -> Result<String> {
        self.check_finite()?;
        let mut s = String::new();
        s.push('{');
        write!(s, "\"schema_version\":{}", json_string(&self.schema_version)).unwrap();
        write!(s, ",\"command\":{}", json_string(&self.command)).unwrap();
        s.push_str(",\"config\":{");
        for (i, (k, v)) in self.config.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{}:{}", json_string(k), config_value_json(v)).unwrap();
        }
        s.push('}');
        s.push_str(",\"results\":{");
        for (i, (k, v)) in self.results.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{}:{}", json_string(k), format_float(*v)).unwrap();
        }
        s.push('}');
        if let Some(t) = &self.table {
            s.push_str(",\"table\":{\"columns\":[");
            for (i, c) in t.columns.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&json_string(c));
            }
            s.push_str("],\"rows\":[");
            for (i, row) in t.rows.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push('[');
                for (j, v) in row.iter().enumerate() {
                    if j > 0 {
                        s.push(',');
                    }
                    s.push_str(&format_float(*v));
                }
                s.push(']');
            }
            s.push_str("]}");
        }
        if let Some(w) = &self.warning {
            write!(s, ",\"warning\":{}", json_string(w)).unwrap();
        }
        if let Some(ts) = &self.timestamp {
            write!(s, ",\"timestamp\":{}", json_string(ts)).unwrap();
        }
        s.push_str("}\n");
        Ok(s)
    }

    /// Render as CSV: the table when present (header plus rows), else one
    /// `key,value` line per numeric result.
    pub fn to_csv_string(&self) -> Result<String> {
        self.check_finite()?;
        let mut s = String::new();
        match &self.table {
            Some(t) => {
                s.push_str(&t.columns.join(","));
                s.push('\n');
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
            None => {
                for (k, v) in &self.results {
                    writeln!(s, "{k},{}", format_float(*v)).unwrap();
                }
            }
        }
        Ok(s)
    }

    /// Parse a document produced by [`ResultDocument::to_json_string`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed result document: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::invalid("result document must be a JSON object"))?;
        let mut doc = ResultDocument::new("");
        doc.schema_version = String::new();
        for (key, v) in obj {
            match key.as_str() {
                "schema_version" => doc.schema_version = expect_string(v, key)?,
                "command" => doc.command = expect_string(v, key)?,
                "config" => {
                    let map = v.as_object().ok_or_else(|| bad_field(key, "an object"))?;
                    for (k, cv) in map {
                        doc.config.push((k.clone(), parse_config_value(cv, k)?));
                    }
                }
                "results" => {
                    let map = v.as_object().ok_or_else(|| bad_field(key, "an object"))?;
                    for (k, rv) in map {
                        let num = rv.as_f64().ok_or_else(|| bad_field(k, "a number"))?;
                        doc.results.push((k.clone(), num));
                    }
                }
                "table" => doc.table = Some(parse_table(v)?),
                "warning" => doc.warning = Some(expect_string(v, key)?),
                "timestamp" => doc.timestamp = Some(expect_string(v, key)?),
                other => {
                    return Err(Error::invalid(format!(
                        "unknown result document field {other:?}"
                    )))
                }
            }
        }
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "unsupported schema_version {:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    fn check_finite(&self) -> Result<()> {
        let bad_result = self.results.iter().find(|(_, v)| !v.is_finite());
        if let Some((k, v)) = bad_result {
            return Err(Error::invalid(format!("non-finite result {k:?}: {v}")));
        }
        if let Some(t) = &self.table {
            for row in &t.rows {
                if row.len() != t.columns.len() {
                    return Err(Error::invalid("table row width differs from header"));
                }
                if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                    return Err(Error::invalid(format!("non-finite table entry: {v}")));
                }
            }
        }
        if let Some((k, v)) = self.config.iter().find_map(|(k, c)| match c {
            ConfigValue::Real(v) if !v.is_finite() => Some((k, v)),
            _ => None,
        }) {
            return Err(Error::invalid(format!("non-finite config {k:?}: {v}")));
        }
        Ok(())
    }
}

fn bad_field(key: &str, wanted: &str) -> Error {
    Error::invalid(format!("result document field {key:?} must be {wanted}"))
}

fn expect_string(v: &serde_json::Value, key: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| bad_field(key, "a string"))
}

fn parse_config_value(v: &serde_json::Value, key: &str) -> Result<ConfigValue> {
    match v {
        serde_json::Value::String(s) => Ok(ConfigValue::Text(s.clone())),
        serde_json::Value::Bool(b) => Ok(ConfigValue::Bool(*b)),
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                Ok(ConfigValue::UInt(u))
            } else if let Some(i) = n.as_i64() {
                Ok(ConfigValue::Int(i))
            } else {
                Ok(ConfigValue::Real(n.as_f64().unwrap()))
            }
        }
        _ => Err(bad_field(key, "a string, bool, or number")),
    }
}

fn parse_table(v: &serde_json::Value) -> Result<Table> {
    let obj = v.as_object().ok_or_else(|| bad_field("table", "an object"))?;
    let columns = obj
        .get("columns")
        .and_then(|c| c.as_array())
        .ok_or_else(|| bad_field("table.columns", "an array"))?
        .iter()
        .map(|c| expect_string(c, "table.columns"))
        .collect::<Result<Vec<_>>>()?;
    let rows = obj
        .get("rows")
        .and_then(|r| r.as_array())
        .ok_or_else(|| bad_field("table.rows", "an array"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad_field("table.rows", "an array of arrays"))?
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| bad_field("table.rows", "numeric")))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if obj.len() != 2 {
        return Err(Error::invalid("table must have exactly columns and rows"));
    }
    Ok(Table { columns, rows })
}

fn config_value_json(v: &ConfigValue) -> String {
    match v {
        ConfigValue::Text(s) => json_string(s),
        ConfigValue::Int(i) => i.to_string(),
        ConfigValue::UInt(u) => u.to_string(),
        ConfigValue::Real(r) => format_float(*r),
        ConfigValue::Bool(b) => b.to_string(),
    }
}

/// Render a finite real with 17 significant digits (`1.0` →
/// `"1.0000000000000000e0"`), enough to reproduce the exact binary64
/// value on parse. The output is a valid JSON number.
pub fn format_float(v: f64) -> String {
    debug_assert!(v.is_finite());
    format!("{v:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                write!(out, "\\u{:04x}", c as u32).unwrap();
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Read a CSV cloud from disk. See [`parse_cloud`] for the grammar.
pub fn read_cloud(path: &Path, has_header: bool) -> Result<PointCloud> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    parse_cloud(&text, has_header)
}

/// Parse a CSV cloud: one observation per line, comma-separated numeric
/// cells, all rows the same width. LF and CRLF both accepted; cells may
/// carry surrounding spaces. With `has_header`, the first line is
/// skipped. Errors name the offending 1-based line and column.
pub fn parse_cloud(text: &str, has_header: bool) -> Result<PointCloud> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let last = lines.len();
    for (idx, line) in lines.into_iter().enumerate() {
        let line_no = idx + 1;
        if has_header && idx == 0 {
            continue;
        }
        if line.is_empty() {
            // A final LF leaves one empty fragment; anything else is a hole
            // in the data.
            if line_no == last {
                continue;
            }
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                msg: "empty line".to_string(),
            });
        }
        let mut row = Vec::new();
        for (col, cell) in line.split(',').enumerate() {
            let cell = cell.trim();
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                line: line_no,
                column: col + 1,
                msg: format!("expected a number, got {cell:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    column: col + 1,
                    msg: format!("non-finite value {cell:?}"),
                });
            }
            row.push(value);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    msg: format!("expected {w} fields, got {}", row.len()),
                });
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    PointCloud::from_rows(&rows)
}

/// Render a cloud as CSV with shortest-round-trip floats and LF endings.
pub fn cloud_to_csv(cloud: &PointCloud) -> String {
    let mut s = String::new();
    for row in cloud.iter() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            write!(s, "{v}").unwrap();
        }
        s.push('\n');
    }
    s
}

/// Write `text` to `out`, or to stdout when `out` is `None`.
pub fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
            Ok(())
        }
    }
}

/// Serialize `doc` in `format` and write it to `out` (stdout when `None`).
pub fn write_result(doc: &ResultDocument, format: OutputFormat, out: Option<&Path>) -> Result<()> {
    let text = match format {
        OutputFormat::Json => doc.to_json_string()?,
        OutputFormat::Csv => doc.to_csv_string()?,
    };
    write_text(out, &text)
}
