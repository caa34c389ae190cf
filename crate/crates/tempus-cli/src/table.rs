//! The one artifact every subcommand produces: an ordered metadata block,
//! column names, and numeric rows.
//!
//! Both serializations are versioned, deterministic, and round-trip
//! byte-exactly: `emit(parse(emit(t))) == emit(t)`.  Floats are written in
//! their shortest decimal form that parses back to the identical bits, so
//! no precision is lost and identical runs diff clean.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::error::CliError;

/// Bumped whenever the on-disk layout changes shape.
pub const SCHEMA_VERSION: u64 = 1;

/// Shortest round-trip decimal form of a float.
///
/// Rust's `{:?}` for `f64` is exactly that: `1.0`, `0.1`, `1e25`,
/// `-2.5e-300`, with non-finite values as `inf`, `-inf`, `NaN` — all of
/// which `str::parse::<f64>` maps back to the original bits.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

/// Inverse of [`format_float`]; also accepts anything `f64::from_str` does.
pub fn parse_float(s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Io(format!("not a number: '{s}'")))
}

fn validate_column_name(name: &str) -> Result<(), String> {
    if name.is_empty() {
        return Err("column names must be non-empty".into());
    }
    if name.contains(',') || name.contains('\n') || name.starts_with('#') {
        return Err(format!(
            "column name '{name}' may not contain commas or newlines or start with '#'"
        ));
    }
    Ok(())
}

fn validate_meta(key: &str, value: &str) -> Result<(), String> {
    if key.is_empty() || key.contains('=') || key.contains('\n') || key.contains(' ') {
        return Err(format!(
            "metadata key '{key}' must be non-empty, without '=', spaces, or newlines"
        ));
    }
    if value.contains('\n') {
        return Err(format!("metadata value for '{key}' may not contain newlines"));
    }
    Ok(())
}

/// Ordered table of numbers with a metadata preamble.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    metadata: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ResultTable {
    /// Starts an empty table with the given column names.
    ///
    /// Panics on malformed column names: the callers pass literals, so a
    /// violation is a bug, not an input condition.
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        let columns: Vec<String> = columns.into_iter().map(Into::into).collect();
        assert!(!columns.is_empty(), "a table needs at least one column");
        for c in &columns {
            if let Err(e) = validate_column_name(c) {
                panic!("{e}");
            }
        }
        Self {
            metadata: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    /// Appends a metadata entry, or replaces the value in place if the key
    /// already exists (order is part of the output, so position is kept).
    pub fn set_meta<K: Into<String>, V: Into<String>>(&mut self, key: K, value: V) {
        let (key, value) = (key.into(), value.into());
        if let Err(e) = validate_meta(&key, &value) {
            panic!("{e}");
        }
        if let Some(slot) = self.metadata.iter_mut().find(|(k, _)| *k == key) {
            slot.1 = value;
        } else {
            self.metadata.push((key, value));
        }
    }

    /// [`set_meta`](Self::set_meta) with a float value in canonical form.
    pub fn set_meta_float<K: Into<String>>(&mut self, key: K, value: f64) {
        self.set_meta(key, format_float(value));
    }

    /// Appends a row; its length must match the column count.
    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row has {} cells but the table has {} columns",
            row.len(),
            self.columns.len()
        );
        self.rows.push(row);
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// All values of the named column, if it exists.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// CSV with a `#`-prefixed metadata preamble.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema_version={SCHEMA_VERSION}");
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Parses exactly what [`to_csv`](Self::to_csv) emits.
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let malformed = |why: String| CliError::Io(format!("malformed csv: {why}"));
        let mut lines = text.lines();

        let first = lines.next().ok_or_else(|| malformed("empty input".into()))?;
        let expected = format!("# schema_version={SCHEMA_VERSION}");
        if first != expected {
            return Err(malformed(format!(
                "first line must be '{expected}', found '{first}'"
            )));
        }

        let mut metadata: Vec<(String, String)> = Vec::new();
        let mut columns: Vec<String> = Vec::new();
        let mut rows: Vec<Vec<f64>> = Vec::new();

        for line in lines {
            if columns.is_empty() {
                if let Some(rest) = line.strip_prefix("# ") {
                    let (k, v) = rest
                        .split_once('=')
                        .ok_or_else(|| malformed(format!("metadata line without '=': '{line}'")))?;
                    validate_meta(k, v).map_err(malformed)?;
                    if metadata.iter().any(|(key, _)| key == k) {
                        return Err(malformed(format!("duplicate metadata key '{k}'")));
                    }
                    metadata.push((k.to_string(), v.to_string()));
                } else {
                    for name in line.split(',') {
                        validate_column_name(name).map_err(malformed)?;
                        columns.push(name.to_string());
                    }
                }
            } else {
                let row = line
                    .split(',')
                    .map(parse_float)
                    .collect::<Result<Vec<f64>, CliError>>()?;
                if row.len() != columns.len() {
                    return Err(malformed(format!(
                        "row has {} cells, header has {} columns",
                        row.len(),
                        columns.len()
                    )));
                }
                rows.push(row);
            }
        }
        if columns.is_empty() {
            return Err(malformed("no header line".into()));
        }
        Ok(Self {
            metadata,
            columns,
            rows,
        })
    }

    /// Pretty-printed JSON document with `schema_version`, `meta`,
    /// `columns`, and `rows`.  Non-finite cells are JSON strings
    /// (`"inf"`, `"-inf"`, `"NaN"`) because JSON has no number for them.
    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), Value::String(v.clone()));
        }
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|c| Value::String(c.clone()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|&v| float_to_value(v)).collect()))
            .collect();

        let mut doc = Map::new();
        doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        doc.insert("meta".into(), Value::Object(meta));
        doc.insert("columns".into(), Value::Array(columns));
        doc.insert("rows".into(), Value::Array(rows));

        let mut out = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("a string-keyed Value always serializes");
        out.push('\n');
        out
    }

    /// Parses exactly what [`to_json`](Self::to_json) emits.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let malformed = |why: String| CliError::Io(format!("malformed json: {why}"));
        let doc: Value =
            serde_json::from_str(text).map_err(|e| malformed(format!("not json: {e}")))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| malformed("top level must be an object".into()))?;

        match obj.get("schema_version").and_then(Value::as_u64) {
            Some(v) if v == SCHEMA_VERSION => {}
            other => {
                return Err(malformed(format!(
                    "schema_version must be {SCHEMA_VERSION}, found {other:?}"
                )))
            }
        }

        let mut metadata = Vec::new();
        for (k, v) in obj
            .get("meta")
            .and_then(Value::as_object)
            .ok_or_else(|| malformed("'meta' must be an object".into()))?
        {
            let v = v
                .as_str()
                .ok_or_else(|| malformed(format!("meta value for '{k}' must be a string")))?;
            validate_meta(k, v).map_err(malformed)?;
            metadata.push((k.clone(), v.to_string()));
        }

        let mut columns = Vec::new();
        for c in obj
            .get("columns")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("'columns' must be an array".into()))?
        {
            let name = c
                .as_str()
                .ok_or_else(|| malformed("column names must be strings".into()))?;
            validate_column_name(name).map_err(malformed)?;
            columns.push(name.to_string());
        }
        if columns.is_empty() {
            return Err(malformed("'columns' must be non-empty".into()));
        }

        let mut rows = Vec::new();
        for row in obj
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("'rows' must be an array".into()))?
        {
            let cells = row
                .as_array()
                .ok_or_else(|| malformed("each row must be an array".into()))?;
            if cells.len() != columns.len() {
                return Err(malformed(format!(
                    "row has {} cells, header has {} columns",
                    cells.len(),
                    columns.len()
                )));
            }
            let mut parsed = Vec::with_capacity(cells.len());
            for cell in cells {
                parsed.push(value_to_float(cell)?);
            }
            rows.push(parsed);
        }

        Ok(Self {
            metadata,
            columns,
            rows,
        })
    }
}

fn float_to_value(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else {
        Value::String(format_float(v))
    }
}

fn value_to_float(v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| CliError::Io(format!("number out of f64 range: {n}"))),
        Value::String(s) => parse_float(s),
        other => Err(CliError::Io(format!("cell is not a number: {other}"))),
    }
}
