//! Canonical JSON and CSV emission.
//!
//! Floats are rounded to 9 significant digits before emission. JSON keys come
//! out sorted, so re-parsing and re-emitting any output reproduces it byte for
//! byte.

use serde_json::{Map, Value};

/// A CSV column: header and dotted path into a row object.
#[derive(Debug, Clone)]
pub struct Column {
    pub header: String,
    pub path: String,
}

impl Column {
    pub fn new(header: &str, path: &str) -> Self {
        Column {
            header: header.into(),
            path: path.into(),
        }
    }

    /// Column whose header is its path.
    pub fn plain(name: &str) -> Self {
        Column::new(name, name)
    }
}

/// What a subcommand produced: a JSON document and a table view of it.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub rows: Vec<Value>,
    pub columns: Vec<Column>,
}

impl Output {
    pub fn single(json: Value, columns: Vec<Column>) -> Self {
        Output {
            rows: vec![json.clone()],
            json,
            columns,
        }
    }

    pub fn list(rows: Vec<Value>, columns: Vec<Column>) -> Self {
        Output {
            json: Value::Array(rows.clone()),
            rows,
            columns,
        }
    }

    pub fn cell(&self, row: usize, column: &Column) -> Value {
        column
            .path
            .split('.')
            .try_fold(&self.rows[row], |v, key| v.get(key))
            .cloned()
            .unwrap_or(Value::Null)
    }

    /// Rows as flat objects keyed by column header.
    pub fn flat_rows(&self) -> Vec<Map<String, Value>> {
        (0..self.rows.len())
            .map(|i| {
                self.columns
                    .iter()
                    .map(|c| (c.header.clone(), self.cell(i, c)))
                    .collect()
            })
            .collect()
    }
}

pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Copy of `v` with every float rounded to 9 significant digits.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(round9).map_or(Value::Null, Value::from),
        Value::Array(items) => Value::Array(items.iter().map(canonical).collect()),
        Value::Object(map) => {
            Value::Object(map.iter().map(|(k, v)| (k.clone(), canonical(v))).collect())
        }
        other => other.clone(),
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s =
        serde_json::to_string_pretty(&canonical(v)).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

fn csv_field(v: &Value) -> String {
    match canonical(v) {
        Value::Null => String::new(),
        Value::String(s) => s,
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

pub fn to_csv(out: &Output) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(out.columns.iter().map(|c| c.header.as_str()))?;
    for i in 0..out.rows.len() {
        w.write_record(out.columns.iter().map(|c| csv_field(&out.cell(i, c))))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV fields are built from UTF-8 strings"))
}
