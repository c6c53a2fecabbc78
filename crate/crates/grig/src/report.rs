//! Table, CSV and JSON rendering for command output.
//!
//! A document is a header plus uniform rows of typed cells; the CSV and JSON
//! renderings carry exactly the same rows. Output is deterministic: rows are
//! produced in a fixed order and JSON object keys are sorted.

use serde_json::{json, Map, Value};

use crate::verify::CheckReport;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub struct Doc {
    pub command: String,
    pub l_spec: String,
    /// JSON key for the row array: "rows" for tables, "reports" for checks.
    pub key: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Doc {
    pub fn new(command: &str, l_spec: &str, columns: Vec<&'static str>) -> Doc {
        Doc {
            command: command.to_string(),
            l_spec: l_spec.to_string(),
            key: "rows",
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(plain).collect())
            .collect();
        for row in &cells {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = String::new();
        for (i, col) in self.columns.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{col:<width$}", width = widths[i]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for row in &cells {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| csv_escape(&plain(v))).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.to_string(), cell.clone());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "l_spec": self.l_spec,
            self.key: rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable document");
        text.push('\n');
        text
    }
}

/// Plain-text rendering of a cell for table and CSV output.
fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A float cell; non-finite values render as the strings "inf"/"-inf".
pub fn float_cell(v: f64) -> Value {
    if v.is_finite() {
        serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
    } else if v > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

pub fn report_doc(command: &str, l_spec: &str, reports: &[CheckReport]) -> Doc {
    let mut doc = Doc::new(
        command,
        l_spec,
        vec!["check_id", "params", "status", "note", "detail"],
    );
    doc.key = "reports";
    for r in reports {
        doc.push(vec![
            Value::String(r.check_id.clone()),
            Value::String(r.params.clone()),
            Value::String(r.status.label().to_string()),
            Value::String(r.status.note().to_string()),
            Value::String(r.detail.clone()),
        ]);
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_cells_with_commas() {
        let mut doc = Doc::new("demo", "const:1", vec!["a", "b"]);
        doc.push(vec![
            Value::String("x,y".into()),
            Value::Number(3.into()),
        ]);
        let csv = doc.render(Format::Csv);
        assert_eq!(csv, "a,b\n\"x,y\",3\n");
    }

    #[test]
    fn json_and_csv_carry_the_same_rows() {
        let mut doc = Doc::new("demo", "const:1", vec!["n", "v"]);
        doc.push(vec![Value::Number(1.into()), float_cell(f64::INFINITY)]);
        doc.push(vec![Value::Number(2.into()), float_cell(0.5)]);
        let json: Value = serde_json::from_str(&doc.render(Format::Json)).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 2);
        assert_eq!(json["rows"][0]["v"], Value::String("inf".into()));
        let csv = doc.render(Format::Csv);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("1,inf"));
    }
}
