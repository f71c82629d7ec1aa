//! Table rendering. CSV opens with a header line and serializes floats with
//! 17 significant digits so values round-trip exactly; JSON mirrors the rows
//! as objects under a metadata block. Both renderings are byte-deterministic
//! for a given command line.

use crate::args::Format;
use serde_json::{json, Map, Number, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            for (i, value) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{value:.16e}").expect("writing to a string");
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self, metadata: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (column, value) in self.columns.iter().zip(row) {
                    let number = Number::from_f64(*value).map(Value::Number);
                    object.insert(column.clone(), number.unwrap_or(Value::Null));
                }
                Value::Object(object)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&json!({
            "metadata": metadata,
            "rows": rows,
        }))
        .expect("tables of numbers serialize");
        out.push('\n');
        out
    }

    pub fn write(&self, format: Format, out: Option<&Path>, metadata: Value) -> Result<(), String> {
        let rendered = match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(metadata),
        };
        match out {
            Some(path) => std::fs::write(path, rendered)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => std::io::stdout()
                .write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write to standard output: {e}")),
        }
    }
}
