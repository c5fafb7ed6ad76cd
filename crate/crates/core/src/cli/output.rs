//! CSV and JSON emission. Numbers are written with 17 significant digits.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use crate::error::Result;
use crate::VERSION;

/// `{:.16e}`: 17 significant digits, NaN for missing values.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// CSV table with a commented provenance header.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<String>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells.join(","));
    }

    pub fn write_to(&self, config: &RunConfig, out: &mut dyn Write) -> Result<()> {
        writeln!(out, "# {VERSION}")?;
        writeln!(out, "# config: {}", serde_json::to_string(config)?)?;
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(out, "{row}")?;
        }
        Ok(())
    }
}

/// JSON document `{"version", "config", ...body}`.
pub fn document<T: Serialize>(config: &RunConfig, body: &T) -> Result<Value> {
    let mut doc = json!({
        "version": VERSION,
        "config": config,
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, serde_json::to_value(body)?) {
        for (k, v) in b {
            d.insert(k, v);
        }
    }
    Ok(doc)
}

pub fn write_json(doc: &Value, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}
