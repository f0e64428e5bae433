use std::io::Write;

use serde_json::{json, Value};

/// Shortest round-trip form, switching to exponent notation outside
/// `[1e-4, 1e15)`. Negative zero prints as `0`.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".into()
    } else if a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

/// One table cell. Floats print with the shortest round-trip form, so equal
/// inputs give byte-identical output.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt_f64(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // non-finite values become null
            Cell::Num(v) => serde_json::Number::from_f64(*v + 0.0).map_or(Value::Null, Value::Number),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `key: value` lines, emitted as comments in CSV.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    pub fn write_csv<W: Write>(&self, echo: &str, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# {echo}")?;
        for (k, v) in &self.notes {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self, command: &str, config: Value) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
            .collect();
        let notes: serde_json::Map<String, Value> = self.notes.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({ "command": command, "config": config, "notes": notes, "rows": rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec![0usize.into(), 0.1.into()]);
        t.push(vec![1usize.into(), Cell::Empty]);
        t.note("peak", "2");
        let mut buf = Vec::new();
        t.write_csv("qdeform test", &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# qdeform test\n# peak: 2\nn,value\n0,0.1\n1,\n");
    }

    #[test]
    fn json_nulls_for_non_finite() {
        let mut t = Table::new(&["x"]);
        t.push(vec![f64::NAN.into()]);
        let v = t.to_json("t", json!({}));
        assert_eq!(v["rows"][0]["x"], Value::Null);
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1.0677494225483621e-14), "1.0677494225483621e-14");
        assert_eq!(fmt_f64(2e20), "2e20");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }
}
