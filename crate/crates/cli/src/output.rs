//! Tabular output as CSV or JSON with fixed number formatting.

use std::io::Write;

use serde_json::{Map, Value};

/// Formats like C's `%.10g`: ten significant digits, trailing zeros dropped,
/// exponent form outside `[1e-4, 1e10)`.
pub fn g10(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..10).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (9 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Na,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => g10(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Na => "NA".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round-trip through the fixed format so both outputs agree
            Cell::Num(x) => g10(*x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Na => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Na, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Rows under a fixed header.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv)).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
    }

    /// A single row becomes an object, anything else an array of objects.
    pub fn to_json(&self) -> String {
        let objects: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().zip(r).map(|(k, c)| (k.to_string(), c.json())).collect();
                Value::Object(m)
            })
            .collect();
        let v = if objects.len() == 1 { objects.into_iter().next().unwrap() } else { Value::Array(objects) };
        serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
    }

    pub fn emit(&self, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
        out.write_all(if json { self.to_json() } else { self.to_csv() }.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g10_matches_printf() {
        let cases = [
            (46.54497717, "46.54497717"),
            (0.1, "0.1"),
            (1.0, "1"),
            (-2.5e-5, "-2.5e-05"),
            (1.23456789012e12, "1.23456789e+12"),
            (162546.6912345, "162546.6912"),
            (9_999_999_999.7, "1e+10"),
            (0.00012345678901, "0.000123456789"),
            (33.76417320764044, "33.76417321"),
        ];
        for (x, want) in cases {
            assert_eq!(g10(x), want, "{x}");
        }
    }

    #[test]
    fn csv_and_json_agree() {
        let mut r = Report::new(&["T", "x", "ok"]);
        r.push(vec![11.0.into(), Cell::Na, true.into()]);
        assert_eq!(r.to_csv(), "T,x,ok\n11,NA,true\n");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["T"], 11.0);
        assert!(v["x"].is_null());
        r.push(vec![12.5.into(), 1.0.into(), false.into()]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
    }
}
