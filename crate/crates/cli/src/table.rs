//! Output tables. JSON is canonical; CSV projects the rows and carries the
//! header as a leading `#` comment line.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::config::{Format, SCHEMA_VERSION};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
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
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Num)
    }
}

/// 17 significant digits; `-0` prints as `0`.
pub fn format_number(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn number_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format_number(x)).expect("formatted float is a JSON number"))
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => number_value(*x),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Null => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format_number(*x),
            Cell::Num(_) | Cell::Null => String::new(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// The per-table header: which boundary condition, length and class the
/// rows describe.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub bc: Option<String>,
    pub params: Option<[f64; 5]>,
    pub length: Option<f64>,
    pub class: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub header: Header,
    /// Scalar facts about the whole table.
    pub meta: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, header: Header, columns: Vec<&'static str>) -> Self {
        Table {
            command,
            header,
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn header_map(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        m.insert("command".into(), Value::from(self.command));
        let bc = match (&self.header.bc, &self.header.params) {
            (Some(spec), Some([alpha, beta, n1, n2, n3])) => {
                let mut b = Map::new();
                b.insert("spec".into(), Value::from(spec.as_str()));
                b.insert("alpha".into(), number_value(*alpha));
                b.insert("beta".into(), number_value(*beta));
                b.insert("n".into(), Value::Array([n1, n2, n3].iter().map(|x| number_value(**x)).collect()));
                Value::Object(b)
            }
            (Some(spec), None) => Value::from(spec.as_str()),
            _ => Value::Null,
        };
        m.insert("bc".into(), bc);
        m.insert("L".into(), self.header.length.map_or(Value::Null, number_value));
        m.insert("class".into(), self.header.class.clone().map_or(Value::Null, Value::from));
        for (k, v) in &self.meta {
            m.insert((*k).into(), v.json());
        }
        m
    }

    pub fn to_json(&self) -> String {
        let mut m = self.header_map();
        m.insert("columns".into(), Value::Array(self.columns.iter().map(|c| Value::from(*c)).collect()));
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| ((*c).to_string(), v.json())).collect()))
            .collect();
        m.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let header = serde_json::to_string(&Value::Object(self.header_map())).expect("JSON values serialize");
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8");
        format!("# {header}\n{body}")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(
            "demo",
            Header {
                bc: Some("dirichlet".into()),
                params: Some([std::f64::consts::PI, 0.0, 1.0, 0.0, 0.0]),
                length: Some(1.0),
                class: Some("DirichletPoint".into()),
            },
            vec!["x", "label"],
        );
        t.meta.push(("zero_modes", Cell::from(0u32)));
        t.push(vec![Cell::from(0.1), Cell::from("a,b")]);
        t.push(vec![Cell::from(-0.0), Cell::Null]);
        t
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, std::f64::consts::PI] {
            let s = format_number(x);
            assert_eq!(s.split('e').next().unwrap().trim_start_matches('-').replace('.', "").len(), 17);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(-0.0), format_number(0.0));
    }

    #[test]
    fn json_keeps_digits_and_header() {
        let text = sample().to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["class"], "DirichletPoint");
        assert_eq!(v["bc"]["spec"], "dirichlet");
        assert!(text.contains("1.0000000000000001e-1"));
        assert!(v["rows"][1]["label"].is_null());
    }

    #[test]
    fn csv_projection() {
        let text = sample().to_csv();
        let mut lines = text.lines();
        let header: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# ").unwrap()).unwrap();
        assert_eq!(header["L"].as_f64(), Some(1.0));
        assert_eq!(lines.next(), Some("x,label"));
        assert_eq!(lines.next(), Some("1.0000000000000001e-1,\"a,b\""));
        assert_eq!(lines.next(), Some("0.0000000000000000e0,"));
    }
}
