//! Tabular output as CSV or as a JSON array of row objects.

use serde_json::{Map, Number, Value};

use super::config::OutputFormat;
use super::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(&'static str),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

/// Shortest decimal that parses back to the same `f64`. Plain notation in
/// `[1e-5, 1e16)`, exponent notation outside it.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs();
    if (1e-5..1e16).contains(&mag) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rejects any NaN or infinity before anything is written.
    pub fn check_finite(&self) -> Result<(), CliError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (col, cell) in self.columns.iter().zip(row) {
                if let Cell::Num(v) = cell {
                    if !v.is_finite() {
                        return Err(CliError::Numerical(format!("row {i}, column {col}: {v}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        self.check_finite()?;
        Ok(match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        })
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_number(*v),
                    Cell::Text(s) => (*s).to_string(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| {
                        let v = match cell {
                            Cell::Num(v) => Number::from_f64(*v).map(Value::Number).unwrap_or(Value::Null),
                            Cell::Text(s) => Value::String((*s).to_string()),
                            Cell::Empty => Value::Null,
                        };
                        ((*col).to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_formats() {
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1e-13), "1e-13");
        assert_eq!(format_number(1e4), "10000");
        assert_eq!(format_number(2.5e20), "2.5e20");
        assert_eq!(format_number(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![Cell::Num(1.0), Cell::Text("x"), Cell::Empty]);
        assert_eq!(t.render(OutputFormat::Csv).unwrap(), "a,b,c\n1,x,\n");
    }

    #[test]
    fn json_keeps_column_order_and_nulls() {
        let mut t = Table::new(&["z", "a"]);
        t.push(vec![Cell::Num(0.25), Cell::Empty]);
        let v: Value = serde_json::from_str(&t.render(OutputFormat::Json).unwrap()).unwrap();
        let obj = v[0].as_object().unwrap();
        assert_eq!(obj.keys().collect::<Vec<_>>(), vec!["z", "a"]);
        assert_eq!(obj["a"], Value::Null);
    }

    #[test]
    fn non_finite_is_refused() {
        let mut t = Table::new(&["a"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        assert!(matches!(t.render(OutputFormat::Csv), Err(CliError::Numerical(_))));
    }

    proptest! {
        #[test]
        fn formatted_numbers_round_trip(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let back: f64 = format_number(v).parse().unwrap();
            prop_assert_eq!(back, v);
        }
    }
}
