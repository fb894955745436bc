use std::io::{self, Write};

use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            // Shortest round-trip form, switching to exponent notation for tiny values.
            Cell::Num(x) => format!("{:?}", x + 0.0),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(x + 0.0).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// Named columns plus rows; rendered as CSV or JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: impl Into<String>, columns: &[&'static str]) -> Self {
        Table { command: command.into(), columns: columns.to_vec(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn units(omega0: f64) -> &'static str {
    if omega0 == 1.0 {
        "omega0"
    } else {
        "absolute"
    }
}

/// `# schema=1` and a units line, then an RFC 4180 table (CRLF line ends throughout).
pub fn write_csv<W: Write>(mut out: W, table: &Table, omega0: f64) -> io::Result<()> {
    write!(out, "# schema={SCHEMA}\r\n")?;
    write!(out, "# command={} omega0={omega0} units={}\r\n", table.command, units(omega0))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::to_csv))?;
    }
    w.flush()
}

/// A JSON object carrying the schema version, units, and one record per row.
pub fn write_json<W: Write>(mut out: W, table: &Table, omega0: f64) -> io::Result<()> {
    let records: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            for (name, cell) in table.columns.iter().zip(row) {
                m.insert((*name).to_string(), cell.to_json());
            }
            Value::Object(m)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("schema".into(), Value::from(SCHEMA));
    doc.insert("command".into(), Value::from(table.command.as_str()));
    doc.insert("omega0".into(), Cell::Num(omega0).to_json());
    doc.insert("units".into(), Value::from(units(omega0)));
    doc.insert("records".into(), Value::Array(records));
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
    writeln!(out)
}

/// A gnuplot script plotting `y_columns` against `x_column` of a CSV file.
pub fn gnuplot_script(table: &Table, data_path: &str, x_column: &str, y_columns: &[&str]) -> String {
    let index = |name: &str| table.columns.iter().position(|c| *c == name).map_or(1, |i| i + 1);
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile commentschars '#'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{x_column}'\n"));
    let plots: Vec<String> = y_columns
        .iter()
        .map(|y| format!("'{data_path}' using {}:{} with points pt 7 ps 0.4 title '{y}'", index(x_column), index(y)))
        .collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["omega", "label", "gap"]);
        t.push(vec![Cell::Num(0.1), "a,b".into(), Cell::Empty]);
        t.push(vec![Cell::Num(-0.0), "".into(), Cell::Num(1.0)]);
        t.push(vec![Cell::Num(1.0 / 3.0), "plain".into(), Cell::Num(2.5e-7)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = vec![];
        write_csv(&mut buf, &sample(), 1.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# schema=1\r\n# command=demo omega0=1 units=omega0\r\nomega,label,gap\r\n0.1,\"a,b\",\r\n0.0,,1.0\r\n0.3333333333333333,plain,2.5e-7\r\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut buf = vec![];
        write_json(&mut buf, &sample(), 2.0).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["units"], "absolute");
        assert_eq!(v["records"][0]["gap"], Value::Null);
        assert_eq!(v["records"][2]["label"], "plain");
    }

    #[test]
    fn gnuplot_columns() {
        let s = gnuplot_script(&sample(), "out.csv", "omega", &["gap"]);
        assert!(s.contains("'out.csv' using 1:3"));
    }
}
