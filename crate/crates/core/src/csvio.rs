//! Column CSV with a `#`-prefixed provenance block.
//!
//! Numbers are written with 17 significant digits so that files round-trip
//! bit-exactly.

use std::io::{Read, Write};

use crate::error::{domain, Result};

/// Ordered `key: value` lines written above the CSV header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Provenance {
    entries: Vec<(String, String)>,
}

impl Provenance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write_to<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(out, "# {k}: {v}")?;
        }
        Ok(())
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A textual cell: numbers are formatted at full precision, everything else verbatim.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

pub fn write_rows<W: Write>(mut out: W, provenance: &Provenance, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    provenance.write_to(&mut out)?;
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(header)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(domain(format!(
                "row has {} cells, header has {}",
                row.len(),
                header.len()
            )));
        }
        wtr.write_record(row.iter().map(Cell::render))?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes equal-length numeric columns.
pub fn write_columns<W: Write>(out: W, provenance: &Provenance, header: &[&str], columns: &[&[f64]]) -> Result<()> {
    if columns.len() != header.len() {
        return Err(domain("column count does not match header"));
    }
    let len = columns.first().map_or(0, |c| c.len());
    if columns.iter().any(|c| c.len() != len) {
        return Err(domain("columns have unequal lengths"));
    }
    let rows: Vec<Vec<Cell>> = (0..len)
        .map(|i| columns.iter().map(|c| Cell::Num(c[i])).collect())
        .collect();
    write_rows(out, provenance, header, &rows)
}

/// Parsed numeric CSV: header names and column-major data.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.header
            .iter()
            .position(|h| h == name)
            .map(|i| self.columns[i].as_slice())
    }
}

pub fn read_columns<R: Read>(input: R) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let mut columns = vec![Vec::new(); header.len()];
    for record in rdr.records() {
        let record = record?;
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            let v: f64 = field.parse().map_err(|_| domain(format!("not a number: {field:?}")))?;
            col.push(v);
        }
    }
    Ok(Table { header, columns })
}
