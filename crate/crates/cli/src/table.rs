//! Flat tables and the CSV writer shared by every subcommand.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use keynes_chaos::ergodic::{DensityEstimate, OrbitSeries};
use keynes_chaos::scan::SweepDataset;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Flag(bool),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(v) => Some(v),
            Cell::Int(i) => Some(i as f64),
            _ => None,
        }
    }

    /// Shortest representation that parses back to the same value.
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v}"),
            Cell::Int(i) => i.to_string(),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// `(step, value)` per retained iterate; the step counts from the start.
    pub fn from_orbit(o: &OrbitSeries<f64>) -> Self {
        let mut t = Table::new(&["step", "value"]);
        for (i, &v) in o.values.iter().enumerate() {
            t.push(vec![Cell::Int(o.transient_skipped + i), Cell::Num(v)]);
        }
        t
    }

    pub fn from_density(d: &DensityEstimate<f64>) -> Self {
        let mut t = Table::new(&["bin_left", "bin_right", "density"]);
        for i in 0..d.bins() {
            t.push(vec![
                Cell::Num(d.bin_edges[i]),
                Cell::Num(d.bin_edges[i + 1]),
                Cell::Num(d.density[i]),
            ]);
        }
        t
    }

    /// `param,<stat columns>,<flag columns>`.
    pub fn from_sweep(ds: &SweepDataset<f64>) -> Self {
        let mut columns = vec!["param".to_string()];
        columns.extend(ds.column_names.iter().cloned());
        columns.extend(ds.flag_names.iter().cloned());
        let rows = ds
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![Cell::Num(r.param)];
                row.extend(r.columns.iter().map(|&c| Cell::from(c)));
                row.extend(r.flags.iter().map(|&f| Cell::Flag(f)));
                row
            })
            .collect();
        Table { columns, rows }
    }

    /// Running estimates indexed from 1: `(n, <name>)`.
    pub fn running(name: &str, values: &[f64]) -> Self {
        let mut t = Table::new(&["n", name]);
        for (i, &v) in values.iter().enumerate() {
            t.push(vec![Cell::Int(i + 1), Cell::Num(v)]);
        }
        t
    }
}

/// Writes `# <provenance>` followed by the CSV body.
pub fn write_csv_to<W: Write>(table: &Table, mut out: W, provenance: &str) -> io::Result<()> {
    writeln!(out, "# {provenance}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()
}

/// [`write_csv_to`] a new file; errors carry the path.
pub fn write_csv(table: &Table, path: &Path, provenance: &str) -> io::Result<()> {
    let with_path = |e: io::Error| io::Error::new(e.kind(), format!("{}: {e}", path.display()));
    let file = File::create(path).map_err(with_path)?;
    write_csv_to(table, io::BufWriter::new(file), provenance).map_err(with_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_every_value() {
        let values = [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-300,
            6.02214076e23,
            -0.0,
            0.6000000000000001,
            f64::MIN_POSITIVE,
        ];
        let mut t = Table::new(&["param", "x", "flag"]);
        for (i, &v) in values.iter().enumerate() {
            t.push(vec![
                Cell::Num(v),
                Cell::Num(v * 7.0),
                Cell::Flag(i % 2 == 0),
            ]);
        }
        t.push(vec![Cell::Num(1.5), Cell::Empty, Cell::Flag(true)]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&t, &path, "generated-by test").unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# generated-by test\nparam,x,flag\n"));
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_path(&path)
            .unwrap();
        let parsed: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(parsed.len(), t.rows.len());
        for (rec, row) in parsed.iter().zip(&t.rows) {
            for (field, cell) in rec.iter().zip(row) {
                match *cell {
                    Cell::Num(v) => {
                        assert_eq!(field.parse::<f64>().unwrap().to_bits(), v.to_bits())
                    }
                    Cell::Flag(b) => assert_eq!(field.parse::<bool>().unwrap(), b),
                    Cell::Empty => assert!(field.is_empty()),
                    Cell::Int(i) => assert_eq!(field.parse::<usize>().unwrap(), i),
                }
            }
        }
    }
}
