//! Column tables and their CSV serialisation.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// A header plus numeric rows, all the same width.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Writes the table as CSV; every value carries 17 significant digits
    /// so that parsing recovers the exact `f64`.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|x| format_value(*x)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes to `path`, or to standard output when `path` is `None`.
    pub fn write_to(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                let f = File::create(p).map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display())))?;
                self.write_csv(io::BufWriter::new(f))
            }
            None => self.write_csv(io::stdout().lock()),
        }
    }

    pub fn read_csv<R: io::Read>(source: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(source);
        let header = r.headers()?.iter().map(String::from).collect();
        let mut table = Table::new(header);
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Config(format!("non-numeric CSV field `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn csv_round_trip_is_bit_exact(values in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..40)) {
            let mut t = Table::new(vec!["t".into(), "x".into()]);
            for (i, v) in values.iter().enumerate() {
                t.push(vec![i as f64 * 0.1, *v]);
            }
            let mut buf = Vec::new();
            t.write_csv(&mut buf).unwrap();
            let back = Table::read_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back.header.clone(), t.header.clone());
            for (a, b) in back.rows.iter().zip(&t.rows) {
                for (x, y) in a.iter().zip(b) {
                    prop_assert_eq!(x.to_bits(), y.to_bits());
                }
            }
        }
    }

    #[test]
    fn header_line_and_decimal_point() {
        let mut t = Table::new(vec!["t".into(), "p_13".into()]);
        t.push(vec![0.0, 1.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,p_13"));
        assert_eq!(lines.next(), Some("0.0000000000000000e0,1.0000000000000000e0"));
    }
}
