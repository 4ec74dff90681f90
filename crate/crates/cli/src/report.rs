//! Row-oriented report output in CSV, JSON or plain text.

use std::io::{self, Write};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

/// One line of a `counts`, `table` or `verify` report. The CSV header and the
/// JSON field names are this struct's field names, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u32,
    pub s00: u64,
    pub s01: u64,
    pub s10: u64,
    pub s11: u64,
    pub method: String,
    pub elapsed_ms: u64,
}

impl CountRow {
    pub fn new(n: u32, counts: [u64; 4], method: &str, elapsed_ms: u64) -> Self {
        let [s00, s01, s10, s11] = counts;
        Self { n, s00, s01, s10, s11, method: method.to_owned(), elapsed_ms }
    }

    pub fn counts(&self) -> [u64; 4] {
        [self.s00, self.s01, self.s10, self.s11]
    }
}

pub fn write_csv<T: Serialize>(out: impl Write, rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.flush()
}

pub fn write_json<T: Serialize + ?Sized>(mut out: impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::other)?;
    writeln!(out)
}

pub fn write_count_rows(mut out: impl Write, format: OutputFormat, rows: &[CountRow]) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, rows),
        OutputFormat::Json => write_json(out, rows),
        OutputFormat::Text => {
            writeln!(
                out,
                "{:>3} {:>10} {:>10} {:>10} {:>10}  {:<10} {:>10}",
                "n", "S_{0,0}", "S_{0,1}", "S_{1,0}", "S_{1,1}", "method", "elapsed_ms"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:>3} {:>10} {:>10} {:>10} {:>10}  {:<10} {:>10}",
                    r.n, r.s00, r.s01, r.s10, r.s11, r.method, r.elapsed_ms
                )?;
            }
            Ok(())
        }
    }
}
