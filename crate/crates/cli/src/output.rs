//! Where tables and summaries go.
//!
//! With `--output FILE` the table goes to the file and summary lines to
//! stdout. Without it both share stdout, so summary lines are written as
//! `#` comments to keep the stream parseable as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub struct Sink {
    table: Box<dyn Write>,
    to_stdout: bool,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            Some(p) => Self {
                table: Box::new(BufWriter::new(File::create(p)?)),
                to_stdout: false,
            },
            None => Self {
                table: Box::new(BufWriter::new(io::stdout())),
                to_stdout: true,
            },
        })
    }

    /// `# ` header line, always part of the table stream.
    pub fn comment(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.table, "# {line}")
    }

    /// Human-readable summary line.
    pub fn summary(&mut self, line: &str) -> io::Result<()> {
        if self.to_stdout {
            writeln!(self.table, "# {line}")
        } else {
            println!("{line}");
            Ok(())
        }
    }

    /// Plain text, for reports that are not tables.
    pub fn write_text(&mut self, text: &str) -> io::Result<()> {
        self.table.write_all(text.as_bytes())
    }

    pub fn csv(&mut self) -> csv::Writer<&mut dyn Write> {
        csv::Writer::from_writer(&mut *self.table)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.table.flush()
    }
}

/// Shortest round-trip representation, `e` notation.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}
