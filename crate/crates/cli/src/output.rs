// SPDX-License-Identifier: Apache-2.0

//! Record writers for the JSON-lines, CSV and pretty formats.

use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// Writes records in one of the output formats.
///
/// Each record supplies a JSON form, flat CSV rows and a text line.
pub struct Sink<W: Write> {
    format: Format,
    out: W,
    csv_header_written: bool,
}

/// A record that can be written in every format.
pub trait Record {
    /// The JSON document of the record on one line.
    fn json(&self) -> serde_json::Result<String>;
    /// Column names of the CSV form.
    fn csv_header() -> Vec<&'static str>
    where
        Self: Sized;
    /// CSV rows, each with cells in header order.
    fn csv_rows(&self) -> Vec<Vec<String>>;
    /// One line of human-readable text.
    fn pretty(&self) -> String;
}

impl<W: Write> Sink<W> {
    /// A sink writing to `out`.
    pub fn new(format: Format, out: W) -> Self {
        Sink {
            format,
            out,
            csv_header_written: false,
        }
    }

    /// Writes a line that only appears in the JSON and pretty formats.
    pub fn header<T: Serialize>(&mut self, json: &T, pretty: &str) -> Result<(), CliError> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(json)?)?,
            Format::Pretty => writeln!(self.out, "{pretty}")?,
            Format::Csv => {}
        }
        Ok(())
    }

    /// Writes one record.
    pub fn record<R: Record>(&mut self, r: &R) -> Result<(), CliError> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", r.json()?)?,
            Format::Pretty => writeln!(self.out, "{}", r.pretty())?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.out);
                if !self.csv_header_written {
                    w.write_record(R::csv_header())?;
                    self.csv_header_written = true;
                }
                for row in r.csv_rows() {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    /// Writes a line that only appears in the pretty format.
    pub fn note(&mut self, line: &str) -> Result<(), CliError> {
        if self.format == Format::Pretty {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }

    /// Flushes buffered output.
    pub fn finish(mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}

/// Joins parts with commas.
pub fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// A cell for an optional value.
pub fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}
