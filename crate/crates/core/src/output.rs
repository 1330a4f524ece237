//! CSV tables: comma separated, header row, LF line endings.
//!
//! Numbers use Rust's shortest round-trip formatting, so parsing a file and
//! writing it again reproduces it byte for byte.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

fn csv_error(path: &Path, e: csv::Error) -> Error {
    Error::io(path, std::io::Error::other(e))
}

pub fn write_table<W, I>(out: W, headers: &[&str], rows: I) -> std::result::Result<(), csv::Error>
where
    W: Write,
    I: IntoIterator,
    I::Item: AsRef<[f64]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row.as_ref().iter().map(f64::to_string))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table_file<I>(path: &Path, headers: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator,
    I::Item: AsRef<[f64]>,
{
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_table(BufWriter::new(file), headers, rows).map_err(|e| csv_error(path, e))
}

/// Header and numeric rows of a table written by [`write_table`].
pub fn read_table<R: Read>(
    input: R,
) -> std::result::Result<(Vec<String>, Vec<Vec<f64>>), csv::Error> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|e| csv::Error::from(std::io::Error::other(format!("'{v}': {e}"))))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((headers, rows))
}

pub fn read_table_file(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_table(file).map_err(|e| csv_error(path, e))
}
