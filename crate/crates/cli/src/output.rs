//! CSV emission helpers.
//!
//! Records are comma-separated with a header row, UTF-8, LF line endings.
//! Floats are printed in shortest exponential form, which round-trips to the
//! identical bit pattern on parse (up to 17 significant digits).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Round-trippable float formatting for CSV fields.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

/// Open the output target: a file path or stdout when absent.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Write one CSV line from pre-formatted fields.
pub fn write_row<W: Write>(w: &mut W, fields: &[&str]) -> io::Result<()> {
    w.write_all(fields.join(",").as_bytes())?;
    w.write_all(b"\n")
}
