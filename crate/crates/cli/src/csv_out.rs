use std::io::Write;

use crate::CliError;

/// Write `header` and `rows` as CSV: LF line endings, fields quoted only
/// when they contain a delimiter, quote or line break.
pub fn emit_csv<W: Write>(header: &[&str], rows: &[Vec<String>], out: W) -> Result<(), CliError> {
    if rows.is_empty() {
        return Err(CliError::EmptyRows);
    }
    if let Some((row, r)) = rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != header.len())
    {
        return Err(CliError::Ragged {
            row,
            len: r.len(),
            expected: header.len(),
        });
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
