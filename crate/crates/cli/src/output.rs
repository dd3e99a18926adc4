use std::io::{self, Write};

use serde::Serialize;

use crate::args::Format;

/// Output collected in order and written in one go. JSON output is one value
/// per line; CSV output gets a header row.
pub struct Output {
    format: Format,
    buf: Vec<u8>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            buf: Vec::new(),
        }
    }

    pub fn json<T: Serialize>(&mut self, value: &T) {
        serde_json::to_writer(&mut self.buf, value).expect("values serialize");
        self.buf.push(b'\n');
    }

    pub fn csv_row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(&mut self.buf);
        w.write_record(fields).expect("in-memory write");
        w.flush().expect("in-memory write");
    }

    /// Emits `rows` as JSON lines or as CSV under `header`.
    pub fn table<T: Serialize>(&mut self, header: &[&str], rows: &[(T, Vec<String>)]) {
        match self.format {
            Format::Json => rows.iter().for_each(|(v, _)| self.json(v)),
            Format::Csv => {
                self.csv_row(header);
                rows.iter().for_each(|(_, r)| self.csv_row(r));
            }
        }
    }

    pub fn write_to(self, mut sink: impl Write) -> io::Result<()> {
        sink.write_all(&self.buf)?;
        sink.flush()
    }
}
