//! Textual DRAT proof emission.
//!
//! One line per event: learnt clauses as their literals followed by `0`,
//! deletions with a `d ` prefix. An unsatisfiability proof ends with the
//! empty clause line `0`.

use std::io::{self, Write};

use crate::lit::Lit;

pub struct DratWriter<W: Write> {
    sink: W,
}

impl<W: Write> DratWriter<W> {
    pub fn new(sink: W) -> DratWriter<W> {
        DratWriter { sink }
    }

    /// Emits a learnt clause. An empty slice emits the empty clause line.
    pub fn learn(&mut self, lits: &[Lit]) -> io::Result<()> {
        self.line("", lits)
    }

    /// Emits a deletion line.
    pub fn delete(&mut self, lits: &[Lit]) -> io::Result<()> {
        self.line("d ", lits)
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.sink.flush()
    }

    pub fn into_inner(self) -> W {
        self.sink
    }

    fn line(&mut self, prefix: &str, lits: &[Lit]) -> io::Result<()> {
        let mut buf = String::with_capacity(prefix.len() + 8 * lits.len() + 2);
        buf.push_str(prefix);
        for &l in lits {
            buf.push_str(&l.to_dimacs().to_string());
            buf.push(' ');
        }
        buf.push('0');
        buf.push('\n');
        self.sink.write_all(buf.as_bytes())
    }
}
