//! Reading graph6 streams, one graph per line.

use std::io::BufRead;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::parse_graph6_bytes;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CatalogOptions {
    /// Report malformed lines as warnings instead of failing.
    pub skip_bad: bool,
    /// Accept graphs of different orders in one stream.
    pub allow_mixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// 1-based line number in the input.
    pub line: usize,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub warnings: Vec<CatalogWarning>,
}

impl Catalog {
    pub fn graphs(&self) -> Vec<Graph> {
        self.entries.iter().map(|e| e.graph.clone()).collect()
    }

    /// The common order of the graphs, if there is at least one and all agree.
    pub fn order(&self) -> Option<usize> {
        let n = self.entries.first()?.graph.n();
        self.entries.iter().all(|e| e.graph.n() == n).then_some(n)
    }
}

/// Reads graph6 lines in input order. Blank lines are ignored.
///
/// A malformed line aborts with a parse error whose offset is the byte
/// position in the stream, unless `skip_bad` is set. Graphs whose order
/// differs from the first graph are rejected unless `allow_mixed` is set.
pub fn read_catalog<R: BufRead>(mut reader: R, options: CatalogOptions) -> Result<Catalog> {
    let mut catalog = Catalog::default();
    let mut order: Option<usize> = None;
    let mut buf = Vec::new();
    let mut offset = 0usize;
    let mut line = 0usize;
    loop {
        buf.clear();
        let read = reader
            .read_until(b'\n', &mut buf)
            .map_err(|e| Error::invalid(format!("read failed after line {line}: {e}")))?;
        if read == 0 {
            break;
        }
        line += 1;
        let start = offset;
        offset += read;
        let mut text: &[u8] = &buf;
        while let Some((&last, rest)) = text.split_last() {
            if last == b'\n' || last == b'\r' {
                text = rest;
            } else {
                break;
            }
        }
        if text.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let bad = |catalog: &mut Catalog, at: usize, message: String| -> Result<()> {
            if options.skip_bad {
                catalog.warnings.push(CatalogWarning { line, message });
                Ok(())
            } else {
                Err(Error::parse(at, format!("line {line}: {message}")))
            }
        };
        let graph = match parse_graph6_bytes(text) {
            Ok(g) => g,
            Err(Error::Parse { offset: o, message }) => {
                bad(&mut catalog, start + o, message)?;
                continue;
            }
            Err(e) => {
                bad(&mut catalog, start, e.to_string())?;
                continue;
            }
        };
        match order {
            Some(n) if n != graph.n() && !options.allow_mixed => {
                return Err(Error::invalid(format!(
                    "line {line}: graph has {} vertices but earlier graphs have {n}; pass --allow-mixed to accept",
                    graph.n()
                )));
            }
            None => order = Some(graph.n()),
            _ => {}
        }
        catalog.entries.push(CatalogEntry { line, graph });
    }
    Ok(catalog)
}

pub fn parse_catalog(text: &str, options: CatalogOptions) -> Result<Catalog> {
    read_catalog(text.as_bytes(), options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_lines() {
        let c = parse_catalog("C~\n\nC?\r\nCw\n", CatalogOptions::default()).unwrap();
        let lines: Vec<usize> = c.entries.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![1, 3, 4]);
        assert_eq!(c.entries[0].graph, Graph::complete(4));
        assert_eq!(c.entries[1].graph, Graph::empty(4));
        assert_eq!(c.order(), Some(4));
    }

    #[test]
    fn empty_input() {
        let c = parse_catalog("", CatalogOptions::default()).unwrap();
        assert!(c.entries.is_empty() && c.warnings.is_empty());
        assert_eq!(c.order(), None);
    }

    #[test]
    fn malformed_line() {
        let text = "C~\nC\u{7f}\nC?\n";
        let err = parse_catalog(text, CatalogOptions::default()).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert!(message.starts_with("line 2:"), "{message}");
                assert!((3..6).contains(&offset), "{offset}");
            }
            other => panic!("{other:?}"),
        }
        let opts = CatalogOptions {
            skip_bad: true,
            ..CatalogOptions::default()
        };
        let c = parse_catalog(text, opts).unwrap();
        assert_eq!(c.entries.len(), 2);
        assert_eq!(c.warnings.len(), 1);
        assert_eq!(c.warnings[0].line, 2);
    }

    #[test]
    fn mixed_orders() {
        let text = "C~\nA_\n";
        assert!(matches!(
            parse_catalog(text, CatalogOptions::default()),
            Err(Error::InvalidInput(_))
        ));
        let opts = CatalogOptions {
            allow_mixed: true,
            ..CatalogOptions::default()
        };
        let c = parse_catalog(text, opts).unwrap();
        assert_eq!(c.entries.len(), 2);
        assert_eq!(c.order(), None);
    }
}
