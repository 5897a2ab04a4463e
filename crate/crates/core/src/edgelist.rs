//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! p <n> <m>
//! <u> <v>        (exactly m lines, 0-based, each undirected edge once)
//! ```

use std::collections::HashSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn load_edgelist<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match header {
            None => {
                if fields.next() != Some("p") {
                    return Err(Error::parse(line_no, "expected header `p <n> <m>`"));
                }
                let n = parse_field(fields.next(), line_no, "vertex count")?;
                let m = parse_field(fields.next(), line_no, "edge count")?;
                if fields.next().is_some() {
                    return Err(Error::parse(line_no, "trailing fields after header"));
                }
                header = Some((n, m));
                edges.reserve(m);
            }
            Some((n, m)) => {
                let u = parse_field(fields.next(), line_no, "edge endpoint")?;
                let v = parse_field(fields.next(), line_no, "edge endpoint")?;
                if fields.next().is_some() {
                    return Err(Error::parse(line_no, "trailing fields after edge"));
                }
                if edges.len() == m {
                    return Err(Error::parse(
                        line_no,
                        format!("more edges than the {m} declared"),
                    ));
                }
                if u >= n || v >= n {
                    return Err(Error::parse(
                        line_no,
                        format!("edge ({u}, {v}) outside vertex range 0..{n}"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line_no, format!("duplicate edge ({u}, {v})")));
                }
                edges.push((u, v));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing header `p <n> <m>`"))?;
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges)
}

/// Writes the canonical form: header, then edges with `u < v` in sorted order.
pub fn save_edgelist<W: Write>(g: &Graph, mut writer: W) -> Result<()> {
    writeln!(writer, "p {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    writer.flush()?;
    Ok(())
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let field = field.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{field}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn load(text: &str) -> Result<Graph> {
        load_edgelist(text.as_bytes())
    }

    #[test]
    fn minimal_file() {
        let g = load("p 2 1\n0 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn comments_are_skipped() {
        let g = load("# made by hand\np 3 2\n# middle\n1 2\n0 1\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn canonical_round_trip_is_byte_exact() {
        let text = "p 4 3\n0 1\n0 3\n2 3\n";
        let mut out = Vec::new();
        save_edgelist(&load(text).unwrap(), &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), text);

        let g = gen::grid(4, 5).unwrap();
        let mut buf = Vec::new();
        save_edgelist(&g, &mut buf).unwrap();
        assert_eq!(load_edgelist(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn count_mismatch() {
        let err = load("p 2 2\n0 1\n").unwrap_err();
        assert!(
            err.to_string().contains("declared 2 edges, found 1"),
            "{err}"
        );
        let err = load("p 3 1\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert!(matches!(
            load("q 2 1\n0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load("p 2 1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load("p 2 1\n0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load("p 2 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load("p 3 2\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(load(""), Err(Error::Parse { .. })));
    }
}
