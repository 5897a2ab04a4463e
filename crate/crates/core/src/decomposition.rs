use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Owner value of a vertex that no piece claimed.
pub const UNASSIGNED: usize = usize::MAX;

/// A vertex partition given by each vertex's center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    owner: Vec<usize>,
}

impl Decomposition {
    /// Wraps an owner array as-is. Nothing is checked here; see
    /// [`crate::validate::validate`].
    pub fn from_owner(owner: Vec<usize>) -> Self {
        Decomposition { owner }
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self) -> &[usize] {
        &self.owner
    }

    pub fn owner_of(&self, v: usize) -> usize {
        self.owner[v]
    }

    pub fn into_owner(self) -> Vec<usize> {
        self.owner
    }

    /// Vertices that own themselves, ascending.
    pub fn centers(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.owner[v] == v).collect()
    }

    /// Groups vertices by owner, sorted by owner id; members ascending.
    /// Unassigned vertices are left out.
    pub fn pieces(&self) -> Vec<(usize, Vec<usize>)> {
        let mut order: Vec<usize> = (0..self.n())
            .filter(|&v| self.owner[v] != UNASSIGNED)
            .collect();
        order.sort_by_key(|&v| (self.owner[v], v));
        let mut pieces: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in order {
            let c = self.owner[v];
            match pieces.last_mut() {
                Some((last, members)) if *last == c => members.push(v),
                _ => pieces.push((c, vec![v])),
            }
        }
        pieces
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces().len()
    }

    /// Edges whose endpoints have different owners.
    pub fn cut_edges<'g>(&'g self, g: &'g Graph) -> impl Iterator<Item = (usize, usize)> + 'g {
        g.edges()
            .filter(move |&(u, v)| self.owner[u] != self.owner[v])
    }

    pub fn count_cut_edges(&self, g: &Graph) -> usize {
        self.cut_edges(g).count()
    }

    /// Writes one `<vertex> <center>` line per vertex, in vertex order.
    pub fn write_labels<W: Write>(&self, mut w: W) -> Result<()> {
        for (v, c) in self.owner.iter().enumerate() {
            writeln!(w, "{v} {c}")?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a labels file for a graph with `n` vertices. Vertices without a
    /// line come back as [`UNASSIGNED`]; centers are not range-checked here.
    pub fn read_labels<R: BufRead>(reader: R, n: usize) -> Result<Self> {
        let mut owner = vec![UNASSIGNED; n];
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(v), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(line_no, "expected `<vertex> <center>`"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("invalid vertex id `{s}`")))
            };
            let (v, c) = (parse(v)?, parse(c)?);
            if v >= n {
                return Err(Error::parse(line_no, format!("vertex {v} outside 0..{n}")));
            }
            if owner[v] != UNASSIGNED {
                return Err(Error::parse(line_no, format!("vertex {v} labelled twice")));
            }
            owner[v] = c;
        }
        Ok(Decomposition { owner })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn pieces_and_cuts() {
        let d = Decomposition::from_owner(vec![1, 1, 1, 3, 4]);
        assert_eq!(d.centers(), vec![1, 3, 4]);
        assert_eq!(
            d.pieces(),
            vec![(1, vec![0, 1, 2]), (3, vec![3]), (4, vec![4])]
        );
        let g = gen::path(5).unwrap();
        assert_eq!(d.cut_edges(&g).collect::<Vec<_>>(), vec![(2, 3), (3, 4)]);
    }

    #[test]
    fn labels_round_trip() {
        let d = Decomposition::from_owner(vec![1, 1, 1, 3, 4]);
        let mut buf = Vec::new();
        d.write_labels(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "0 1\n1 1\n2 1\n3 3\n4 4\n"
        );
        assert_eq!(Decomposition::read_labels(buf.as_slice(), 5).unwrap(), d);
    }

    #[test]
    fn labels_parse_errors_and_holes() {
        let d = Decomposition::read_labels("0 0\n2 0\n".as_bytes(), 3).unwrap();
        assert_eq!(d.owner(), &[0, UNASSIGNED, 0]);
        assert!(Decomposition::read_labels("3 0\n".as_bytes(), 3).is_err());
        assert!(Decomposition::read_labels("0 0\n0 1\n".as_bytes(), 3).is_err());
        assert!(Decomposition::read_labels("0\n".as_bytes(), 3).is_err());
    }

    #[test]
    fn unassigned_vertices_are_skipped() {
        let d = Decomposition::from_owner(vec![0, UNASSIGNED, 0]);
        assert_eq!(d.pieces(), vec![(0, vec![0, 2])]);
    }
}
