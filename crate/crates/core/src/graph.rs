//! Immutable undirected, unweighted graphs in compressed adjacency form.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Marker for vertices not reached by a breadth-first search.
pub const UNREACHED: usize = usize::MAX;

/// An undirected, unweighted simple graph on vertices `0..n`.
///
/// Neighbor lists are stored sorted in one flat array indexed by `offsets`,
/// so `neighbors(v)` is `targets[offsets[v]..offsets[v + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an undirected edge list, removing duplicate and
    /// reversed copies of the same edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degree = vec![0usize; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge {i} ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("edge {i} is a self-loop at {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }

        // Sort and dedup each list, compacting in place.
        let mut compact = Vec::with_capacity(n + 1);
        compact.push(0);
        let mut write = 0;
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            targets[lo..hi].sort_unstable();
            let mut last = None;
            for read in lo..hi {
                let t = targets[read];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            compact.push(write);
        }
        targets.truncate(write);

        Ok(Graph {
            offsets: compact,
            targets,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Iterates every undirected edge once as `(u, v)` with `u < v`, in
    /// lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Checks the structural invariants: monotone offsets, sorted
    /// duplicate-free lists, no self-loops, and symmetric adjacency.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if self.offsets[0] != 0 || *self.offsets.last().unwrap() != self.targets.len() {
            return Err(Error::input("offsets do not span the neighbor array"));
        }
        if !self.targets.len().is_multiple_of(2) {
            return Err(Error::input("odd number of directed entries"));
        }
        for v in 0..n {
            if self.offsets[v] > self.offsets[v + 1] {
                return Err(Error::input(format!("offsets decrease at vertex {v}")));
            }
            let nbrs = self.neighbors(v);
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::input(format!(
                        "neighbor list of {v} is unsorted or has duplicates"
                    )));
                }
            }
            for &w in nbrs {
                if w >= n {
                    return Err(Error::input(format!("vertex {v} has neighbor {w} >= n")));
                }
                if w == v {
                    return Err(Error::input(format!("self-loop at {v}")));
                }
                if !self.has_edge(w, v) {
                    return Err(Error::input(format!("edge ({v}, {w}) has no reverse")));
                }
            }
        }
        Ok(())
    }

    /// Hop distances from `source`; unreachable vertices get [`UNREACHED`].
    pub fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph on the same vertex set keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        Graph::from_edges(self.n(), &edges).expect("edges of a valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn duplicates_and_reversals_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        g.check_invariants().unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn lone_vertex() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn bfs_marks_unreachable() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.bfs(0), vec![0, 1, UNREACHED, UNREACHED]);
    }
}
