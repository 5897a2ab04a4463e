//! Deterministic graph generators.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// The graph families the generator knows about.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphKind {
    /// `rows x cols` 4-neighbor lattice; vertex `r * cols + c` sits at row
    /// `r`, column `c`.
    Grid {
        rows: usize,
        cols: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Erdős–Rényi G(n, p).
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

pub fn generate(kind: GraphKind) -> Result<Graph> {
    match kind {
        GraphKind::Grid { rows, cols } => grid(rows, cols),
        GraphKind::Path { n } => path(n),
        GraphKind::Complete { n } => complete(n),
        GraphKind::Gnp { n, p, seed } => gnp(n, p, seed),
    }
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::input(format!(
            "grid dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    check_count(n)?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    check_count(n)?;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_count(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng::rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("vertex count must be positive"));
    }
    Ok(())
}
