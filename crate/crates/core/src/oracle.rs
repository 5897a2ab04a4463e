//! Brute-force reference implementations used to certify the engine.
//!
//! Everything here is deliberately naive: one full BFS per source vertex,
//! `O(n m)` time. Keep inputs below a couple of thousand vertices.

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHED};
use crate::shifts::ShiftAssignment;

/// Distance value returned for pieces whose induced subgraph is disconnected.
pub const INFINITE_DIAMETER: usize = usize::MAX;

/// Assigns every vertex to the center minimizing `dist(u, v) - delta_u`
/// over its connected component, breaking ties by tie-break rank.
///
/// The real value `dist(u, v) + delta_max - delta_u` is compared as the
/// exact pair `(dist + start_level(u), rank(u))`: start times are split into
/// an integer level and a fraction in `[0, 1)`, and rank orders fractions.
pub fn oracle_assign(g: &Graph, s: &ShiftAssignment) -> Decomposition {
    assert_eq!(g.n(), s.n(), "shift count must match vertex count");
    let n = g.n();
    let mut best: Vec<Option<(u64, usize)>> = vec![None; n];
    for u in 0..n {
        let dist = g.bfs(u);
        let base = s.start_level(u);
        let rank = s.rank(u);
        for v in 0..n {
            if dist[v] == UNREACHED {
                continue;
            }
            let key = (dist[v] as u64 + base, rank);
            if best[v].is_none_or(|b| key < b) {
                best[v] = Some(key);
            }
        }
    }
    Decomposition::from_owner(
        best.into_iter()
            .map(|b| s.vertex_at_rank(b.expect("every vertex reaches itself").1))
            .collect(),
    )
}

/// Shifted distance `dist(u, v) - delta_u` in floating point, `None` when
/// `v` is unreachable from `u`.
pub fn shifted_distance(g: &Graph, s: &ShiftAssignment, u: usize, v: usize) -> Option<f64> {
    let d = g.bfs(u)[v];
    (d != UNREACHED).then(|| d as f64 - s.delta(u))
}

/// Hop distances from `source` using only vertices in `member`.
pub(crate) fn induced_bfs(g: &Graph, member: &[bool], source: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHED; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if member[w] && dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Exact strong diameter of `piece` by BFS from every member.
/// Returns [`INFINITE_DIAMETER`] if the induced subgraph is disconnected.
pub fn piece_strong_diameter(g: &Graph, piece: &[usize]) -> Result<usize> {
    if piece.is_empty() {
        return Err(Error::input("piece is empty"));
    }
    if let Some(&v) = piece.iter().find(|&&v| v >= g.n()) {
        return Err(Error::input(format!("vertex {v} is outside the graph")));
    }
    let mut member = vec![false; g.n()];
    for &v in piece {
        member[v] = true;
    }
    let mut diameter = 0;
    for &src in piece {
        let dist = induced_bfs(g, &member, src);
        for &v in piece {
            if dist[v] == UNREACHED {
                return Ok(INFINITE_DIAMETER);
            }
            diameter = diameter.max(dist[v]);
        }
    }
    Ok(diameter)
}

/// A cut edge whose owner is more than 1 away from the minimum shifted
/// distance to the edge midpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessViolation {
    pub edge: (usize, usize),
    pub owner: usize,
    /// Shifted distance of `owner` to the midpoint minus the minimum.
    pub excess: f64,
}

/// For every cut edge `ab`, checks that both owners' shifted distances to
/// the midpoint `w` of `ab` are within 1 of the minimum over all vertices.
///
/// `dist(x, w) = min(dist(x, a), dist(x, b)) + 1/2` is handled doubled, so
/// the half-integer parts are exact. Distances are real-valued, so this
/// is meaningful for fractional tie-breaking.
pub fn midpoint_witness_check(
    g: &Graph,
    s: &ShiftAssignment,
    d: &Decomposition,
) -> Vec<WitnessViolation> {
    const SLACK: f64 = 1e-9;
    let mut violations = Vec::new();
    for (a, b) in d.cut_edges(g) {
        let from_a = g.bfs(a);
        let from_b = g.bfs(b);
        // doubled shifted distance of x to the midpoint
        let doubled = |x: usize| {
            let hops = from_a[x].min(from_b[x]);
            (hops != UNREACHED).then(|| (2 * hops + 1) as f64 - 2.0 * s.delta(x))
        };
        let min = (0..g.n()).filter_map(doubled).fold(f64::INFINITY, f64::min);
        for owner in [d.owner_of(a), d.owner_of(b)] {
            let excess = doubled(owner).map_or(f64::INFINITY, |v| (v - min) / 2.0);
            if excess > 1.0 + SLACK {
                violations.push(WitnessViolation {
                    edge: (a, b),
                    owner,
                    excess,
                });
            }
        }
    }
    violations
}
