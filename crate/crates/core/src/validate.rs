//! Structural checks of a decomposition: partition-ness, connected pieces,
//! cut size and strong diameter against thresholds.

use serde::Serialize;

use crate::decomposition::{Decomposition, UNASSIGNED};
use crate::diameter::{radius_bound, strong_diameter, DiameterScratch};
use crate::engine::{default_cut_threshold, default_diam_threshold};
use crate::exec::{map_indices, Execution};
use crate::graph::Graph;
use crate::oracle::INFINITE_DIAMETER;

/// How piece diameters are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiameterMethod {
    /// Exact strong diameter of every piece.
    #[default]
    Exact,
    /// Twice the eccentricity of the owning center inside its piece.
    RadiusBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub is_partition: bool,
    pub pieces_connected: bool,
    pub pieces: usize,
    pub cut_edges: usize,
    pub cut_fraction: f64,
    /// [`INFINITE_DIAMETER`] when some piece is disconnected.
    pub max_strong_diameter: usize,
    pub cut_threshold: f64,
    pub diam_threshold: f64,
    pub pass_cut: bool,
    pub pass_diam: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    /// Partition, connected pieces, and both thresholds.
    pub fn is_ok(&self) -> bool {
        self.is_partition && self.pieces_connected && self.pass_cut && self.pass_diam
    }
}

/// Validates with exact diameters, `2 beta m` as the cut threshold and
/// `diam_threshold` (default `4 ln(n) / beta`) for the diameter.
pub fn validate(
    g: &Graph,
    d: &Decomposition,
    beta: f64,
    diam_threshold: Option<f64>,
) -> ValidationReport {
    validate_with(
        g,
        d,
        beta,
        diam_threshold,
        DiameterMethod::Exact,
        Execution::default(),
    )
}

pub fn validate_with(
    g: &Graph,
    d: &Decomposition,
    beta: f64,
    diam_threshold: Option<f64>,
    method: DiameterMethod,
    exec: Execution,
) -> ValidationReport {
    let n = g.n();
    let cut_threshold = default_cut_threshold(g.m(), beta);
    let diam_threshold = diam_threshold.unwrap_or_else(|| default_diam_threshold(n, beta));
    let mut violations = Vec::new();

    if d.n() != n {
        violations.push(format!("labels cover {} vertices, graph has {n}", d.n()));
        return ValidationReport {
            is_partition: false,
            pieces_connected: false,
            pieces: 0,
            cut_edges: 0,
            cut_fraction: 0.0,
            max_strong_diameter: INFINITE_DIAMETER,
            cut_threshold,
            diam_threshold,
            pass_cut: false,
            pass_diam: false,
            violations,
        };
    }

    let owner = d.owner();
    for v in 0..n {
        let c = owner[v];
        if c == UNASSIGNED {
            violations.push(format!("vertex {v} is unassigned"));
        } else if c >= n {
            violations.push(format!("vertex {v} has out-of-range owner {c}"));
        } else if owner[c] != c {
            violations.push(format!("vertex {v} is owned by {c}, which is not a center"));
        }
    }
    let is_partition = violations.is_empty();

    let pieces = d.pieces();
    let pieces: Vec<_> = pieces.into_iter().filter(|(c, _)| *c < n).collect();
    let diameters = map_indices(exec, pieces.len(), |i| {
        let (center, members) = &pieces[i];
        let mut scratch = DiameterScratch::new(n);
        match method {
            DiameterMethod::Exact => strong_diameter(g, members, &mut scratch),
            DiameterMethod::RadiusBound => radius_bound(g, members, *center, &mut scratch),
        }
    });
    for ((center, _), &diam) in pieces.iter().zip(&diameters) {
        if diam == INFINITE_DIAMETER {
            violations.push(format!("piece of center {center} is not connected"));
        }
    }
    let pieces_connected = diameters.iter().all(|&x| x != INFINITE_DIAMETER);
    let max_strong_diameter = diameters.iter().copied().max().unwrap_or(0);

    let cut_edges = d.count_cut_edges(g);
    let cut_fraction = if g.m() == 0 {
        0.0
    } else {
        cut_edges as f64 / g.m() as f64
    };

    ValidationReport {
        is_partition,
        pieces_connected,
        pieces: pieces.len(),
        cut_edges,
        cut_fraction,
        max_strong_diameter,
        cut_threshold,
        diam_threshold,
        pass_cut: cut_edges as f64 <= cut_threshold,
        pass_diam: max_strong_diameter != INFINITE_DIAMETER
            && max_strong_diameter as f64 <= diam_threshold,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn single_piece() {
        let g = gen::grid(5, 5).unwrap();
        let r = validate(&g, &Decomposition::from_owner(vec![12; 25]), 0.1, None);
        assert!(r.is_partition && r.pieces_connected);
        assert_eq!(r.cut_edges, 0);
        assert_eq!(r.max_strong_diameter, 8);
        assert_eq!(r.pieces, 1);
    }

    #[test]
    fn worked_example() {
        let g = gen::path(5).unwrap();
        let r = validate(
            &g,
            &Decomposition::from_owner(vec![1, 1, 1, 3, 4]),
            0.5,
            None,
        );
        assert!(r.is_partition && r.pieces_connected);
        assert_eq!(r.cut_edges, 2);
        assert_eq!(r.cut_fraction, 0.5);
        assert_eq!(r.max_strong_diameter, 2);
        assert!(r.pass_cut);
        assert!(r.is_ok());
    }

    #[test]
    fn hole_is_not_a_partition() {
        let g = gen::path(3).unwrap();
        let r = validate(
            &g,
            &Decomposition::from_owner(vec![0, UNASSIGNED, 2]),
            0.5,
            None,
        );
        assert!(!r.is_partition);
        assert!(!r.is_ok());
    }

    #[test]
    fn non_center_owner_and_disconnected_piece() {
        let g = gen::path(4).unwrap();
        let r = validate(&g, &Decomposition::from_owner(vec![1, 2, 2, 3]), 0.5, None);
        assert!(!r.is_partition);
        assert!(r.violations[0].contains("not a center"));

        let r = validate(&g, &Decomposition::from_owner(vec![0, 1, 0, 3]), 0.5, None);
        assert!(r.is_partition);
        assert!(!r.pieces_connected);
        assert_eq!(r.max_strong_diameter, INFINITE_DIAMETER);
        assert!(!r.pass_diam);
    }

    #[test]
    fn size_mismatch() {
        let g = gen::path(4).unwrap();
        let r = validate(&g, &Decomposition::from_owner(vec![0, 0]), 0.5, None);
        assert!(!r.is_partition);
    }

    #[test]
    fn thresholds() {
        let g = gen::path(11).unwrap();
        let owner: Vec<usize> = (0..11).collect();
        let r = validate(&g, &Decomposition::from_owner(owner), 0.1, Some(3.0));
        assert_eq!(r.cut_edges, 10);
        assert_eq!(r.cut_threshold, 2.0);
        assert!(!r.pass_cut);
        assert!(r.pass_diam);
        let r = validate(&g, &Decomposition::from_owner(vec![5; 11]), 0.1, Some(3.0));
        assert!(r.pass_cut);
        assert!(!r.pass_diam);
        let r = validate_with(
            &g,
            &Decomposition::from_owner(vec![0; 11]),
            0.1,
            None,
            DiameterMethod::RadiusBound,
            Execution::Sequential,
        );
        assert_eq!(r.max_strong_diameter, 20);
    }
}
