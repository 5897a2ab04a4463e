//! Exact strong diameters of induced subgraphs via eccentricity bounding:
//! each BFS tightens lower and upper eccentricity bounds of every member,
//! and the search stops once the bounds on the diameter meet. On meshes
//! and paths this needs a handful of BFS runs instead of one per vertex.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::oracle::INFINITE_DIAMETER;

const UNSEEN: u32 = u32::MAX;

/// Piece-local compressed adjacency.
struct Induced {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Induced {
    fn new(g: &Graph, piece: &[usize], local: &mut [u32]) -> Self {
        for (i, &v) in piece.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut offsets = Vec::with_capacity(piece.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &v in piece {
            targets.extend(
                g.neighbors(v)
                    .iter()
                    .map(|&w| local[w])
                    .filter(|&w| w != UNSEEN),
            );
            offsets.push(targets.len());
        }
        for &v in piece {
            local[v] = UNSEEN;
        }
        Induced { offsets, targets }
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Fills `dist` and returns the eccentricity of `src`, or `None` if some
    /// vertex is unreachable.
    fn bfs(&self, src: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) -> Option<u32> {
        dist.fill(UNSEEN);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src as u32);
        let mut seen = 1;
        let mut ecc = 0;
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize];
            ecc = dv;
            let v = v as usize;
            for &w in &self.targets[self.offsets[v]..self.offsets[v + 1]] {
                if dist[w as usize] == UNSEEN {
                    dist[w as usize] = dv + 1;
                    seen += 1;
                    queue.push_back(w);
                }
            }
        }
        (seen == self.len()).then_some(ecc)
    }
}

/// Scratch space reusable across pieces of the same graph.
pub struct DiameterScratch {
    local: Vec<u32>,
}

impl DiameterScratch {
    pub fn new(n: usize) -> Self {
        DiameterScratch {
            local: vec![UNSEEN; n],
        }
    }
}

/// Exact strong diameter of the subgraph induced by `piece` (members must
/// be distinct and in range). [`INFINITE_DIAMETER`] if it is disconnected.
pub fn strong_diameter(g: &Graph, piece: &[usize], scratch: &mut DiameterScratch) -> usize {
    let h = Induced::new(g, piece, &mut scratch.local);
    let k = h.len();
    if k <= 1 {
        return 0;
    }
    let mut dist = vec![UNSEEN; k];
    let mut queue = VecDeque::with_capacity(k);
    let mut lo = vec![0u32; k];
    let mut hi = vec![u32::MAX; k];
    let mut candidates: Vec<usize> = (0..k).collect();
    let mut diam_lo = 0u32;
    let mut pick_high = true;
    let mut next = 0;

    loop {
        let Some(ecc) = h.bfs(next, &mut dist, &mut queue) else {
            return INFINITE_DIAMETER;
        };
        diam_lo = diam_lo.max(ecc);
        for &w in &candidates {
            let d = dist[w];
            lo[w] = lo[w].max(d.max(ecc - d));
            hi[w] = hi[w].min(ecc + d);
            diam_lo = diam_lo.max(lo[w]);
        }
        let mut diam_hi = diam_lo;
        candidates.retain(|&w| {
            let keep = hi[w] > diam_lo && lo[w] < hi[w];
            if keep {
                diam_hi = diam_hi.max(hi[w]);
            }
            keep
        });
        if diam_hi == diam_lo || candidates.is_empty() {
            return diam_lo as usize;
        }
        // Alternate between the likeliest peripheral and central vertices.
        next = if pick_high {
            *candidates.iter().max_by_key(|&&w| (hi[w], w)).unwrap()
        } else {
            *candidates.iter().min_by_key(|&&w| (lo[w], w)).unwrap()
        };
        pick_high = !pick_high;
    }
}

/// Eccentricity of `center` inside the piece, doubled: an upper bound on the
/// strong diameter by the triangle inequality.
pub fn radius_bound(
    g: &Graph,
    piece: &[usize],
    center: usize,
    scratch: &mut DiameterScratch,
) -> usize {
    let h = Induced::new(g, piece, &mut scratch.local);
    let Some(idx) = piece.iter().position(|&v| v == center) else {
        return INFINITE_DIAMETER;
    };
    let mut dist = vec![UNSEEN; h.len()];
    let mut queue = VecDeque::new();
    h.bfs(idx, &mut dist, &mut queue)
        .map_or(INFINITE_DIAMETER, |e| 2 * e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::piece_strong_diameter;
    use proptest::prelude::*;

    fn diam(g: &Graph, piece: &[usize]) -> usize {
        strong_diameter(g, piece, &mut DiameterScratch::new(g.n()))
    }

    #[test]
    fn basic_shapes() {
        let g = gen::grid(30, 40).unwrap();
        let all: Vec<usize> = (0..g.n()).collect();
        assert_eq!(diam(&g, &all), 29 + 39);
        let p = gen::path(100).unwrap();
        assert_eq!(diam(&p, &(0..100).collect::<Vec<_>>()), 99);
        assert_eq!(diam(&p, &[3, 4, 5]), 2);
        assert_eq!(diam(&p, &[3, 5]), INFINITE_DIAMETER);
        assert_eq!(diam(&p, &[7]), 0);
        let k = gen::complete(12).unwrap();
        assert_eq!(diam(&k, &(0..12).collect::<Vec<_>>()), 1);
    }

    #[test]
    fn radius_bound_dominates() {
        let g = gen::grid(9, 9).unwrap();
        let all: Vec<usize> = (0..81).collect();
        let mut scratch = DiameterScratch::new(81);
        assert_eq!(radius_bound(&g, &all, 40, &mut scratch), 16);
        assert_eq!(radius_bound(&g, &all, 0, &mut scratch), 32);
        assert_eq!(strong_diameter(&g, &all, &mut scratch), 16);
    }

    proptest! {
        #[test]
        fn matches_all_pairs(n in 2usize..40, p in 0.05f64..0.5, seed in any::<u64>(), mask in any::<u64>()) {
            let g = gen::gnp(n, p, seed).unwrap();
            let piece: Vec<usize> = (0..n).filter(|v| mask >> (v % 64) & 1 == 1 || *v == 0).collect();
            prop_assert_eq!(diam(&g, &piece), piece_strong_diameter(&g, &piece).unwrap());
        }
    }
}
