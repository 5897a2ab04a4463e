//! Exponential shifts and the tie-break order derived from them.
//!
//! Vertex `u` starts its search at real time `t_u = delta_max - delta_u`.
//! The integer part `floor(t_u)` is the BFS round in which `u` may become a
//! center; the fractional part orders claims that land in the same round.
//! In permutation mode that fractional order is replaced by a uniformly
//! random permutation of the vertices.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// How claims with equal integer arrival rounds are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Smaller fractional part of `delta_max - delta_u` wins.
    #[default]
    Fractional,
    /// Smaller rank in a seeded random permutation wins.
    Permutation,
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Fractional => "fractional",
            TieBreak::Permutation => "permutation",
        })
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fractional" => Ok(TieBreak::Fractional),
            "permutation" => Ok(TieBreak::Permutation),
            other => Err(Error::input(format!("unknown tie-break mode `{other}`"))),
        }
    }
}

/// Per-vertex shifts plus everything the partition engine derives from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftAssignment {
    beta: f64,
    mode: TieBreak,
    delta: Vec<f64>,
    delta_max: f64,
    start_level: Vec<u64>,
    fraction: Vec<f64>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl ShiftAssignment {
    /// Draws `n` i.i.d. Exp(`beta`) shifts by inversion, `-ln(U) / beta`
    /// with `U` uniform on `(0, 1]`.
    ///
    /// In fractional mode an exact collision between two keys causes the
    /// whole vector to be redrawn from the next seed-derived stream.
    pub fn sample(n: usize, beta: f64, seed: u64, mode: TieBreak) -> Result<Self> {
        check_beta(beta)?;
        if n == 0 {
            return Err(Error::input("cannot sample shifts for zero vertices"));
        }
        for attempt in 0u64.. {
            let mut rng = rng::rng(if attempt == 0 {
                seed
            } else {
                rng::derive_seed(seed, attempt)
            });
            let delta = draw_exponentials(&mut rng, n, beta);
            let mut s = Self::build(beta, delta, mode);
            match mode {
                TieBreak::Fractional => {
                    if s.has_fraction_collision() {
                        continue;
                    }
                }
                TieBreak::Permutation => s.set_order(random_order(n, &mut rng)),
            }
            return Ok(s);
        }
        unreachable!()
    }

    /// Wraps explicit shifts, e.g. read back from a shifts file.
    ///
    /// Exactly equal fractional keys cannot be redrawn here, so they fall
    /// back to vertex-id order. Permutation mode draws its order from `seed`.
    pub fn from_deltas(beta: f64, delta: Vec<f64>, mode: TieBreak, seed: u64) -> Result<Self> {
        check_beta(beta)?;
        if delta.is_empty() {
            return Err(Error::input("shift vector is empty"));
        }
        if let Some((u, d)) = delta
            .iter()
            .enumerate()
            .find(|(_, d)| !d.is_finite() || **d < 0.0)
        {
            return Err(Error::input(format!(
                "shift of vertex {u} is {d}; shifts must be finite and non-negative"
            )));
        }
        let n = delta.len();
        let mut s = Self::build(beta, delta, mode);
        if mode == TieBreak::Permutation {
            s.set_order(random_order(n, &mut rng::rng(seed)));
        }
        Ok(s)
    }

    fn build(beta: f64, delta: Vec<f64>, mode: TieBreak) -> Self {
        let delta_max = delta.iter().copied().fold(0.0, f64::max);
        let n = delta.len();
        let mut start_level = Vec::with_capacity(n);
        let mut fraction = Vec::with_capacity(n);
        for &d in &delta {
            let t = delta_max - d;
            let level = t.floor();
            start_level.push(level as u64);
            fraction.push(t - level);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| fraction[a].total_cmp(&fraction[b]).then(a.cmp(&b)));
        let mut s = ShiftAssignment {
            beta,
            mode,
            delta,
            delta_max,
            start_level,
            fraction,
            rank: Vec::new(),
            by_rank: Vec::new(),
        };
        s.set_order(order);
        s
    }

    fn set_order(&mut self, by_rank: Vec<usize>) {
        let mut rank = vec![0; by_rank.len()];
        for (r, &v) in by_rank.iter().enumerate() {
            rank[v] = r;
        }
        self.rank = rank;
        self.by_rank = by_rank;
    }

    fn has_fraction_collision(&self) -> bool {
        self.by_rank
            .windows(2)
            .any(|w| self.fraction[w[0]] == self.fraction[w[1]])
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mode(&self) -> TieBreak {
        self.mode
    }

    pub fn deltas(&self) -> &[f64] {
        &self.delta
    }

    pub fn delta(&self, u: usize) -> f64 {
        self.delta[u]
    }

    pub fn delta_max(&self) -> f64 {
        self.delta_max
    }

    /// `floor(delta_max - delta_u)`: the BFS round in which `u` starts.
    pub fn start_level(&self, u: usize) -> u64 {
        self.start_level[u]
    }

    /// Fractional part of `delta_max - delta_u`.
    pub fn fraction(&self, u: usize) -> f64 {
        self.fraction[u]
    }

    /// Position of `u` in the strict tie-break order (0 wins every tie).
    pub fn rank(&self, u: usize) -> usize {
        self.rank[u]
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn vertex_at_rank(&self, r: usize) -> usize {
        self.by_rank[r]
    }

    /// Writes `<vertex> <delta>` lines. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn dump<W: Write>(&self, mut writer: W) -> Result<()> {
        for (u, d) in self.delta.iter().enumerate() {
            writeln!(writer, "{u} {d}")?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Reads a shifts dump back into a dense vector. Every vertex in `0..k`
/// must appear exactly once; `#` comment lines are skipped.
pub fn load_deltas<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut map = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(v), Some(d), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(line_no, "expected `<vertex> <delta>`"));
        };
        let v: usize = v
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid vertex `{v}`")))?;
        let d: f64 = d
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid shift `{d}`")))?;
        if map.insert(v, d).is_some() {
            return Err(Error::parse(line_no, format!("vertex {v} listed twice")));
        }
    }
    let n = map.len();
    if let Some((&v, _)) = map.iter().next_back().filter(|(&v, _)| v + 1 != n) {
        return Err(Error::parse(
            0,
            format!("shift table is not dense: {n} entries but vertex {v} present"),
        ));
    }
    Ok(map.into_values().collect())
}

/// Differences between consecutive order statistics: `X(1), X(2) - X(1), ...`.
pub fn order_statistic_gaps(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(Error::input("order statistics of an empty sample"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    Ok(sorted
        .into_iter()
        .map(|x| {
            let gap = x - prev;
            prev = x;
            gap
        })
        .collect())
}

/// `n` i.i.d. Exp(`beta`) samples from stream `seed`, without building the
/// tie-break order. Same values as [`ShiftAssignment::sample`] draws first.
pub fn sample_deltas(n: usize, beta: f64, seed: u64) -> Result<Vec<f64>> {
    check_beta(beta)?;
    Ok(draw_exponentials(&mut rng::rng(seed), n, beta))
}

fn draw_exponentials<R: Rng>(rng: &mut R, n: usize, beta: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            // 1 - [0, 1) is (0, 1], so ln never sees 0
            let u = 1.0 - rng.gen::<f64>();
            -u.ln() / beta
        })
        .collect()
}

fn random_order<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::input(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let s = ShiftAssignment::sample(1, 0.3, 9, TieBreak::Fractional).unwrap();
        assert!(s.delta(0) >= 0.0);
        assert_eq!(s.delta_max(), s.delta(0));
        assert_eq!(s.start_level(0), 0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(ShiftAssignment::sample(5, 0.0, 1, TieBreak::Fractional).is_err());
        assert!(ShiftAssignment::sample(5, -1.0, 1, TieBreak::Fractional).is_err());
        assert!(ShiftAssignment::sample(5, f64::NAN, 1, TieBreak::Fractional).is_err());
        assert!(ShiftAssignment::sample(0, 1.0, 1, TieBreak::Fractional).is_err());
        assert!(
            ShiftAssignment::from_deltas(1.0, vec![0.5, -0.1], TieBreak::Fractional, 0).is_err()
        );
        assert!(
            ShiftAssignment::from_deltas(1.0, vec![f64::INFINITY], TieBreak::Fractional, 0)
                .is_err()
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = ShiftAssignment::sample(50, 0.2, 77, TieBreak::Permutation).unwrap();
        let b = ShiftAssignment::sample(50, 0.2, 77, TieBreak::Permutation).unwrap();
        assert_eq!(a, b);
        let c = ShiftAssignment::sample(50, 0.2, 78, TieBreak::Permutation).unwrap();
        assert_ne!(a.deltas(), c.deltas());
    }

    #[test]
    fn fractional_order_follows_keys() {
        let s = ShiftAssignment::from_deltas(
            1.0,
            vec![0.3, 2.1, 0.5, 0.9, 1.7],
            TieBreak::Fractional,
            0,
        )
        .unwrap();
        assert_eq!(s.delta_max(), 2.1);
        let levels: Vec<u64> = (0..5).map(|u| s.start_level(u)).collect();
        assert_eq!(levels, vec![1, 0, 1, 1, 0]);
        // t = (1.8, 0, 1.6, 1.2, 0.4): fractions order 1, 3, 4, 2, 0.
        let order: Vec<usize> = (0..5).map(|r| s.vertex_at_rank(r)).collect();
        assert_eq!(order, vec![1, 3, 4, 2, 0]);
        for u in 0..5 {
            assert_eq!(s.vertex_at_rank(s.rank(u)), u);
        }
    }

    #[test]
    fn equal_fractions_fall_back_to_vertex_id() {
        let s = ShiftAssignment::from_deltas(1.0, vec![1.0, 2.0, 3.0], TieBreak::Fractional, 0)
            .unwrap();
        assert_eq!(
            (0..3).map(|r| s.vertex_at_rank(r)).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn permutation_ranks_cover_all_vertices() {
        let s = ShiftAssignment::sample(200, 0.1, 5, TieBreak::Permutation).unwrap();
        let mut ranks: Vec<usize> = (0..200).map(|u| s.rank(u)).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..200).collect::<Vec<_>>());
    }

    #[test]
    fn fractional_keys_are_distinct() {
        let s = ShiftAssignment::sample(100_000, 0.5, 11, TieBreak::Fractional).unwrap();
        assert!(!s.has_fraction_collision());
        for u in 0..s.n() {
            let t = s.delta_max() - s.delta(u);
            assert!((0.0..1.0).contains(&s.fraction(u)));
            assert_eq!(s.start_level(u) as f64 + s.fraction(u), t);
        }
    }

    #[test]
    fn gaps() {
        assert_eq!(
            order_statistic_gaps(&[3.0, 1.0, 2.0]).unwrap(),
            vec![1.0, 1.0, 1.0]
        );
        assert_eq!(order_statistic_gaps(&[5.0]).unwrap(), vec![5.0]);
        assert!(order_statistic_gaps(&[]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let s = ShiftAssignment::sample(64, 0.05, 3, TieBreak::Fractional).unwrap();
        let mut buf = Vec::new();
        s.dump(&mut buf).unwrap();
        assert_eq!(load_deltas(buf.as_slice()).unwrap(), s.deltas());
    }

    #[test]
    fn load_rejects_sparse_or_duplicate_tables() {
        assert!(load_deltas("0 1.0\n2 0.5\n".as_bytes()).is_err());
        assert!(load_deltas("0 1.0\n0 0.5\n".as_bytes()).is_err());
        assert!(load_deltas("0 abc\n".as_bytes()).is_err());
        assert_eq!(
            load_deltas("# c\n1 0.5\n0 1.5\n".as_bytes()).unwrap(),
            vec![1.5, 0.5]
        );
    }
}
