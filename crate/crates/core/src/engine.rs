//! Delayed-start, level-synchronous BFS that assigns every vertex to the
//! center minimizing its shifted distance, plus the retry driver and the
//! iterated block decomposition built on top of it.
//!
//! Round `r` of the search does three things:
//!
//! 1. every still-unvisited vertex whose start level is `r` proposes itself
//!    as a center,
//! 2. every vertex claimed in round `r - 1` proposes its center to its
//!    unvisited neighbors,
//! 3. each contested vertex keeps the proposal whose center has the lowest
//!    tie-break rank, then all new claims become visible at once.
//!
//! A claim reaching `v` in round `r` from center `u` corresponds to the
//! real arrival time `start_level(u) + dist(u, v) + fraction(u)`, so the
//! (round, rank) minimum is exactly the shifted-distance argmin.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::shifts::{check_beta, ShiftAssignment, TieBreak};

const EMPTY: usize = usize::MAX;

/// Work and depth counters for one or more attempts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Attempts made, counting the first (so 1 means no retry was needed).
    pub retries: usize,
    /// BFS rounds executed, i.e. the last round index plus one.
    pub levels: u64,
    /// Directed edges relaxed by the search.
    pub edge_touches: u64,
    pub cut_edges: usize,
    /// Largest hop distance from a center to a member of its piece.
    pub max_piece_radius: usize,
    pub delta_max: f64,
    pub pieces: usize,
}

/// Parameters of the retrying driver. Unset thresholds default to
/// `4 ln(n) / beta` for the diameter and `2 beta m` for the cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub beta: f64,
    pub seed: u64,
    pub tiebreak: TieBreak,
    pub max_retries: usize,
    pub diam_threshold: Option<f64>,
    pub cut_threshold: Option<f64>,
    #[serde(skip)]
    pub execution: Execution,
}

impl RunConfig {
    pub fn new(beta: f64, seed: u64) -> Self {
        RunConfig {
            beta,
            seed,
            tiebreak: TieBreak::default(),
            max_retries: 20,
            diam_threshold: None,
            cut_threshold: None,
            execution: Execution::default(),
        }
    }

    pub fn with_tiebreak(mut self, tiebreak: TieBreak) -> Self {
        self.tiebreak = tiebreak;
        self
    }

    pub fn with_max_retries(mut self, max_retries: usize) -> Self {
        self.max_retries = max_retries;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_beta(self.beta)?;
        if self.beta > 0.5 {
            return Err(Error::input(format!(
                "beta must be at most 1/2, got {}",
                self.beta
            )));
        }
        if self.max_retries == 0 {
            return Err(Error::input("max_retries must be at least 1"));
        }
        for (name, t) in [
            ("diam_threshold", self.diam_threshold),
            ("cut_threshold", self.cut_threshold),
        ] {
            if let Some(t) = t.filter(|t| t.is_nan() || *t <= 0.0) {
                return Err(Error::input(format!("{name} must be positive, got {t}")));
            }
        }
        Ok(())
    }

    pub fn diam_threshold_for(&self, g: &Graph) -> f64 {
        self.diam_threshold
            .unwrap_or_else(|| default_diam_threshold(g.n(), self.beta))
    }

    pub fn cut_threshold_for(&self, g: &Graph) -> f64 {
        self.cut_threshold
            .unwrap_or_else(|| default_cut_threshold(g.m(), self.beta))
    }
}

pub fn default_diam_threshold(n: usize, beta: f64) -> f64 {
    4.0 * (n.max(2) as f64).ln() / beta
}

pub fn default_cut_threshold(m: usize, beta: f64) -> f64 {
    2.0 * beta * m as f64
}

/// A decomposition together with the counters of the run that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub decomposition: Decomposition,
    pub report: RunReport,
    /// Shift stream the run used; see [`attempt_seed`]. Zero for
    /// caller-supplied shifts.
    pub attempt: usize,
}

/// Seed of the shifts drawn by attempt `attempt` of [`partition`].
pub fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    derive_seed(seed, attempt as u64)
}

/// Result of the retrying driver.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionOutcome {
    /// The last attempt met both thresholds.
    Accepted(Run),
    /// Every attempt failed; carries the attempt with the fewest cut edges.
    ThresholdsNotMet(Run),
}

impl PartitionOutcome {
    pub fn thresholds_met(&self) -> bool {
        matches!(self, PartitionOutcome::Accepted(_))
    }

    pub fn run(&self) -> &Run {
        match self {
            PartitionOutcome::Accepted(run) | PartitionOutcome::ThresholdsNotMet(run) => run,
        }
    }

    pub fn into_run(self) -> Run {
        match self {
            PartitionOutcome::Accepted(run) | PartitionOutcome::ThresholdsNotMet(run) => run,
        }
    }
}

/// One shifted BFS with the default execution strategy.
pub fn partition_once(g: &Graph, shifts: &ShiftAssignment) -> Result<Run> {
    partition_once_with(g, shifts, Execution::default())
}

pub fn partition_once_with(g: &Graph, shifts: &ShiftAssignment, exec: Execution) -> Result<Run> {
    let n = g.n();
    if shifts.n() != n {
        return Err(Error::input(format!(
            "graph has {n} vertices but {} shifts were given",
            shifts.n()
        )));
    }

    // Vertices bucketed by start level.
    let mut by_level: Vec<usize> = (0..n).collect();
    by_level.sort_by_key(|&v| (shifts.start_level(v), v));
    let mut next_source = 0;

    let slot: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(EMPTY)).collect();
    let mut claim_round = vec![u64::MAX; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut visited = 0usize;
    let mut edge_touches = 0u64;
    let mut round = 0u64;

    loop {
        if frontier.is_empty() {
            // Nothing propagating: jump to the next round that starts a center.
            while next_source < n && claim_round[by_level[next_source]] != u64::MAX {
                next_source += 1;
            }
            round = round.max(shifts.start_level(by_level[next_source]));
        }

        let mut touched = Vec::new();
        while next_source < n && shifts.start_level(by_level[next_source]) == round {
            let v = by_level[next_source];
            next_source += 1;
            if claim_round[v] == u64::MAX && propose(&slot[v], shifts.rank(v)) {
                touched.push(v);
            }
        }

        edge_touches += frontier.iter().map(|&v| g.degree(v) as u64).sum::<u64>();
        touched.extend(expand(g, &frontier, &slot, &claim_round, exec));
        touched.sort_unstable();

        for &v in &touched {
            claim_round[v] = round;
        }
        visited += touched.len();
        frontier = touched;
        if visited == n {
            break;
        }
        round += 1;
    }

    let owner: Vec<usize> = slot
        .iter()
        .map(|s| shifts.vertex_at_rank(s.load(Ordering::Relaxed)))
        .collect();
    let max_piece_radius = (0..n)
        .map(|v| (claim_round[v] - shifts.start_level(owner[v])) as usize)
        .max()
        .unwrap_or(0);
    let decomposition = Decomposition::from_owner(owner);
    let report = RunReport {
        retries: 1,
        levels: round + 1,
        edge_touches,
        cut_edges: decomposition.count_cut_edges(g),
        max_piece_radius,
        delta_max: shifts.delta_max(),
        pieces: decomposition.centers().len(),
    };
    Ok(Run {
        decomposition,
        report,
        attempt: 0,
    })
}

/// Lowers `slot` to `rank`; true for the single proposal that found it empty.
#[inline]
fn propose(slot: &AtomicUsize, rank: usize) -> bool {
    slot.fetch_min(rank, Ordering::Relaxed) == EMPTY
}

/// Pushes each frontier vertex's center to its unvisited neighbors and
/// returns the vertices claimed for the first time this round (unordered).
fn expand(
    g: &Graph,
    frontier: &[usize],
    slot: &[AtomicUsize],
    claim_round: &[u64],
    exec: Execution,
) -> Vec<usize> {
    let relax = |v: usize, out: &mut Vec<usize>| {
        let rank = slot[v].load(Ordering::Relaxed);
        for &w in g.neighbors(v) {
            if claim_round[w] == u64::MAX && propose(&slot[w], rank) {
                out.push(w);
            }
        }
    };

    #[cfg(feature = "parallel")]
    if exec.is_parallel() && frontier.len() > 256 {
        use rayon::prelude::*;
        return frontier
            .par_chunks(256)
            .flat_map_iter(|chunk| {
                let mut out = Vec::new();
                for &v in chunk {
                    relax(v, &mut out);
                }
                out
            })
            .collect();
    }
    let _ = exec;
    let mut out = Vec::new();
    for &v in frontier {
        relax(v, &mut out);
    }
    out
}

/// Samples shifts and partitions until both thresholds hold or the attempt
/// budget runs out. Attempt `i` draws its shifts from stream `i` of
/// `cfg.seed`.
pub fn partition(g: &Graph, cfg: &RunConfig) -> Result<PartitionOutcome> {
    cfg.validate()?;
    let diam_threshold = cfg.diam_threshold_for(g);
    let cut_threshold = cfg.cut_threshold_for(g);

    let mut best: Option<Run> = None;
    for attempt in 0..cfg.max_retries {
        let shifts = ShiftAssignment::sample(
            g.n(),
            cfg.beta,
            attempt_seed(cfg.seed, attempt),
            cfg.tiebreak,
        )?;
        let mut run = partition_once_with(g, &shifts, cfg.execution)?;
        run.report.retries = attempt + 1;
        run.attempt = attempt;

        let ok = run.report.cut_edges as f64 <= cut_threshold
            && 2.0 * run.report.max_piece_radius as f64 <= diam_threshold;
        if ok {
            return Ok(PartitionOutcome::Accepted(run));
        }
        match &mut best {
            Some(b) if b.report.cut_edges <= run.report.cut_edges => {
                b.report.retries = attempt + 1;
            }
            _ => best = Some(run),
        }
    }
    Ok(PartitionOutcome::ThresholdsNotMet(
        best.expect("max_retries >= 1"),
    ))
}

/// Per-round output of [`block_decomposition`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub rounds: Vec<Decomposition>,
    /// `surviving[k]` = edges cut in every one of rounds `0..=k`.
    pub surviving: Vec<usize>,
}

/// Repeatedly partitions with `beta = 1/2`, each round on the edges that
/// were cut in every earlier round. Round 0 uses `seed` unchanged, so a
/// single round is the same as `partition(g, RunConfig::new(0.5, seed))`.
pub fn block_decomposition(g: &Graph, rounds: usize, seed: u64) -> Result<BlockDecomposition> {
    if rounds == 0 {
        return Err(Error::input("block decomposition needs at least one round"));
    }
    let mut remaining = g.clone();
    let mut out = BlockDecomposition {
        rounds: Vec::with_capacity(rounds),
        surviving: Vec::with_capacity(rounds),
    };
    for i in 0..rounds {
        let round_seed = if i == 0 {
            seed
        } else {
            derive_seed(seed ^ 0xB10C_B10C_B10C_B10C, i as u64)
        };
        let run = partition(&remaining, &RunConfig::new(0.5, round_seed))?.into_run();
        let d = run.decomposition;
        remaining = remaining.filter_edges(|u, v| d.owner_of(u) != d.owner_of(v));
        out.surviving.push(remaining.m());
        out.rounds.push(d);
    }
    Ok(out)
}
