//! Monte Carlo harness for the quantitative guarantees: cut probability,
//! maximum shift, order-statistic gaps, the close-call probability at an
//! edge midpoint, and beta sweeps.
//!
//! Trial `i` always draws from stream `i` of the experiment seed, so every
//! result is reproducible and independent of scheduling.

use std::io::Write;

use serde::Serialize;

use crate::engine::{partition, partition_once_with, RunConfig};
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};
use crate::graph::Graph;
use crate::rng::derive_seed;
use crate::shifts::{check_beta, order_statistic_gaps, sample_deltas, ShiftAssignment, TieBreak};
use crate::stats::Summary;
use crate::validate::{validate_with, DiameterMethod};

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct CutExperiment {
    pub beta: f64,
    pub trials: usize,
    pub cut_fraction: Summary,
    /// Highest empirical cut frequency of any single edge.
    pub max_edge_frequency: f64,
}

/// Runs the BFS once per trial on fresh shifts and records which edges
/// end up between pieces.
pub fn cut_probability_experiment(
    g: &Graph,
    beta: f64,
    trials: usize,
    seed: u64,
) -> Result<CutExperiment> {
    check_beta(beta)?;
    check_trials(trials)?;
    let m = g.m();
    let per_trial = map_indices(Execution::default(), trials, |i| {
        let s = ShiftAssignment::sample(
            g.n(),
            beta,
            derive_seed(seed, i as u64),
            TieBreak::Fractional,
        )
        .expect("parameters checked");
        let run = partition_once_with(g, &s, Execution::Sequential).expect("sizes match");
        let owner = run.decomposition.owner();
        g.edges()
            .enumerate()
            .filter(|(_, (u, v))| owner[*u] != owner[*v])
            .map(|(idx, _)| idx)
            .collect::<Vec<_>>()
    });

    let mut counts = vec![0u32; m];
    let mut fractions = Vec::with_capacity(trials);
    for cut in &per_trial {
        for &e in cut {
            counts[e] += 1;
        }
        fractions.push(if m == 0 {
            0.0
        } else {
            cut.len() as f64 / m as f64
        });
    }
    Ok(CutExperiment {
        beta,
        trials,
        cut_fraction: Summary::of(&fractions),
        max_edge_frequency: counts.iter().copied().max().unwrap_or(0) as f64 / trials as f64,
    })
}

/// Maxima of `n` Exp(`beta`) samples over independent trials.
#[derive(Debug, Clone)]
pub struct MaxShiftExperiment {
    pub maxima: Vec<f64>,
    pub summary: Summary,
}

impl MaxShiftExperiment {
    /// Fraction of trials whose maximum exceeded `bound`.
    pub fn exceed_frequency(&self, bound: f64) -> f64 {
        self.maxima.iter().filter(|&&x| x > bound).count() as f64 / self.maxima.len() as f64
    }
}

pub fn max_shift_experiment(
    n: usize,
    beta: f64,
    trials: usize,
    seed: u64,
) -> Result<MaxShiftExperiment> {
    check_beta(beta)?;
    check_trials(trials)?;
    if n == 0 {
        return Err(Error::input("need at least one vertex"));
    }
    let maxima = map_indices(Execution::default(), trials, |i| {
        sample_deltas(n, beta, derive_seed(seed, i as u64))
            .expect("beta checked")
            .into_iter()
            .fold(0.0, f64::max)
    });
    let summary = Summary::of(&maxima);
    Ok(MaxShiftExperiment { maxima, summary })
}

/// Per-position statistics of consecutive order-statistic gaps; entry `k`
/// (0-based) describes `X(k+1) - X(k)`.
pub fn gap_experiment(n: usize, beta: f64, trials: usize, seed: u64) -> Result<Vec<Summary>> {
    check_beta(beta)?;
    check_trials(trials)?;
    if n == 0 {
        return Err(Error::input("need at least one sample per trial"));
    }
    let gaps = map_indices(Execution::default(), trials, |i| {
        let samples = sample_deltas(n, beta, derive_seed(seed, i as u64)).expect("beta checked");
        order_statistic_gaps(&samples).expect("non-empty")
    });
    Ok((0..n)
        .map(|k| Summary::of(&gaps.iter().map(|g| g[k]).collect::<Vec<_>>()))
        .collect())
}

/// Close-call experiment on `path(len)`: with `w` the midpoint of the
/// middle edge, estimates how often the second-smallest shifted distance
/// `dist(x, w) - delta_x` is within `c` of the smallest.
///
/// Returns the indicator summary; its mean is the empirical probability.
pub fn close_probability_experiment(
    len: usize,
    beta: f64,
    c: f64,
    trials: usize,
    seed: u64,
) -> Result<Summary> {
    check_beta(beta)?;
    check_trials(trials)?;
    if len < 2 {
        return Err(Error::input("path needs an edge to have a midpoint"));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::input(format!("closeness must be positive, got {c}")));
    }
    // midpoint between vertices len/2 - 1 and len/2, doubled coordinates
    let mid2 = (len as i64 / 2) * 2 - 1;
    let hits = map_indices(Execution::default(), trials, |i| {
        let delta = sample_deltas(len, beta, derive_seed(seed, i as u64)).expect("beta checked");
        let (mut first, mut second) = (f64::INFINITY, f64::INFINITY);
        for (x, d) in delta.iter().enumerate() {
            let dist = (2 * x as i64 - mid2).abs() as f64 / 2.0;
            let shifted = dist - d;
            if shifted < first {
                second = first;
                first = shifted;
            } else if shifted < second {
                second = shifted;
            }
        }
        if second - first <= c {
            1.0
        } else {
            0.0
        }
    });
    Ok(Summary::of(&hits))
}

/// One row of a beta sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub trials: usize,
    pub mean_cut_fraction: f64,
    pub std_cut_fraction: f64,
    pub mean_max_diameter: f64,
    pub mean_delta_max: f64,
    pub mean_retries: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepStats {
    pub rows: Vec<SweepRow>,
    /// Mean cut fraction strictly increases along the beta grid.
    pub cut_fraction_increasing: bool,
    /// Mean max diameter strictly decreases along the beta grid.
    pub diameter_decreasing: bool,
}

pub const SWEEP_CSV_HEADER: &str =
    "beta,trials,mean_cut_fraction,std_cut_fraction,mean_max_diameter,mean_delta_max,mean_retries";

impl SweepStats {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{SWEEP_CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.beta,
                r.trials,
                r.mean_cut_fraction,
                r.std_cut_fraction,
                r.mean_max_diameter,
                r.mean_delta_max,
                r.mean_retries
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs the retrying partition `trials` times per beta (in the given order)
/// and measures exact strong diameters of every result.
pub fn sweep(g: &Graph, betas: &[f64], trials: usize, seed: u64) -> Result<SweepStats> {
    if betas.is_empty() {
        return Err(Error::input("beta list is empty"));
    }
    check_trials(trials)?;
    for &b in betas {
        RunConfig::new(b, 0).validate()?;
    }

    let mut rows = Vec::with_capacity(betas.len());
    for (bi, &beta) in betas.iter().enumerate() {
        let beta_seed = derive_seed(seed, bi as u64);
        let results = map_indices(Execution::default(), trials, |i| {
            let cfg = RunConfig::new(beta, derive_seed(beta_seed, i as u64))
                .with_execution(Execution::Sequential);
            let run = partition(g, &cfg).expect("config checked").into_run();
            let v = validate_with(
                g,
                &run.decomposition,
                beta,
                None,
                DiameterMethod::Exact,
                Execution::Sequential,
            );
            (
                v.cut_fraction,
                v.max_strong_diameter as f64,
                run.report.delta_max,
                run.report.retries as f64,
            )
        });
        let column = |f: fn(&(f64, f64, f64, f64)) -> f64| {
            Summary::of(&results.iter().map(f).collect::<Vec<_>>())
        };
        let cut = column(|r| r.0);
        rows.push(SweepRow {
            beta,
            trials,
            mean_cut_fraction: cut.mean,
            std_cut_fraction: cut.std_dev,
            mean_max_diameter: column(|r| r.1).mean,
            mean_delta_max: column(|r| r.2).mean,
            mean_retries: column(|r| r.3).mean,
        });
    }

    let cut_fraction_increasing = rows
        .windows(2)
        .all(|w| w[0].mean_cut_fraction < w[1].mean_cut_fraction);
    let diameter_decreasing = rows
        .windows(2)
        .all(|w| w[0].mean_max_diameter > w[1].mean_max_diameter);
    Ok(SweepStats {
        rows,
        cut_fraction_increasing,
        diameter_decreasing,
    })
}
