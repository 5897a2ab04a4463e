//! Low-diameter decomposition of unweighted graphs by exponentially
//! shifted shortest paths.
//!
//! Every vertex `u` draws a shift `delta_u ~ Exp(beta)`; each vertex `v`
//! then joins the center `u` minimizing `dist(u, v) - delta_u`. The
//! [`engine`] computes this assignment with a single delayed-start
//! breadth-first search, and [`oracle`] recomputes it by brute force.
//!
//! ```
//! use ldd_core::{gen, partition, validate, RunConfig};
//!
//! let g = gen::grid(50, 50).unwrap();
//! let run = partition(&g, &RunConfig::new(0.1, 7)).unwrap().into_run();
//! let report = validate(&g, &run.decomposition, 0.1, None);
//! assert!(report.is_partition && report.pieces_connected);
//! ```

pub mod decomposition;
pub mod diameter;
pub mod edgelist;
pub mod engine;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod render;
pub mod rng;
pub mod shifts;
pub mod stats;
pub mod validate;

pub use decomposition::{Decomposition, UNASSIGNED};
pub use edgelist::{load_edgelist, save_edgelist};
pub use engine::{
    attempt_seed, block_decomposition, partition, partition_once, partition_once_with,
    BlockDecomposition, PartitionOutcome, Run, RunConfig, RunReport,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use gen::GraphKind;
pub use graph::Graph;
pub use oracle::{midpoint_witness_check, oracle_assign, piece_strong_diameter, INFINITE_DIAMETER};
pub use shifts::{order_statistic_gaps, ShiftAssignment, TieBreak};
pub use validate::{validate, ValidationReport};
