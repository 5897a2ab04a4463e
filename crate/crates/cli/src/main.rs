use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ldd_core::exec::with_threads;
use ldd_core::experiments::sweep;
use ldd_core::render::render_grid_svg;
use ldd_core::shifts::load_deltas;
use ldd_core::{
    attempt_seed, gen, load_edgelist, partition, partition_once, save_edgelist, validate,
    Decomposition, Graph, GraphKind, RunConfig, RunReport, ShiftAssignment, TieBreak,
};
use serde::Serialize;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_THRESHOLDS: u8 = 3;
const EXIT_INVALID: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "ldd",
    version,
    about = "Low-diameter decompositions by exponentially shifted BFS"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[command(flatten)]
        graph: GenArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decompose a graph, writing labels and a run report.
    Partition(PartitionArgs),
    /// Run repeated partitions over a list of betas and write CSV statistics.
    Sweep(SweepArgs),
    /// Draw grid labels as an SVG, one colored cell per vertex.
    Render {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        labels: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check labels against a graph: partition, connectivity, cut and diameter.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        beta: f64,
        /// Diameter threshold; defaults to 4 ln(n) / beta.
        #[arg(long)]
        diam_threshold: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Grid,
    Path,
    Complete,
    Gnp,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn graph_kind(&self) -> anyhow::Result<GraphKind> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| anyhow!("--{name} is required for this kind"))
        };
        Ok(match self.kind {
            Kind::Grid => GraphKind::Grid {
                rows: need(self.rows, "rows")?,
                cols: need(self.cols, "cols")?,
            },
            Kind::Path => GraphKind::Path {
                n: need(self.n, "n")?,
            },
            Kind::Complete => GraphKind::Complete {
                n: need(self.n, "n")?,
            },
            Kind::Gnp => GraphKind::Gnp {
                n: need(self.n, "n")?,
                p: self.p.ok_or_else(|| anyhow!("--p is required for gnp"))?,
                seed: self.seed,
            },
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Fractional,
    Permutation,
}

impl From<Tie> for TieBreak {
    fn from(t: Tie) -> Self {
        match t {
            Tie::Fractional => TieBreak::Fractional,
            Tie::Permutation => TieBreak::Permutation,
        }
    }
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Cut parameter, 0 < beta <= 1/2.
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "fractional")]
    tiebreak: Tie,
    #[arg(long, default_value_t = 20)]
    max_retries: usize,
    #[arg(long)]
    diam_threshold: Option<f64>,
    #[arg(long)]
    cut_threshold: Option<f64>,
    /// Use these shifts (`<vertex> <delta>` lines) instead of sampling; disables retries.
    #[arg(long)]
    shifts_file: Option<PathBuf>,
    /// Write the shifts of the returned attempt here.
    #[arg(long)]
    dump_shifts: Option<PathBuf>,
    /// Labels output (`<vertex> <center>` lines); stdout when omitted.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Report output; stdout when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads, 0 for hardware parallelism. Does not change results.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Edge-list file; alternatively describe a generated graph with --kind.
    #[arg(long, conflicts_with = "kind")]
    graph: Option<PathBuf>,
    #[arg(long)]
    kind: Option<Kind>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// Comma-separated beta values.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    betas: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Serialize)]
struct ReportDoc {
    n: usize,
    m: usize,
    beta: f64,
    seed: u64,
    tiebreak: String,
    thresholds_met: bool,
    retries: usize,
    cut_edges: usize,
    cut_fraction: f64,
    cut_threshold: f64,
    delta_max: f64,
    max_piece_radius: usize,
    diam_threshold: f64,
    levels: u64,
    edge_touches: u64,
    pieces: usize,
}

#[derive(Serialize)]
struct ValidateDoc {
    is_partition: bool,
    pieces_connected: bool,
    pieces: usize,
    cut_edges: usize,
    cut_fraction: f64,
    cut_threshold: f64,
    pass_cut: bool,
    max_strong_diameter: String,
    diam_threshold: f64,
    pass_diam: bool,
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    load_edgelist(open(path)?).with_context(|| format!("reading {}", path.display()))
}

fn write_to(
    path: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>,
) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)?;
        }
    }
    Ok(())
}

fn cmd_gen(graph: &GenArgs, output: &Path) -> anyhow::Result<u8> {
    let g = gen::generate(graph.graph_kind()?)?;
    save_edgelist(&g, create(output)?)?;
    Ok(EXIT_OK)
}

fn cmd_partition(args: &PartitionArgs) -> anyhow::Result<u8> {
    let g = read_graph(&args.graph)?;
    let mut cfg = RunConfig::new(args.beta, args.seed)
        .with_tiebreak(args.tiebreak.into())
        .with_max_retries(args.max_retries);
    cfg.diam_threshold = args.diam_threshold;
    cfg.cut_threshold = args.cut_threshold;
    cfg.validate()?;

    let (run, met, shifts) = with_threads(args.threads, || -> anyhow::Result<_> {
        if let Some(path) = &args.shifts_file {
            let deltas =
                load_deltas(open(path)?).with_context(|| format!("reading {}", path.display()))?;
            if deltas.len() != g.n() {
                bail!("{} shifts given for {} vertices", deltas.len(), g.n());
            }
            let s = ShiftAssignment::from_deltas(cfg.beta, deltas, cfg.tiebreak, cfg.seed)?;
            let run = partition_once(&g, &s)?;
            let met = run.report.cut_edges as f64 <= cfg.cut_threshold_for(&g)
                && 2.0 * run.report.max_piece_radius as f64 <= cfg.diam_threshold_for(&g);
            Ok((run, met, Some(s)))
        } else {
            let outcome = partition(&g, &cfg)?;
            let met = outcome.thresholds_met();
            Ok((outcome.into_run(), met, None))
        }
    })?;

    if let Some(path) = &args.dump_shifts {
        let s = match shifts {
            Some(s) => s,
            None => ShiftAssignment::sample(
                g.n(),
                cfg.beta,
                attempt_seed(cfg.seed, run.attempt),
                cfg.tiebreak,
            )?,
        };
        s.dump(create(path)?)?;
    }

    write_to(args.labels.as_deref(), |w| {
        Ok(run.decomposition.write_labels(w)?)
    })?;
    let report = report_doc(&g, &cfg, &run.report, met);
    let text = toml::to_string(&report)?;
    write_to(
        args.report.as_deref(),
        |w| Ok(w.write_all(text.as_bytes())?),
    )?;

    Ok(if met { EXIT_OK } else { EXIT_THRESHOLDS })
}

fn report_doc(g: &Graph, cfg: &RunConfig, r: &RunReport, met: bool) -> ReportDoc {
    ReportDoc {
        n: g.n(),
        m: g.m(),
        beta: cfg.beta,
        seed: cfg.seed,
        tiebreak: cfg.tiebreak.to_string(),
        thresholds_met: met,
        retries: r.retries,
        cut_edges: r.cut_edges,
        cut_fraction: if g.m() == 0 {
            0.0
        } else {
            r.cut_edges as f64 / g.m() as f64
        },
        cut_threshold: cfg.cut_threshold_for(g),
        delta_max: r.delta_max,
        max_piece_radius: r.max_piece_radius,
        diam_threshold: cfg.diam_threshold_for(g),
        levels: r.levels,
        edge_touches: r.edge_touches,
        pieces: r.pieces,
    }
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<u8> {
    if args.betas.is_empty() {
        bail!("--betas must list at least one value");
    }
    let g = match (&args.graph, args.kind) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(kind)) => {
            let spec = GenArgs {
                kind,
                rows: args.rows,
                cols: args.cols,
                n: args.n,
                p: args.p,
                seed: args.seed,
            };
            gen::generate(spec.graph_kind()?)?
        }
        (None, None) => bail!("either --graph or --kind is required"),
    };
    let stats = with_threads(args.threads, || {
        sweep(&g, &args.betas, args.trials, args.seed)
    })?;
    write_to(args.output.as_deref(), |w| Ok(stats.write_csv(w)?))?;
    Ok(EXIT_OK)
}

fn cmd_render(rows: usize, cols: usize, labels: &Path, output: &Path) -> anyhow::Result<u8> {
    let n = rows
        .checked_mul(cols)
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("invalid grid dimensions {rows}x{cols}"))?;
    let d = Decomposition::read_labels(open(labels)?, n)?;
    if let Some(v) = d.owner().iter().position(|&c| c == ldd_core::UNASSIGNED) {
        bail!("labels do not cover the {rows}x{cols} grid (vertex {v} missing)");
    }
    render_grid_svg(rows, cols, d.owner(), create(output)?)?;
    Ok(EXIT_OK)
}

fn cmd_validate(
    graph: &Path,
    labels: &Path,
    beta: f64,
    diam_threshold: Option<f64>,
) -> anyhow::Result<u8> {
    if !(beta > 0.0 && beta <= 0.5) {
        bail!("beta must lie in (0, 1/2], got {beta}");
    }
    let g = read_graph(graph)?;
    let d = Decomposition::read_labels(open(labels)?, g.n())
        .with_context(|| format!("reading {}", labels.display()))?;
    let report = validate(&g, &d, beta, diam_threshold);
    let doc = ValidateDoc {
        is_partition: report.is_partition,
        pieces_connected: report.pieces_connected,
        pieces: report.pieces,
        cut_edges: report.cut_edges,
        cut_fraction: report.cut_fraction,
        cut_threshold: report.cut_threshold,
        pass_cut: report.pass_cut,
        max_strong_diameter: if report.max_strong_diameter == ldd_core::INFINITE_DIAMETER {
            "inf".to_owned()
        } else {
            report.max_strong_diameter.to_string()
        },
        diam_threshold: report.diam_threshold,
        pass_diam: report.pass_diam,
    };
    print!("{}", toml::to_string(&doc)?);
    for v in &report.violations {
        println!("# violation: {v}");
    }
    Ok(if report.is_ok() {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen { graph, output } => cmd_gen(graph, output),
        Command::Partition(args) => cmd_partition(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Render {
            rows,
            cols,
            labels,
            output,
        } => cmd_render(*rows, *cols, labels, output),
        Command::Validate {
            graph,
            labels,
            beta,
            diam_threshold,
        } => cmd_validate(graph, labels, *beta, *diam_threshold),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
