//! `tmotif`: exact counting, sampling estimators, streaming and benchmarks
//! over temporal edge lists.
//!
//! Exit codes: 0 success, 1 parse, I/O or usage error, 2 motif unsupported
//! by edge-wedge sampling, 3 stream order violation, 4 oracle mismatch.

pub mod report;

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use temporal_motif::graph::{open_input, EdgeListFormat, RecordReader};
use temporal_motif::{
    brute_force_count, count_exact_with_workers, estimate_es, estimate_ews, plan_probability, Delta, Error, Estimate,
    Motif, SamplerConfig, Stream, StreamAlgorithm, TemporalGraph,
};

use report::{aggregate_records, relative_error, write_csv, write_json, RunRecord, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_STREAM_ORDER: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tmotif", version, about = "Count and estimate temporal motif instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact count by backtracking.
    Exact(CommonArgs),
    /// Edge sampling estimate.
    Es(SamplerArgs),
    /// Edge-wedge sampling estimate (3-vertex 3-edge motifs only).
    Ews(SamplerArgs),
    /// One-pass estimate over a time-sorted edge list; `--graph -` reads stdin.
    Stream(StreamArgs),
    /// Compare the exact counter against brute force.
    Oracle(CommonArgs),
    /// Exact count once, then each sampler `--runs` times.
    Bench(BenchArgs),
    /// Graph statistics.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    Es,
    Ews,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Edge list path (`.gz` is decompressed); `-` reads stdin.
    #[arg(long)]
    pub graph: PathBuf,
    /// Built-in motif name, or `@path` to a motif file.
    #[arg(long)]
    pub motif: String,
    /// Window length, in the units of the input timestamps.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: i64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Edge sampling probability.
    #[arg(long, default_value_t = 0.01)]
    pub p: f64,
    /// Wedge sampling probability.
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Repetitions; run `r` uses seed `seed + r`.
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    /// Target relative error; with `--gamma`, overrides `--p`.
    #[arg(long, requires = "gamma")]
    pub eps: Option<f64>,
    /// Target failure probability; with `--eps`, overrides `--p`.
    #[arg(long, requires = "eps")]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplerArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StreamArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long, value_enum, default_value = "es")]
    pub algo: SamplerKind,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Samplers to run; defaults to es, plus ews when the motif allows it.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algo: Vec<SamplerKind>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Window used for the windowed-degree statistic.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: i64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Output(io::Error),
    Mismatch { exact: u64, oracle: u64 },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Output(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::Output(io::Error::other(e))
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Self::Core(Error::UnsupportedMotif { .. }) => EXIT_UNSUPPORTED,
            Self::Core(Error::StreamOrder { .. }) => EXIT_STREAM_ORDER,
            Self::Mismatch { .. } => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            Self::Core(e) => e.to_string(),
            Self::Usage(m) => m.clone(),
            Self::Output(e) => format!("output: {e}"),
            Self::Mismatch { exact, oracle } => format!("mismatch: exact counter {exact}, brute force {oracle}"),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the command, writes the report
/// to `out` and returns the exit code. Diagnostics go to standard error.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("tmotif: {}", f.message());
            f.code()
        }
    }
}

fn execute<W: Write>(command: Command, out: &mut W) -> Outcome {
    match command {
        Command::Exact(a) => exact(&a, out),
        Command::Es(a) => sample(&a, SamplerKind::Es, out),
        Command::Ews(a) => sample(&a, SamplerKind::Ews, out),
        Command::Stream(a) => stream(&a, out),
        Command::Oracle(a) => oracle(&a, out),
        Command::Bench(a) => bench(&a, out),
        Command::Stats(a) => stats(&a, out),
    }
}

fn load_graph(path: &Path) -> Outcome<TemporalGraph> {
    if path == Path::new("-") {
        let stdin = io::stdin();
        return Ok(TemporalGraph::parse_edge_list(stdin.lock(), EdgeListFormat::Auto)?);
    }
    Ok(TemporalGraph::read_path(path)?)
}

fn load_motif(spec: &str) -> Outcome<Motif> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("motif file {path}: {e}")))?;
            Ok(Motif::parse(&text)?)
        }
        None => Ok(Motif::builtin(spec)?),
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn emit<W: Write>(out: &mut W, format: Format, report: &RunReport) -> Outcome {
    match format {
        Format::Json => write_json(out, report)?,
        Format::Csv => write_csv(&mut *out, &report.rows())?,
    }
    Ok(())
}

struct Setup {
    graph: TemporalGraph,
    motif: Motif,
    delta: Delta,
}

fn setup(a: &CommonArgs) -> Outcome<Setup> {
    let delta = Delta::new(a.delta)?;
    let motif = load_motif(&a.motif)?;
    let graph = load_graph(&a.graph)?;
    Ok(Setup { graph, motif, delta })
}

fn base_report(a: &CommonArgs, motif: &Motif, algorithm: &str) -> RunReport {
    RunReport {
        algorithm: algorithm.to_string(),
        motif: a.motif.clone(),
        motif_edges: motif.to_string(),
        delta: a.delta,
        p: None,
        q: None,
        seed: None,
        estimate: None,
        exact: None,
        relative_error: None,
        elapsed_ms: 0.0,
        stats: None,
        runs: Vec::new(),
        summary: Vec::new(),
    }
}

/// Effective sampling probability, after the planner if requested.
fn plan_p(s: &SamplingArgs) -> Outcome<f64> {
    match (s.eps, s.gamma) {
        (Some(eps), Some(gamma)) => {
            let p = plan_probability(eps, gamma)?;
            eprintln!("tmotif: planned p = {p} for eps = {eps}, gamma = {gamma}");
            Ok(p)
        }
        _ => Ok(s.p),
    }
}

fn config(s: &SamplingArgs, workers: Option<usize>) -> Outcome<SamplerConfig> {
    if s.runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    Ok(SamplerConfig::new(plan_p(s)?, s.q, s.seed)?.with_workers(workers))
}

fn run_sampler(su: &Setup, kind: SamplerKind, cfg: &SamplerConfig) -> Outcome<Estimate> {
    Ok(match kind {
        SamplerKind::Es => estimate_es(&su.graph, &su.motif, su.delta, cfg)?,
        SamplerKind::Ews => estimate_ews(&su.graph, &su.motif, su.delta, cfg)?,
    })
}

fn tag(kind: SamplerKind) -> &'static str {
    match kind {
        SamplerKind::Es => "es",
        SamplerKind::Ews => "ews",
    }
}

fn record(algorithm: &str, est: &Estimate, exact: Option<u64>) -> RunRecord {
    RunRecord {
        algorithm: algorithm.to_string(),
        seed: est.config.seed,
        estimate: est.value,
        relative_error: exact.map(|x| relative_error(est.value, x)),
        sampled_edges: Some(est.sampled_edges),
        elapsed_ms: ms(est.elapsed),
    }
}

/// Fills the top-level fields of a sampler report from its runs.
fn finish_runs(report: &mut RunReport, cfg: &SamplerConfig, runs: Vec<RunRecord>) {
    let n = runs.len() as f64;
    report.p = Some(cfg.p);
    report.q = Some(cfg.q);
    report.seed = Some(cfg.seed);
    report.estimate = Some(runs.iter().map(|r| r.estimate).sum::<f64>() / n);
    report.elapsed_ms = runs.iter().map(|r| r.elapsed_ms).sum::<f64>() / n;
    if runs.len() > 1 {
        report.runs = runs;
    }
}

fn exact<W: Write>(a: &CommonArgs, out: &mut W) -> Outcome {
    let su = setup(a)?;
    let start = Instant::now();
    let c = count_exact_with_workers(&su.graph, &su.motif, su.delta, a.workers)?;
    let mut report = base_report(a, &su.motif, "exact");
    report.elapsed_ms = ms(start.elapsed());
    report.estimate = Some(c as f64);
    report.stats = Some(su.graph.stats(su.delta));
    emit(out, a.format, &report)
}

fn sample<W: Write>(a: &SamplerArgs, kind: SamplerKind, out: &mut W) -> Outcome {
    let su = setup(&a.common)?;
    let cfg = config(&a.sampling, a.common.workers)?;
    let runs = (0..a.sampling.runs)
        .map(|r| Ok(record(tag(kind), &run_sampler(&su, kind, &cfg.with_seed(cfg.seed + r))?, None)))
        .collect::<Outcome<Vec<_>>>()?;
    let mut report = base_report(&a.common, &su.motif, tag(kind));
    report.stats = Some(su.graph.stats(su.delta));
    finish_runs(&mut report, &cfg, runs);
    emit(out, a.common.format, &report)
}

fn stream<W: Write>(a: &StreamArgs, out: &mut W) -> Outcome {
    let delta = Delta::new(a.common.delta)?;
    let motif = load_motif(&a.common.motif)?;
    let cfg = config(&a.sampling, a.common.workers)?;
    let algo = match a.algo {
        SamplerKind::Es => StreamAlgorithm::EdgeSampling,
        SamplerKind::Ews => StreamAlgorithm::EdgeWedgeSampling,
    };
    // All runs share one pass over the input.
    let mut states = (0..a.sampling.runs)
        .map(|r| Stream::new(&motif, delta, cfg.with_seed(cfg.seed + r), algo))
        .collect::<temporal_motif::Result<Vec<_>>>()?;
    let input: Box<dyn BufRead> = if a.common.graph == Path::new("-") {
        Box::new(io::stdin().lock())
    } else {
        open_input(&a.common.graph).map_err(Error::from)?
    };
    let mut reader = RecordReader::new(input, EdgeListFormat::Auto);
    while let Some(rec) = reader.next_record()? {
        for s in &mut states {
            s.push(rec.src, rec.dst, rec.t)?;
        }
    }
    let peak = states.first().map_or(0, |s| s.peak_window());
    let name = format!("stream-{}", tag(a.algo));
    let runs: Vec<RunRecord> = states.into_iter().map(|s| record(&name, &s.finalize(), None)).collect();
    eprintln!("tmotif: peak window {peak} edges");
    let mut report = base_report(&a.common, &motif, &name);
    finish_runs(&mut report, &cfg, runs);
    emit(out, a.common.format, &report)
}

fn oracle<W: Write>(a: &CommonArgs, out: &mut W) -> Outcome {
    let su = setup(a)?;
    let start = Instant::now();
    let exact = count_exact_with_workers(&su.graph, &su.motif, su.delta, a.workers)?;
    let brute = brute_force_count(&su.graph, &su.motif, su.delta);
    let mut report = base_report(a, &su.motif, "oracle");
    report.elapsed_ms = ms(start.elapsed());
    report.estimate = Some(exact as f64);
    report.exact = Some(brute);
    report.relative_error = Some(relative_error(exact as f64, brute));
    report.stats = Some(su.graph.stats(su.delta));
    emit(out, a.format, &report)?;
    if exact != brute {
        return Err(Failure::Mismatch { exact, oracle: brute });
    }
    Ok(())
}

fn bench<W: Write>(a: &BenchArgs, out: &mut W) -> Outcome {
    let su = setup(&a.common)?;
    let cfg = config(&a.sampling, a.common.workers)?;
    let kinds = if a.algo.is_empty() {
        let mut k = vec![SamplerKind::Es];
        if su.motif.classify() != temporal_motif::MotifClass::General {
            k.push(SamplerKind::Ews);
        }
        k
    } else {
        a.algo.clone()
    };
    let start = Instant::now();
    let exact = count_exact_with_workers(&su.graph, &su.motif, su.delta, a.common.workers)?;
    let exact_ms = ms(start.elapsed());

    let mut runs = Vec::new();
    for &kind in &kinds {
        for r in 0..a.sampling.runs {
            let est = run_sampler(&su, kind, &cfg.with_seed(cfg.seed + r))?;
            runs.push(record(tag(kind), &est, Some(exact)));
        }
    }
    let mut report = base_report(&a.common, &su.motif, "bench");
    report.p = Some(cfg.p);
    report.q = Some(cfg.q);
    report.seed = Some(cfg.seed);
    report.estimate = Some(exact as f64);
    report.exact = Some(exact);
    report.relative_error = Some(0.0);
    report.elapsed_ms = exact_ms;
    report.stats = Some(su.graph.stats(su.delta));
    report.summary = aggregate_records(&runs);
    report.runs = runs;
    emit(out, a.common.format, &report)
}

fn stats<W: Write>(a: &StatsArgs, out: &mut W) -> Outcome {
    let delta = Delta::new(a.delta)?;
    let g = load_graph(&a.graph)?;
    let s = g.stats(delta);
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &s).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.serialize(s)?;
            w.flush()?;
        }
    }
    Ok(())
}
