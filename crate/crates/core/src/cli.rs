//! Command-line front end: `gen`, `build`, `verify`, `simulate`, `witness`.
//!
//! Exit status is 0 when everything passes, 1 when a check fails and 2 for
//! usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::generate::{generate, Distribution, Region};
use crate::geom::Point;
use crate::io;
use crate::pipeline::Mode;
use crate::spanner::{self, modified_yao, SpannerParams, MIN_K};
use crate::triangulation::{delaunay_with, CocircularPolicy, GeoGraph};
use crate::unitdisk::{ldel2_with, simulate_distributed_with, UnitDiskInstance};
use crate::verify;
use crate::witness::{check_canpath, dropped_edge_witnesses, dump_line, CheckOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "planespan", version, about = "Bounded-degree plane spanners")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random point set.
    Gen(GenArgs),
    /// Build the spanner for a point file.
    Build(BuildArgs),
    /// Check a spanner edge file against the guarantees.
    Verify(VerifyArgs),
    /// Run the four-round distributed protocol on the unit disk graph.
    Simulate(SimulateArgs),
    /// Emit a witness path for every dropped base edge.
    Witness(WitnessArgs),
}

fn parse_k(s: &str) -> std::result::Result<usize, String> {
    let k: usize = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if k < MIN_K {
        return Err(format!(
            "k = {k} is below {MIN_K}; the degree and stretch guarantees are only proven for k >= {MIN_K}"
        ));
    }
    Ok(k)
}

#[derive(Debug, Clone, Args)]
pub struct PolicyArg {
    /// Resolve cocircular points by an id-ordered perturbation instead of
    /// failing.
    #[arg(long)]
    pub tie_break: bool,
}

impl PolicyArg {
    fn policy(&self) -> CocircularPolicy {
        if self.tie_break {
            CocircularPolicy::TieBreak
        } else {
            CocircularPolicy::Reject
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "uniform")]
    pub dist: Distribution,
    /// Region as `WxH`.
    #[arg(long, default_value = "1x1")]
    pub region: Region,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "14", value_parser = parse_k)]
    pub k: usize,
    #[arg(long, default_value = "euclidean")]
    pub mode: Mode,
    /// SVG figure of points, spanner edges and dashed dropped edges.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Spanner edge file.
    #[arg(long)]
    pub out: PathBuf,
    /// Stats as `key=value` lines; printed to stdout when omitted.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    #[command(flatten)]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long, default_value = "14", value_parser = parse_k)]
    pub k: usize,
    #[arg(long, default_value = "euclidean")]
    pub mode: Mode,
    /// Report as `key=value` lines; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, default_value = "14", value_parser = parse_k)]
    pub k: usize,
    /// Message trace, `round,sender,kind,payload_size` per line.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Edge file of the distributed result.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, default_value = "14", value_parser = parse_k)]
    pub k: usize,
    #[arg(long, default_value = "euclidean")]
    pub mode: Mode,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub policy: PolicyArg,
}

/// Whether all checks of a command passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cfg) {
        Ok(Outcome::Pass) => EXIT_OK,
        Ok(Outcome::Fail) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Witness(a) => cmd_witness(a),
    }
}

fn read_points(path: &Path) -> Result<Vec<Point>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_points(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Base graph for the mode: Delaunay, or the 2-localized Delaunay graph.
fn base_graph(points: &[Point], mode: Mode, policy: CocircularPolicy) -> Result<GeoGraph> {
    match mode {
        Mode::Euclidean => delaunay_with(points, policy).context("delaunay stage"),
        Mode::Udg => {
            let u = UnitDiskInstance::new(points.to_vec()).context("unit disk stage")?;
            ldel2_with(&u, policy).context("ldel2 stage")
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<Outcome> {
    let pts = generate(a.n, a.dist, a.region, a.seed).context("generation")?;
    write(&a.out, &io::write_points(&pts))?;
    Ok(Outcome::Pass)
}

fn cmd_build(a: &BuildArgs) -> Result<Outcome> {
    let points = read_points(&a.input)?;
    let params = SpannerParams::new(a.k)?;
    let policy = a.policy.policy();
    let start = Instant::now();
    let base = base_graph(&points, a.mode, policy)?;
    let h = modified_yao(&base, &params);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let messages = match a.mode {
        Mode::Udg => {
            let u = UnitDiskInstance::new(points.clone())?;
            let run =
                simulate_distributed_with(&u, &params, policy).context("distributed stage")?;
            Some(run.log.total())
        }
        Mode::Euclidean => None,
    };
    let stretch = verify::stretch_vs_base(&h, &base)?;

    write(&a.out, &io::write_edges(&h))?;
    if let Some(svg) = &a.svg {
        write(svg, &io::render_svg(&base, &h))?;
    }
    let mut stats = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(stats, "{k}={v}");
    };
    kv("n", points.len().to_string());
    kv("k", a.k.to_string());
    kv("mode", a.mode.to_string());
    kv("max_degree", h.max_degree().to_string());
    kv("edges", h.edge_count().to_string());
    kv("base_edges", base.edge_count().to_string());
    kv("measured_stretch_vs_base", stretch.to_string());
    kv("rho_k", params.stretch_bound().to_string());
    kv("c_del", spanner::c_del().to_string());
    kv("combined_bound", spanner::combined_bound(a.k)?.to_string());
    kv("wall_ms", format!("{wall_ms:.3}"));
    if let Some(m) = messages {
        kv("messages", m.to_string());
    }
    emit(a.stats.as_deref(), &stats)?;
    Ok(Outcome::Pass)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let points = read_points(&a.points)?;
    let text =
        fs::read_to_string(&a.edges).with_context(|| format!("reading {}", a.edges.display()))?;
    let h = io::parse_edges(&text, &points)
        .with_context(|| format!("parsing {}", a.edges.display()))?;
    let report = verify::verify_graph(&points, &h, a.k, a.mode, a.policy.policy())
        .context("verification")?;
    emit(a.out.as_deref(), &report.to_key_value())?;
    if let Some(j) = &a.json {
        write(j, &report.to_json())?;
    }
    Ok(if report.passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Outcome> {
    let points = read_points(&a.points)?;
    let params = SpannerParams::new(a.k)?;
    let policy = a.policy.policy();
    let u = UnitDiskInstance::new(points.clone()).context("unit disk stage")?;
    let run = simulate_distributed_with(&u, &params, policy).context("distributed stage")?;
    let central = modified_yao(&ldel2_with(&u, policy).context("ldel2 stage")?, &params);

    let n = points.len();
    let non_isolated = (0..n).filter(|&v| u.graph().degree(v) > 0).count();
    let expected = n + 3 * non_isolated;
    let total = run.log.total();
    let agreement = run.spanner == central;
    let ok = agreement && total == expected && total <= 4 * n;

    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k}={v}");
    };
    kv("n", n.to_string());
    kv("k", a.k.to_string());
    kv("non_isolated", non_isolated.to_string());
    kv("messages", total.to_string());
    for (r, c) in run.log.per_round.iter().enumerate() {
        kv(&format!("round{}_messages", r + 1), c.to_string());
    }
    kv("expected_messages", expected.to_string());
    kv("message_bound_ok", (total <= 4 * n).to_string());
    kv("max_payload", run.log.max_payload().to_string());
    kv("edges", run.spanner.edge_count().to_string());
    kv("max_degree", run.spanner.max_degree().to_string());
    kv("distributed_agreement", agreement.to_string());
    print!("{out}");

    if let Some(t) = &a.trace {
        write(t, &run.log.to_trace())?;
    }
    if let Some(o) = &a.out {
        write(o, &io::write_edges(&run.spanner))?;
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_witness(a: &WitnessArgs) -> Result<Outcome> {
    let points = read_points(&a.points)?;
    let params = SpannerParams::new(a.k)?;
    let base = base_graph(&points, a.mode, a.policy.policy())?;
    let h = modified_yao(&base, &params);
    let witnesses = dropped_edge_witnesses(&base, &params).context("witness stage")?;

    let (mut failed, mut flagged, mut outside) = (0, 0, 0);
    let mut dump = String::new();
    for w in &witnesses {
        let rep = check_canpath(&w.path, &base, &params);
        let outcomes = rep.outcomes();
        if outcomes.contains(&CheckOutcome::Fail) {
            failed += 1;
        }
        if outcomes.contains(&CheckOutcome::Flagged) {
            flagged += 1;
        }
        if !w.path.edges().all(|(u, v)| h.has_edge(u, v)) {
            outside += 1;
        }
        dump.push_str(&dump_line(&w.path, &rep));
        dump.push('\n');
    }
    write(&a.out, &dump)?;
    println!("witnesses={}", witnesses.len());
    println!("failed={failed}");
    println!("flagged={flagged}");
    println!("paths_outside_spanner={outside}");
    Ok(if failed == 0 && outside == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
