//! Checks of the spanner guarantees, recomputed from the output graph.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::pipeline::{build, Mode};
use crate::spanner::{self, SpannerParams};
use crate::triangulation::{
    delaunay_with, emst, minimum_spanning_forest, CocircularPolicy, GeoGraph,
};
use crate::unitdisk::{ldel2_with, udel_with, UnitDiskInstance};

/// Relative slack applied when comparing measured stretch to a bound.
pub const STRETCH_EPS: f64 = 1e-9;

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `source` with Euclidean edge weights. Stops once every
/// vertex in `targets` is settled; an empty `targets` settles everything.
/// Unreached vertices get infinity.
pub fn shortest_paths(h: &GeoGraph, source: usize, targets: &[usize]) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; h.n()];
    let mut done = vec![false; h.n()];
    let mut pending = targets.iter().filter(|&&t| t != source).count();
    let wanted: Vec<bool> = if targets.is_empty() {
        Vec::new()
    } else {
        let mut w = vec![false; h.n()];
        for &t in targets {
            w[t] = true;
        }
        w
    };
    dist[source] = 0.0;
    let mut heap = BinaryHeap::from([Item(0.0, source)]);
    while let Some(Item(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if !wanted.is_empty() && wanted[u] && u != source {
            pending -= 1;
            if pending == 0 {
                break;
            }
        }
        for &v in h.neighbors(u) {
            let nd = d + h.length(u, v);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Item(nd, v));
            }
        }
    }
    dist
}

/// Runs `f` for every source, spread across worker threads; results come
/// back in source order.
fn per_source<T, F>(sources: &[usize], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(sources.len().max(1));
    if workers <= 1 || sources.len() < 64 {
        return sources.iter().map(|&s| f(s)).collect();
    }
    let chunk = sources.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = sources
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(|&s| f(s)).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// A maximum ratio with the pair that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stretch {
    #[serde(with = "float_or_inf")]
    pub value: f64,
    pub pair: Option<(usize, usize)>,
}

impl Stretch {
    fn unit() -> Self {
        Stretch {
            value: 1.0,
            pair: None,
        }
    }

    fn offer(&mut self, ratio: f64, pair: (usize, usize)) {
        if ratio > self.value || (ratio.is_infinite() && self.value.is_finite()) {
            self.value = ratio;
            self.pair = Some(pair);
        }
    }

    fn merge(mut self, other: Stretch) -> Stretch {
        if let Some(p) = other.pair {
            self.offer(other.value, p);
        }
        self
    }
}

fn same_vertices(h: &GeoGraph, g: &GeoGraph) -> Result<()> {
    if h.points() == g.points() {
        Ok(())
    } else {
        Err(Error::VertexSetMismatch)
    }
}

/// Largest `c_h(X,Y) / |XY|` over edges `XY` of `g`.
pub fn stretch_vs_base(h: &GeoGraph, g: &GeoGraph) -> Result<f64> {
    stretch_vs_base_detail(h, g).map(|s| s.value)
}

/// Like [`stretch_vs_base`], also reporting the worst edge. Only edges of `g`
/// missing from `h` need a search, one per smaller endpoint.
pub fn stretch_vs_base_detail(h: &GeoGraph, g: &GeoGraph) -> Result<Stretch> {
    same_vertices(h, g)?;
    let mut targets: HashMap<usize, Vec<usize>> = HashMap::new();
    for (u, v) in g.edges() {
        if !h.has_edge(u, v) {
            targets.entry(u).or_default().push(v);
        }
    }
    let mut sources: Vec<usize> = targets.keys().copied().collect();
    sources.sort_unstable();
    let parts = per_source(&sources, |s| {
        let t = &targets[&s];
        let d = shortest_paths(h, s, t);
        let mut best = Stretch::unit();
        for &v in t {
            best.offer(d[v] / g.length(s, v), (s, v));
        }
        best
    });
    Ok(parts.into_iter().fold(Stretch::unit(), Stretch::merge))
}

/// Largest `c_h(A,B) / |AB|` over all pairs; infinite when `h` is
/// disconnected.
pub fn stretch_vs_complete(h: &GeoGraph) -> Stretch {
    let pts = h.points();
    let sources: Vec<usize> = (0..h.n()).collect();
    let parts = per_source(&sources, |s| {
        let d = shortest_paths(h, s, &[]);
        let mut best = Stretch::unit();
        for t in s + 1..h.n() {
            best.offer(d[t] / geom::dist(&pts[s], &pts[t]), (s, t));
        }
        best
    });
    parts.into_iter().fold(Stretch::unit(), Stretch::merge)
}

/// Over pairs connected in `reference`: the largest `c_h / |AB|` and the
/// largest `c_h / c_reference`.
pub fn stretch_within(h: &GeoGraph, reference: &GeoGraph) -> Result<(Stretch, Stretch)> {
    same_vertices(h, reference)?;
    let pts = h.points();
    let sources: Vec<usize> = (0..h.n()).collect();
    let parts = per_source(&sources, |s| {
        let dh = shortest_paths(h, s, &[]);
        let dr = shortest_paths(reference, s, &[]);
        let (mut euclid, mut rel) = (Stretch::unit(), Stretch::unit());
        for t in s + 1..h.n() {
            if dr[t].is_finite() {
                euclid.offer(dh[t] / geom::dist(&pts[s], &pts[t]), (s, t));
                rel.offer(dh[t] / dr[t], (s, t));
            }
        }
        (euclid, rel)
    });
    Ok(parts
        .into_iter()
        .fold((Stretch::unit(), Stretch::unit()), |(a, b), (c, d)| {
            (a.merge(c), b.merge(d))
        }))
}

/// Outcome of a planarity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityCheck {
    pub plane: bool,
    /// Smallest conflicting pair of edges, if any.
    pub crossing: Option<((usize, usize), (usize, usize))>,
}

/// Exact planarity test. Edges are bucketed on a uniform grid over the
/// bounding box (about one cell per edge) and only edges sharing a cell are
/// compared.
pub fn is_plane(h: &GeoGraph) -> PlanarityCheck {
    let edges = h.edges();
    let pts = h.points();
    let m = edges.len();
    if m < 2 {
        return PlanarityCheck {
            plane: true,
            crossing: None,
        };
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let side = ((m as f64).sqrt().ceil() as usize).max(1);
    let cw = ((x1 - x0) / side as f64).max(f64::MIN_POSITIVE);
    let ch = ((y1 - y0) / side as f64).max(f64::MIN_POSITIVE);
    // Cell ranges are widened by a relative margin so that rounding never
    // drops a cell a segment actually touches.
    let col = |x: f64| (((x - x0) / cw).floor().max(0.0) as usize).min(side - 1);
    let row = |y: f64| (((y - y0) / ch).floor().max(0.0) as usize).min(side - 1);
    let mx = cw * 1e-6;
    let my = ch * 1e-6;
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); side * side];
    for (idx, &(u, v)) in edges.iter().enumerate() {
        let (a, b) = if pts[u].x <= pts[v].x {
            (&pts[u], &pts[v])
        } else {
            (&pts[v], &pts[u])
        };
        let (c_lo, c_hi) = (col(a.x - mx), col(b.x + mx));
        for c in c_lo..=c_hi {
            let xa = (x0 + c as f64 * cw).max(a.x);
            let xb = (x0 + (c + 1) as f64 * cw).min(b.x);
            let (ya, yb) = if b.x > a.x {
                let t = |x: f64| a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x)).clamp(0.0, 1.0);
                (t(xa.min(xb)), t(xa.max(xb)))
            } else {
                (a.y, b.y)
            };
            let (r_lo, r_hi) = (row(ya.min(yb) - my), row(ya.max(yb) + my));
            for r in r_lo..=r_hi {
                cells[r * side + c].push(idx);
            }
        }
    }
    let mut worst: Option<(usize, usize)> = None;
    for cell in &cells {
        for (i, &e) in cell.iter().enumerate() {
            for &f in &cell[i + 1..] {
                let (e, f) = (e.min(f), e.max(f));
                if worst.is_some_and(|w| w <= (e, f)) {
                    continue;
                }
                let ((a, b), (c, d)) = (edges[e], edges[f]);
                if geom::segments_conflict(&pts[a], &pts[b], &pts[c], &pts[d]) {
                    worst = Some((e, f));
                }
            }
        }
    }
    PlanarityCheck {
        plane: worst.is_none(),
        crossing: worst.map(|(e, f)| (edges[e], edges[f])),
    }
}

fn forest_weight(g: &GeoGraph, forest: &[(usize, usize)]) -> f64 {
    forest.iter().map(|&(u, v)| g.length(u, v)).sum()
}

fn weights_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Whether `h` contains a spanning tree as light as the Euclidean minimum
/// spanning tree of `points`.
pub fn contains_emst(h: &GeoGraph, points: &[Point]) -> Result<bool> {
    if h.points() != points {
        return Err(Error::VertexSetMismatch);
    }
    if points.len() < 2 {
        return Ok(true);
    }
    let reference = emst(&delaunay_with(points, CocircularPolicy::TieBreak)?)?;
    let forest = minimum_spanning_forest(h);
    if forest.len() + 1 != points.len() {
        return Ok(false);
    }
    let mut sorted = forest.clone();
    sorted.sort_unstable();
    Ok(sorted == reference.edges()
        || weights_match(forest_weight(h, &forest), reference.total_weight))
}

/// Whether `h` contains a minimum spanning forest of `reference`: same
/// number of edges and equal total weight.
pub fn contains_msf(h: &GeoGraph, reference: &GeoGraph) -> Result<bool> {
    same_vertices(h, reference)?;
    let want = minimum_spanning_forest(reference);
    let got = minimum_spanning_forest(h);
    if want.len() != got.len() {
        return Ok(false);
    }
    let (mut a, mut b) = (want.clone(), got.clone());
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b || weights_match(forest_weight(reference, &want), forest_weight(h, &got)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Degree,
    Crossing,
    EmstMissing,
    NotSubgraph,
    Disconnected,
    StretchBase,
    StretchComplete,
    StretchUdg,
    DistributedMismatch,
    MessageBound,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Degree => "degree",
            ViolationKind::Crossing => "crossing",
            ViolationKind::EmstMissing => "emst_missing",
            ViolationKind::NotSubgraph => "not_subgraph",
            ViolationKind::Disconnected => "disconnected",
            ViolationKind::StretchBase => "stretch_base",
            ViolationKind::StretchComplete => "stretch_complete",
            ViolationKind::StretchUdg => "stretch_udg",
            ViolationKind::DistributedMismatch => "distributed_mismatch",
            ViolationKind::MessageBound => "message_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending edge or pair; for degree violations `(v, v)`.
    pub pair: (usize, usize),
    /// Second edge of a crossing.
    pub other: Option<(usize, usize)>,
    #[serde(with = "float_or_inf")]
    pub measured: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub edge_count: usize,
    pub base_edge_count: usize,
    pub max_degree: usize,
    pub degree_bound_ok: bool,
    pub planar_ok: bool,
    pub emst_contained_ok: bool,
    pub subgraph_ok: bool,
    pub connected_ok: bool,
    #[serde(with = "float_or_inf")]
    pub stretch_vs_base: f64,
    #[serde(with = "float_or_inf")]
    pub stretch_vs_complete: f64,
    pub rho_k: f64,
    pub c_del: f64,
    pub combined_bound: f64,
    /// UDG mode: largest `c_h / c_U` over pairs connected in the unit disk graph.
    #[serde(
        default,
        with = "opt_float_or_inf",
        skip_serializing_if = "Option::is_none"
    )]
    pub stretch_vs_udg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub messages: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message_bound_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distributed_agreement: Option<bool>,
    pub violations: Vec<Violation>,
}

fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        v.to_string()
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `key=value` lines, one per field, then one `violation=` line each.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("mode", self.mode.to_string());
        kv("n", self.n.to_string());
        kv("k", self.k.to_string());
        kv("edge_count", self.edge_count.to_string());
        kv("base_edge_count", self.base_edge_count.to_string());
        kv("max_degree", self.max_degree.to_string());
        kv("degree_bound_ok", self.degree_bound_ok.to_string());
        kv("planar_ok", self.planar_ok.to_string());
        kv("emst_contained_ok", self.emst_contained_ok.to_string());
        kv("subgraph_ok", self.subgraph_ok.to_string());
        kv("connected_ok", self.connected_ok.to_string());
        kv("stretch_vs_base", fmt_f64(self.stretch_vs_base));
        kv("stretch_vs_complete", fmt_f64(self.stretch_vs_complete));
        kv("rho_k", fmt_f64(self.rho_k));
        kv("c_del", fmt_f64(self.c_del));
        kv("combined_bound", fmt_f64(self.combined_bound));
        if let Some(s) = self.stretch_vs_udg {
            kv("stretch_vs_udg", fmt_f64(s));
        }
        if let Some(m) = self.messages {
            kv("messages", m.to_string());
        }
        if let Some(b) = self.message_bound_ok {
            kv("message_bound_ok", b.to_string());
        }
        if let Some(b) = self.distributed_agreement {
            kv("distributed_agreement", b.to_string());
        }
        kv("violations", self.violations.len().to_string());
        for v in &self.violations {
            let mut line = format!("{},{}-{}", v.kind.as_str(), v.pair.0, v.pair.1);
            if let Some((a, b)) = v.other {
                let _ = write!(line, ",{a}-{b}");
            }
            let _ = write!(
                line,
                ",measured={},bound={}",
                fmt_f64(v.measured),
                fmt_f64(v.bound)
            );
            kv("violation", line);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Precondition(format!("invalid report: {e}")))
    }
}

/// Checks `h` against the guarantees for `points` in the given mode. The
/// base graph is recomputed from the points; nothing is taken from the
/// pipeline that produced `h`.
pub fn verify_graph(
    points: &[Point],
    h: &GeoGraph,
    k: usize,
    mode: Mode,
    policy: CocircularPolicy,
) -> Result<VerificationReport> {
    let params = SpannerParams::new(k)?;
    if h.points() != points {
        return Err(Error::VertexSetMismatch);
    }
    let rho_k = params.stretch_bound();
    let c_del = spanner::c_del();
    let combined_bound = spanner::combined_bound(k)?;
    let mut violations = Vec::new();

    let (base, unit_disk) = match mode {
        Mode::Euclidean => (delaunay_with(points, policy)?, None),
        Mode::Udg => {
            let u = UnitDiskInstance::new(points.to_vec())?;
            (ldel2_with(&u, policy)?, Some(u))
        }
    };

    let max_degree = h.max_degree();
    for v in 0..h.n() {
        if h.degree(v) > k {
            violations.push(Violation {
                kind: ViolationKind::Degree,
                pair: (v, v),
                other: None,
                measured: h.degree(v) as f64,
                bound: k as f64,
            });
        }
    }

    let plane = is_plane(h);
    if let Some((e, f)) = plane.crossing {
        violations.push(Violation {
            kind: ViolationKind::Crossing,
            pair: e,
            other: Some(f),
            measured: 1.0,
            bound: 0.0,
        });
    }

    let subgraph_ok = h.is_subgraph_of(&base);
    if !subgraph_ok {
        let e = h
            .edges()
            .into_iter()
            .find(|&(u, v)| !base.has_edge(u, v))
            .expect("extra edge");
        violations.push(Violation {
            kind: ViolationKind::NotSubgraph,
            pair: e,
            other: None,
            measured: 1.0,
            bound: 0.0,
        });
    }

    let emst_contained_ok = match &unit_disk {
        None => contains_emst(h, points)?,
        Some(_) => contains_msf(h, &udel_with(points, policy)?)?,
    };
    if !emst_contained_ok {
        violations.push(Violation {
            kind: ViolationKind::EmstMissing,
            pair: (0, 0),
            other: None,
            measured: 0.0,
            bound: 1.0,
        });
    }

    let sb = stretch_vs_base_detail(h, &base)?;
    if sb.value > rho_k * (1.0 + STRETCH_EPS) {
        violations.push(Violation {
            kind: ViolationKind::StretchBase,
            pair: sb.pair.unwrap_or((0, 0)),
            other: None,
            measured: sb.value,
            bound: rho_k,
        });
    }

    let (stretch_vs_complete, stretch_vs_udg, connected_ok) = match &unit_disk {
        None => {
            let sc = stretch_vs_complete(h);
            if sc.value > combined_bound * (1.0 + STRETCH_EPS) {
                violations.push(Violation {
                    kind: if sc.value.is_infinite() {
                        ViolationKind::Disconnected
                    } else {
                        ViolationKind::StretchComplete
                    },
                    pair: sc.pair.unwrap_or((0, 0)),
                    other: None,
                    measured: sc.value,
                    bound: combined_bound,
                });
            }
            (sc.value, None, sc.value.is_finite())
        }
        Some(u) => {
            let (euclid, rel) = stretch_within(h, u.graph())?;
            if rel.value > combined_bound * (1.0 + STRETCH_EPS) {
                violations.push(Violation {
                    kind: if rel.value.is_infinite() {
                        ViolationKind::Disconnected
                    } else {
                        ViolationKind::StretchUdg
                    },
                    pair: rel.pair.unwrap_or((0, 0)),
                    other: None,
                    measured: rel.value,
                    bound: combined_bound,
                });
            }
            (euclid.value, Some(rel.value), rel.value.is_finite())
        }
    };

    Ok(VerificationReport {
        mode,
        n: points.len(),
        k,
        edge_count: h.edge_count(),
        base_edge_count: base.edge_count(),
        max_degree,
        degree_bound_ok: max_degree <= k,
        planar_ok: plane.plane,
        emst_contained_ok,
        subgraph_ok,
        connected_ok,
        stretch_vs_base: sb.value,
        stretch_vs_complete,
        rho_k,
        c_del,
        combined_bound,
        stretch_vs_udg,
        messages: None,
        message_bound_ok: None,
        distributed_agreement: None,
        violations,
    })
}

/// Builds the spanner for `points` and verifies it; in UDG mode the
/// distributed run is also checked against the centralized result.
pub fn verify_theorem(points: &[Point], k: usize, mode: Mode) -> Result<VerificationReport> {
    verify_theorem_with(points, k, mode, CocircularPolicy::Reject)
}

pub fn verify_theorem_with(
    points: &[Point],
    k: usize,
    mode: Mode,
    policy: CocircularPolicy,
) -> Result<VerificationReport> {
    let params = SpannerParams::new(k)?;
    let out = build(points, &params, mode, policy)?;
    let mut report = verify_graph(points, &out.spanner, k, mode, policy)?;
    if let Some(run) = &out.distributed {
        let total = run.log.total();
        let agree = run.spanner == out.spanner;
        report.messages = Some(total);
        report.message_bound_ok = Some(total <= 4 * points.len());
        report.distributed_agreement = Some(agree);
        if total > 4 * points.len() {
            report.violations.push(Violation {
                kind: ViolationKind::MessageBound,
                pair: (0, 0),
                other: None,
                measured: total as f64,
                bound: (4 * points.len()) as f64,
            });
        }
        if !agree {
            let diff = run
                .spanner
                .edge_set()
                .symmetric_difference(&out.spanner.edge_set())
                .next()
                .copied()
                .unwrap_or((0, 0));
            report.violations.push(Violation {
                kind: ViolationKind::DistributedMismatch,
                pair: diff,
                other: None,
                measured: 1.0,
                bound: 0.0,
            });
        }
    }
    Ok(report)
}

/// JSON has no infinity; disconnected pairs are written as the string `"inf"`.
mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected number or \"inf\", got {t:?}"
            ))),
        }
    }
}

mod opt_float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::float_or_inf::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::float_or_inf")] f64);
        Option::<Wrap>::deserialize(d).map(|o| o.map(|w| w.0))
    }
}
