//! Witness paths for dropped edges.
//!
//! For edges `CA`, `CB` of a Delaunay-type graph with `CA` the shortest edge in
//! the sector `BCA` (at most `2pi/k` wide), a short path from `A` to `B`
//! exists. When triangle `ABC` is empty it is the *outward* path, built by
//! recursively splitting `AB` at an intermediate point on the far side of the
//! chord. Otherwise it is the *inward* path: walk the convex hull chain of the
//! interior points that faces `C` and join consecutive hull points by outward
//! paths.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, CircleSide, Orientation, Point};
use crate::spanner::{modified_yao_with_state, SpannerParams};
use crate::triangulation::GeoGraph;

/// Angular slack for checks (iii) and (iv), in radians.
pub const ANGLE_EPS: f64 = 1e-9;
/// Relative slack for the length check (i).
pub const LENGTH_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    Outward,
    Inward,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Outward => "OUTWARD",
            WitnessKind::Inward => "INWARD",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub kind: WitnessKind,
    pub anchor_c: usize,
    /// `A = M0, M1, ..., Mr = B`.
    pub vertices: Vec<usize>,
    /// The angle `BCA`.
    pub theta: f64,
    /// Hull chain `A = N0, ..., Ns = B` (inward paths only).
    pub hull_points: Option<Vec<usize>>,
    /// Deepest recursion level reached while splitting chords.
    pub depth: usize,
    /// Number of candidate points examined in the lens regions.
    pub lens_size: usize,
}

impl WitnessPath {
    pub fn a(&self) -> usize {
        self.vertices[0]
    }

    pub fn b(&self) -> usize {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Sum of the path's edge lengths.
    pub fn length(&self, g: &GeoGraph) -> f64 {
        self.edges().map(|(u, v)| g.length(u, v)).sum()
    }

    /// `2 * theta * R`, the length of the arc `AB` of the circle through
    /// `A`, `B` and `C`.
    pub fn arc_bound(&self, g: &GeoGraph) -> Result<f64> {
        let c = geom::circumcircle(g.point(self.a()), g.point(self.b()), g.point(self.anchor_c))?;
        Ok(2.0 * self.theta * c.radius_sq.sqrt())
    }
}

fn check_ids(g: &GeoGraph, ids: &[usize]) -> Result<()> {
    for &i in ids {
        if i >= g.n() {
            return Err(Error::UnknownPoint(i));
        }
    }
    Ok(())
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Validates the shared preconditions and returns the angle `BCA`.
fn check_anchor(g: &GeoGraph, c: usize, a: usize, b: usize, params: &SpannerParams) -> Result<f64> {
    check_ids(g, &[c, a, b])?;
    if c == a || c == b || a == b {
        return Err(precondition("C, A and B must be distinct"));
    }
    if !g.has_edge(c, a) || !g.has_edge(c, b) {
        return Err(precondition(format!(
            "{c}-{a} and {c}-{b} must both be edges"
        )));
    }
    let (pc, pa, pb) = (g.point(c), g.point(a), g.point(b));
    let side = geom::orientation(pc, pa, pb);
    if side == Orientation::Collinear {
        return Err(precondition("C, A and B are collinear"));
    }
    let theta = geom::angle_at(pc, pa, pb);
    if theta > TAU / params.k() as f64 + ANGLE_EPS {
        return Err(precondition(format!(
            "angle BCA = {theta} exceeds 2pi/{}",
            params.k()
        )));
    }
    if geom::cmp_dist(pc, pa, pc, pb) == Ordering::Greater {
        return Err(precondition("|CA| > |CB|"));
    }
    for &x in g.neighbors(c) {
        let px = g.point(x);
        let inside = geom::orientation(pc, pa, px) == side && geom::orientation(pc, px, pb) == side;
        if inside && geom::cmp_dist(pc, px, pc, pa) == Ordering::Less {
            return Err(precondition(format!(
                "{c}-{x} is shorter than {c}-{a} inside the sector"
            )));
        }
    }
    Ok(theta)
}

/// Points strictly inside triangle `CAB`.
fn interior_points(g: &GeoGraph, c: usize, a: usize, b: usize) -> Vec<usize> {
    let (pc, pa, pb) = (g.point(c), g.point(a), g.point(b));
    let s = geom::orientation(pc, pa, pb);
    g.points()
        .iter()
        .filter(|p| {
            geom::orientation(pc, pa, p) == s
                && geom::orientation(pa, pb, p) == s
                && geom::orientation(pb, pc, p) == s
        })
        .map(|p| p.id)
        .collect()
}

/// Outward path between `a` and `b` as seen from `c`; triangle `ABC` must
/// contain no points.
pub fn outward_path(
    g: &GeoGraph,
    c: usize,
    a: usize,
    b: usize,
    params: &SpannerParams,
) -> Result<WitnessPath> {
    let theta = check_anchor(g, c, a, b, params)?;
    if !interior_points(g, c, a, b).is_empty() {
        return Err(precondition(
            "triangle ABC contains points; the inward path applies",
        ));
    }
    let seg = outward_segment(g, c, a, b)?;
    Ok(WitnessPath {
        kind: WitnessKind::Outward,
        anchor_c: c,
        vertices: seg.vertices,
        theta,
        hull_points: None,
        depth: seg.depth,
        lens_size: seg.lens_size,
    })
}

struct Segment {
    vertices: Vec<usize>,
    depth: usize,
    lens_size: usize,
}

/// Candidates are the points of the circle through `c`, `a`, `b` (closed)
/// strictly beyond chord `ab` from `c`.
fn outward_segment(g: &GeoGraph, c: usize, a: usize, b: usize) -> Result<Segment> {
    let (pc, pa, pb) = (g.point(c), g.point(a), g.point(b));
    let near = geom::orientation(pa, pb, pc);
    if near == Orientation::Collinear {
        return Err(precondition(format!("{c}, {a} and {b} are collinear")));
    }
    let mut lens = Vec::new();
    for p in g.points() {
        if p.id == a || p.id == b || p.id == c || geom::orientation(pa, pb, p) != near.reversed() {
            continue;
        }
        if geom::in_circle(pc, pa, pb, p)? != CircleSide::Outside {
            lens.push(p.id);
        }
    }
    let lens_size = lens.len();
    let (vertices, depth) = split(g, a, b, lens)?;
    Ok(Segment {
        vertices,
        depth,
        lens_size,
    })
}

/// Recursive chord splitting. All `cands` lie strictly on one side of `pq`.
fn split(g: &GeoGraph, p: usize, q: usize, cands: Vec<usize>) -> Result<(Vec<usize>, usize)> {
    if g.has_edge(p, q) {
        return Ok((vec![p, q], 0));
    }
    let (pp, pq) = (g.point(p), g.point(q));
    let mut best = *cands.first().ok_or(Error::NoIntermediatePoint(p, q))?;
    for &t in &cands[1..] {
        match geom::in_circle(pp, pq, g.point(best), g.point(t))? {
            CircleSide::Inside => best = t,
            CircleSide::Cocircular if t < best => best = t,
            _ => {}
        }
    }
    let pt = g.point(best);
    let side = geom::orientation(pp, pq, pt);
    for &x in &cands {
        let px = g.point(x);
        if x != best
            && geom::orientation(pp, pq, px) == side
            && geom::in_circle(pp, pq, pt, px)? == CircleSide::Inside
        {
            return Err(Error::NoIntermediatePoint(p, q));
        }
    }
    let beyond = |u: &Point, v: &Point, away: &Point| {
        let far = geom::orientation(u, v, away).reversed();
        cands
            .iter()
            .copied()
            .filter(|&x| x != best && geom::orientation(u, v, g.point(x)) == far)
            .collect::<Vec<_>>()
    };
    let left = beyond(pp, pt, pq);
    let right = beyond(pt, pq, pp);
    let (mut path, d1) = split(g, p, best, left)?;
    let (tail, d2) = split(g, best, q, right)?;
    path.extend_from_slice(&tail[1..]);
    Ok((path, 1 + d1.max(d2)))
}

/// Inward path between `a` and `b`; triangle `ABC` must contain a point.
pub fn inward_path(
    g: &GeoGraph,
    c: usize,
    a: usize,
    b: usize,
    params: &SpannerParams,
) -> Result<WitnessPath> {
    let theta = check_anchor(g, c, a, b, params)?;
    let interior = interior_points(g, c, a, b);
    if interior.is_empty() {
        return Err(precondition(
            "triangle ABC is empty; the outward path applies",
        ));
    }
    let chain = hull_chain(g, a, b, &interior);
    let mut vertices = vec![a];
    let (mut depth, mut lens_size) = (0, 0);
    for w in chain.windows(2) {
        let seg = outward_segment(g, c, w[0], w[1])?;
        vertices.extend_from_slice(&seg.vertices[1..]);
        depth = depth.max(seg.depth);
        lens_size += seg.lens_size;
    }
    Ok(WitnessPath {
        kind: WitnessKind::Inward,
        anchor_c: c,
        vertices,
        theta,
        hull_points: Some(chain),
        depth,
        lens_size,
    })
}

/// The chain of the convex hull of `{a, b} + interior` from `a` to `b` that
/// avoids the hull edge `ab`.
fn hull_chain(g: &GeoGraph, a: usize, b: usize, interior: &[usize]) -> Vec<usize> {
    let mut pts: Vec<&Point> = interior.iter().map(|&i| g.point(i)).collect();
    pts.push(g.point(a));
    pts.push(g.point(b));
    pts.sort_by(|u, v| geom::cmp_xy(u, v));
    // Andrew's monotone chain, counterclockwise, collinear points dropped.
    let mut hull: Vec<&Point> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && geom::orientation(hull[hull.len() - 2], hull[hull.len() - 1], p)
                    != Orientation::Ccw
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let ids: Vec<usize> = hull.iter().map(|p| p.id).collect();
    let m = ids.len();
    let ia = ids.iter().position(|&x| x == a).expect("a is extreme");
    let forward: Vec<usize> = (0..m).map(|s| ids[(ia + s) % m]).collect();
    if forward[1] == b {
        // a -> b is the direct edge; walk the other way.
        let mut back: Vec<usize> = (0..m).map(|s| ids[(ia + m - s) % m]).collect();
        let ib = back.iter().position(|&x| x == b).expect("b on hull");
        back.truncate(ib + 1);
        back
    } else {
        let ib = forward.iter().position(|&x| x == b).expect("b on hull");
        forward[..=ib].to_vec()
    }
}

/// Witness for `CB` given the shortest edge `CA` of its sector, choosing the
/// outward or inward construction as appropriate.
pub fn witness_path(
    g: &GeoGraph,
    c: usize,
    a: usize,
    b: usize,
    params: &SpannerParams,
) -> Result<WitnessPath> {
    check_ids(g, &[c, a, b])?;
    if c != a && c != b && a != b && interior_points(g, c, a, b).is_empty() {
        outward_path(g, c, a, b, params)
    } else {
        inward_path(g, c, a, b, params)
    }
}

/// Properties of the hull chain of an inward path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    /// Every inner hull point is adjacent to `C`.
    pub adjacent_to_c: bool,
    /// `|CN_i| <= |CN_{i+1}|` along the chain.
    pub distances_nondecreasing: bool,
    /// The chain bends away from `C` at every inner hull point.
    pub reflex_towards_c: bool,
}

impl HullReport {
    pub fn all_ok(&self) -> bool {
        self.adjacent_to_c && self.distances_nondecreasing && self.reflex_towards_c
    }
}

/// Hull chain properties, or `None` for outward paths.
pub fn check_hull(w: &WitnessPath, g: &GeoGraph) -> Option<HullReport> {
    let chain = w.hull_points.as_ref()?;
    let pc = g.point(w.anchor_c);
    let s = geom::orientation(pc, g.point(w.a()), g.point(w.b()));
    let s_len = chain.len() - 1;
    let inner = 1..s_len;
    let adjacent_to_c = inner.clone().all(|i| g.has_edge(w.anchor_c, chain[i]));
    let distances_nondecreasing = inner.clone().all(|i| {
        geom::cmp_dist(pc, g.point(chain[i]), pc, g.point(chain[i + 1])) != Ordering::Greater
    });
    let reflex_towards_c = inner.into_iter().all(|i| {
        let o = geom::orientation(
            g.point(chain[i - 1]),
            g.point(chain[i]),
            g.point(chain[i + 1]),
        );
        o != s
    });
    Some(HullReport {
        adjacent_to_c,
        distances_nondecreasing,
        reflex_towards_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// The check could not be evaluated unambiguously.
    Flagged,
}

impl CheckOutcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "fail",
            CheckOutcome::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanPathReport {
    /// `|CA| + path length <= rho(k) |CB|`.
    pub i: CheckOutcome,
    /// No graph edge between non-consecutive path vertices inside the region
    /// bounded by `CA`, `CB` and the path.
    pub ii: CheckOutcome,
    /// Every inner path angle, measured on the side of `C`, exceeds
    /// `(k-2)pi/k`.
    pub iii: CheckOutcome,
    /// The angle `CAM1` is at least `pi/2 - pi/k`.
    pub iv: CheckOutcome,
    pub cost: f64,
    pub cost_bound: f64,
    pub min_inner_angle: Option<f64>,
    pub angle_at_a: f64,
}

impl CanPathReport {
    pub fn all_pass(&self) -> bool {
        [self.i, self.ii, self.iii, self.iv]
            .iter()
            .all(|&c| c == CheckOutcome::Pass)
    }

    pub fn outcomes(&self) -> [CheckOutcome; 4] {
        [self.i, self.ii, self.iii, self.iv]
    }
}

/// Interior angle at `v` of a polygon with orientation `s`, where `p` and `n`
/// are the previous and next vertices.
fn interior_angle(s: Orientation, p: &Point, v: &Point, n: &Point) -> f64 {
    match s {
        Orientation::Cw => geom::ccw_angle(v, p, n),
        _ => geom::ccw_angle(v, n, p),
    }
}

/// Whether direction `v -> d` lies in the closed interior wedge at `v`.
fn in_wedge(s: Orientation, p: &Point, v: &Point, n: &Point, d: &Point) -> bool {
    let sg = s.sign();
    let o = |a: &Point, b: &Point, c: &Point| geom::orientation(a, b, c).sign() * sg;
    let left_of_next = o(v, n, d) >= 0;
    let left_of_prev = o(p, v, d) >= 0;
    match o(p, v, n) {
        1 => left_of_next && left_of_prev,
        -1 => left_of_next || left_of_prev,
        _ => left_of_next,
    }
}

fn is_simple(poly: &[&Point]) -> bool {
    let m = poly.len();
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (poly[i], poly[(i + 1) % m]);
            let (c, d) = (poly[j], poly[(j + 1) % m]);
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if adjacent {
                // Adjacent sides may only share their common vertex.
                let conflict = if j == i + 1 {
                    geom::segments_conflict(a, b, c, d)
                } else {
                    geom::segments_conflict(c, d, a, b)
                };
                if conflict && m > 2 {
                    return false;
                }
            } else if geom::segments_conflict(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Evaluates properties (i)-(iv) for a witness path.
pub fn check_canpath(w: &WitnessPath, g: &GeoGraph, params: &SpannerParams) -> CanPathReport {
    let k = params.k() as f64;
    let pc = g.point(w.anchor_c);
    let m: Vec<&Point> = w.vertices.iter().map(|&v| g.point(v)).collect();
    let r = m.len() - 1;
    let s = geom::orientation(pc, m[0], m[r]);

    let cost = geom::dist(pc, m[0]) + w.length(g);
    let cost_bound = params.stretch_bound() * geom::dist(pc, m[r]);
    let i = CheckOutcome::from_bool(cost <= cost_bound * (1.0 + LENGTH_EPS));

    let mut poly: Vec<&Point> = vec![pc];
    poly.extend(m.iter().copied());
    let ii = if !is_simple(&poly) {
        CheckOutcome::Flagged
    } else {
        let prev = |i: usize| if i == 0 { pc } else { m[i - 1] };
        let next = |i: usize| if i == r { pc } else { m[i + 1] };
        let mut ok = true;
        'outer: for a in 0..=r {
            for b in a + 2..=r {
                if g.has_edge(w.vertices[a], w.vertices[b])
                    && in_wedge(s, prev(a), m[a], next(a), m[b])
                {
                    ok = false;
                    break 'outer;
                }
            }
        }
        CheckOutcome::from_bool(ok)
    };

    let min_inner_angle = (1..r)
        .map(|i| interior_angle(s, m[i - 1], m[i], m[i + 1]))
        .min_by(f64::total_cmp);
    let iii =
        CheckOutcome::from_bool(min_inner_angle.is_none_or(|a| a > (k - 2.0) * PI / k - ANGLE_EPS));

    let angle_at_a = interior_angle(s, pc, m[0], m[1]);
    let iv = CheckOutcome::from_bool(angle_at_a >= FRAC_PI_2 - PI / k - ANGLE_EPS);

    CanPathReport {
        i,
        ii,
        iii,
        iv,
        cost,
        cost_bound,
        min_inner_angle,
        angle_at_a,
    }
}

/// One line `kind,C,A,B,theta,M0;M1;...;Mr,checks=i:..,ii:..,iii:..,iv:..`.
pub fn dump_line(w: &WitnessPath, report: &CanPathReport) -> String {
    let verts: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
    let mut out = format!(
        "{},{},{},{},{},{},checks=",
        w.kind,
        w.anchor_c,
        w.a(),
        w.b(),
        w.theta,
        verts.join(";")
    );
    for (idx, (name, c)) in ["i", "ii", "iii", "iv"]
        .iter()
        .zip(report.outcomes())
        .enumerate()
    {
        if idx > 0 {
            out.push(',');
        }
        let _ = write!(out, "{name}:{}", c.as_str());
    }
    out
}

/// A dropped edge `CB` with its anchor `CA` and witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedEdgeWitness {
    pub edge: (usize, usize),
    pub path: WitnessPath,
}

/// Witnesses for every edge of `g` missing from the modified Yao subgraph.
/// `C` is an endpoint that did not select the edge (the smaller id when both
/// declined) and `A` the shortest edge of `CB`'s cone at `C`.
pub fn dropped_edge_witnesses(
    g: &GeoGraph,
    params: &SpannerParams,
) -> Result<Vec<DroppedEdgeWitness>> {
    let (h, state) = modified_yao_with_state(g, params);
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if h.has_edge(u, v) {
            continue;
        }
        let (c, b) = if !state.vertices[u].contains(v) {
            (u, v)
        } else {
            (v, u)
        };
        let a = cone_shortest(g, c, b, params.k());
        out.push(DroppedEdgeWitness {
            edge: (u, v),
            path: witness_path(g, c, a, b, params)?,
        });
    }
    Ok(out)
}

/// Shortest neighbour of `c` in the cone that holds `b`.
pub fn cone_shortest(g: &GeoGraph, c: usize, b: usize, k: usize) -> usize {
    let pc = g.point(c);
    let cone = geom::cone_of(pc, g.point(b), k);
    g.neighbors(c)
        .iter()
        .copied()
        .filter(|&x| geom::cone_of(pc, g.point(x), k) == cone)
        .min_by(|&x, &y| geom::cmp_edges_by_length(pc, g.point(x), pc, g.point(y)))
        .expect("b lies in its own cone")
}
