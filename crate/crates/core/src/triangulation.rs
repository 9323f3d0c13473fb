//! Delaunay graphs and Euclidean minimum spanning trees.
//!
//! The triangulation is built by divide and conquer over a quad-edge arena.
//! All in-circle decisions use the id-perturbed predicate, so every run yields
//! one canonical triangulation; in [`CocircularPolicy::Reject`] mode the result
//! is then scanned for cocircular neighbouring triangles, which make the
//! Delaunay graph non-unique.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geom::{self, cmp_edges_by_length, dist, Orientation, Point};

/// A straight-line embedded undirected graph. Neighbour lists are sorted
/// counterclockwise starting from the positive x-direction.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGraph {
    points: Vec<Point>,
    adjacency: Vec<Vec<usize>>,
}

impl GeoGraph {
    /// Graph with no edges.
    pub fn empty(points: Vec<Point>) -> Result<Self> {
        geom::validate_points(&points)?;
        let n = points.len();
        Ok(GeoGraph {
            points,
            adjacency: vec![Vec::new(); n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and unknown ids are rejected.
    pub fn from_edges<I>(points: Vec<Point>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        geom::validate_points(&points)?;
        let n = points.len();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownPoint(u));
            }
            if v >= n {
                return Err(Error::UnknownPoint(v));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_unique_edges(points, set))
    }

    /// `edges` must be free of duplicates and self-loops.
    fn from_unique_edges<I: IntoIterator<Item = (usize, usize)>>(
        points: Vec<Point>,
        edges: I,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); points.len()];
        for (u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (m, list) in adjacency.iter_mut().enumerate() {
            let center = points[m];
            list.sort_by(|&a, &b| geom::cmp_angle_around(&center, &points[a], &points[b]));
        }
        GeoGraph { points, adjacency }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].contains(&b)
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().into_iter().collect()
    }

    pub fn length(&self, u: usize, v: usize) -> f64 {
        dist(&self.points[u], &self.points[v])
    }

    pub fn total_length(&self) -> f64 {
        self.edges().iter().map(|&(u, v)| self.length(u, v)).sum()
    }

    /// True when both graphs share points and every edge of `self` is in
    /// `other`.
    pub fn is_subgraph_of(&self, other: &GeoGraph) -> bool {
        self.points == other.points && self.edges().iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Keeps the edges satisfying `keep`.
    pub fn filter_edges<F>(&self, mut keep: F) -> GeoGraph
    where
        F: FnMut(usize, usize) -> bool,
    {
        let kept = self.edges().into_iter().filter(|&(u, v)| keep(u, v));
        Self::from_unique_edges(self.points.clone(), kept)
    }

    /// Component label for every vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

/// How cocircular configurations are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CocircularPolicy {
    /// Report an error when four points of neighbouring triangles are
    /// cocircular.
    #[default]
    Reject,
    /// Resolve ties by a symbolic perturbation ordered by point id.
    TieBreak,
}

/// A spanning tree stored as a parent map rooted at vertex 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    pub parent: Vec<usize>,
    pub total_weight: f64,
}

impl SpanningTree {
    /// Tree edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .parent
            .iter()
            .enumerate()
            .filter(|&(v, &p)| v != p)
            .map(|(v, &p)| (v.min(p), v.max(p)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Delaunay graph of an instance (ids `0..n`), rejecting cocircular ties.
pub fn delaunay(points: &[Point]) -> Result<GeoGraph> {
    delaunay_with(points, CocircularPolicy::Reject)
}

pub fn delaunay_with(points: &[Point], policy: CocircularPolicy) -> Result<GeoGraph> {
    geom::validate_points(points)?;
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    let edges = triangulate(points, policy)?;
    Ok(GeoGraph::from_unique_edges(points.to_vec(), edges))
}

/// Delaunay edges, as `(min id, max id)` pairs, of any set of distinct points
/// with distinct ids. Used directly for local views in the unit-disk setting.
pub fn triangulate(points: &[Point], policy: CocircularPolicy) -> Result<Vec<(usize, usize)>> {
    if points.len() < 2 {
        return Ok(Vec::new());
    }
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_by(geom::cmp_xy);
    for w in sorted.windows(2) {
        if w[0].same_position(&w[1]) {
            return Err(Error::DuplicatePoint(
                w[0].id.min(w[1].id),
                w[0].id.max(w[1].id),
            ));
        }
    }
    let mut mesh = QuadEdge::with_capacity(3 * sorted.len());
    mesh.divide(&sorted, 0, sorted.len());
    if policy == CocircularPolicy::Reject {
        mesh.check_cocircular(&sorted)?;
    }
    let mut out: Vec<(usize, usize)> = mesh
        .live_edges()
        .map(|(a, b)| {
            let (u, v) = (sorted[a].id, sorted[b].id);
            (u.min(v), u.max(v))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Minimum spanning tree over the edges of `g`, with ties broken by
/// `(min id, max id)`. On a Delaunay graph this is the Euclidean minimum
/// spanning tree.
pub fn emst(g: &GeoGraph) -> Result<SpanningTree> {
    let forest = minimum_spanning_forest(g);
    if forest.len() + 1 != g.n() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let total_weight = forest.iter().map(|&(u, v)| g.length(u, v)).sum();
    let tree = GeoGraph::from_unique_edges(g.points().to_vec(), forest.iter().copied());
    let mut parent = vec![usize::MAX; g.n()];
    parent[0] = 0;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    Ok(SpanningTree {
        parent,
        total_weight,
    })
}

/// Kruskal over `g`'s edges in exact length order. Returned edges are in the
/// order they were accepted.
pub fn minimum_spanning_forest(g: &GeoGraph) -> Vec<(usize, usize)> {
    let pts = g.points();
    let mut edges = g.edges();
    edges.sort_by(|&(a, b), &(c, d)| cmp_edges_by_length(&pts[a], &pts[b], &pts[c], &pts[d]));
    let mut uf = UnionFind::new(g.n());
    edges.into_iter().filter(|&(u, v)| uf.union(u, v)).collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

// Quad-edge arena. Directed edge `e = 4q + r`; r = 0, 2 are primal edges.
// Storage is `u32` and deleted quads are recycled to keep the arena compact.
struct QuadEdge {
    next: Vec<u32>,
    /// Origins of the two primal directions of each quad.
    org: Vec<u32>,
    alive: Vec<bool>,
    free: Vec<usize>,
}

type EdgeRef = usize;

fn rot(e: EdgeRef) -> EdgeRef {
    (e & !3) | ((e + 1) & 3)
}

fn sym(e: EdgeRef) -> EdgeRef {
    (e & !3) | ((e + 2) & 3)
}

fn rot_inv(e: EdgeRef) -> EdgeRef {
    (e & !3) | ((e + 3) & 3)
}

impl QuadEdge {
    fn with_capacity(edges: usize) -> Self {
        QuadEdge {
            next: Vec::with_capacity(4 * edges),
            org: Vec::with_capacity(2 * edges),
            alive: Vec::with_capacity(edges),
            free: Vec::new(),
        }
    }

    fn onext(&self, e: EdgeRef) -> EdgeRef {
        self.next[e] as usize
    }

    fn oprev(&self, e: EdgeRef) -> EdgeRef {
        rot(self.onext(rot(e)))
    }

    fn lnext(&self, e: EdgeRef) -> EdgeRef {
        rot(self.onext(rot_inv(e)))
    }

    fn rprev(&self, e: EdgeRef) -> EdgeRef {
        self.onext(sym(e))
    }

    fn org(&self, e: EdgeRef) -> usize {
        debug_assert!(e & 1 == 0, "primal edges only");
        self.org[e >> 1] as usize
    }

    fn dest(&self, e: EdgeRef) -> usize {
        self.org(sym(e))
    }

    fn make_edge(&mut self, org: usize, dest: usize) -> EdgeRef {
        let ring = |e: usize| [e as u32, (e + 3) as u32, (e + 2) as u32, (e + 1) as u32];
        let (o, d) = (org as u32, dest as u32);
        if let Some(q) = self.free.pop() {
            let e = 4 * q;
            self.next[e..e + 4].copy_from_slice(&ring(e));
            self.org[2 * q] = o;
            self.org[2 * q + 1] = d;
            self.alive[q] = true;
            return e;
        }
        let e = self.next.len();
        self.next.extend_from_slice(&ring(e));
        self.org.extend_from_slice(&[o, d]);
        self.alive.push(true);
        e
    }

    fn splice(&mut self, a: EdgeRef, b: EdgeRef) {
        let alpha = rot(self.onext(a));
        let beta = rot(self.onext(b));
        self.next.swap(a, b);
        self.next.swap(alpha, beta);
    }

    fn connect(&mut self, a: EdgeRef, b: EdgeRef) -> EdgeRef {
        let e = self.make_edge(self.dest(a), self.org(b));
        let an = self.lnext(a);
        self.splice(e, an);
        self.splice(sym(e), b);
        e
    }

    fn delete(&mut self, e: EdgeRef) {
        let op = self.oprev(e);
        self.splice(e, op);
        let s = sym(e);
        let sop = self.oprev(s);
        self.splice(s, sop);
        self.alive[e / 4] = false;
        self.free.push(e / 4);
    }

    fn live_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(move |(q, _)| (self.org[2 * q] as usize, self.org[2 * q + 1] as usize))
    }

    /// Triangulates `pts[lo..hi]` (sorted by x, then y). Returns the
    /// counterclockwise convex hull edge out of the leftmost point and the
    /// clockwise hull edge out of the rightmost point.
    fn divide(&mut self, pts: &[Point], lo: usize, hi: usize) -> (EdgeRef, EdgeRef) {
        let ccw = |a: usize, b: usize, c: usize| {
            geom::orientation(&pts[a], &pts[b], &pts[c]) == Orientation::Ccw
        };
        let count = hi - lo;
        if count == 2 {
            let a = self.make_edge(lo, lo + 1);
            return (a, sym(a));
        }
        if count == 3 {
            let (s1, s2, s3) = (lo, lo + 1, lo + 2);
            let a = self.make_edge(s1, s2);
            let b = self.make_edge(s2, s3);
            self.splice(sym(a), b);
            if ccw(s1, s2, s3) {
                self.connect(b, a);
                return (a, sym(b));
            } else if ccw(s1, s3, s2) {
                let c = self.connect(b, a);
                return (sym(c), c);
            }
            return (a, sym(b));
        }
        let mid = lo + count / 2;
        let (mut ldo, mut ldi) = self.divide(pts, lo, mid);
        let (mut rdi, mut rdo) = self.divide(pts, mid, hi);

        // Lower common tangent.
        loop {
            if ccw(self.org(rdi), self.org(ldi), self.dest(ldi)) {
                ldi = self.lnext(ldi);
            } else if ccw(self.org(ldi), self.dest(rdi), self.org(rdi)) {
                rdi = self.rprev(rdi);
            } else {
                break;
            }
        }
        let mut basel = self.connect(sym(rdi), ldi);
        if self.org(ldi) == self.org(ldo) {
            ldo = sym(basel);
        }
        if self.org(rdi) == self.org(rdo) {
            rdo = basel;
        }

        let in_circle = |a: usize, b: usize, c: usize, d: usize| {
            geom::in_circle_perturbed(&pts[a], &pts[b], &pts[c], &pts[d]) > 0
        };

        loop {
            let valid = |me: &QuadEdge, e: EdgeRef, basel: EdgeRef| {
                ccw(me.dest(e), me.dest(basel), me.org(basel))
            };

            let mut lcand = self.onext(sym(basel));
            if valid(self, lcand, basel) {
                while in_circle(
                    self.dest(basel),
                    self.org(basel),
                    self.dest(lcand),
                    self.dest(self.onext(lcand)),
                ) {
                    let t = self.onext(lcand);
                    self.delete(lcand);
                    lcand = t;
                }
            }
            let mut rcand = self.oprev(basel);
            if valid(self, rcand, basel) {
                while in_circle(
                    self.dest(basel),
                    self.org(basel),
                    self.dest(rcand),
                    self.dest(self.oprev(rcand)),
                ) {
                    let t = self.oprev(rcand);
                    self.delete(rcand);
                    rcand = t;
                }
            }
            let lvalid = valid(self, lcand, basel);
            let rvalid = valid(self, rcand, basel);
            if !lvalid && !rvalid {
                break;
            }
            if !lvalid
                || (rvalid
                    && in_circle(
                        self.dest(lcand),
                        self.org(lcand),
                        self.org(rcand),
                        self.dest(rcand),
                    ))
            {
                basel = self.connect(rcand, sym(basel));
            } else {
                basel = self.connect(sym(basel), sym(lcand));
            }
        }
        (ldo, rdo)
    }

    /// Fails when two triangles sharing an edge have cocircular vertices.
    fn check_cocircular(&self, pts: &[Point]) -> Result<()> {
        let is_triangle = |e: EdgeRef| {
            let l1 = self.lnext(e);
            let l2 = self.lnext(l1);
            self.lnext(l2) == e
                && geom::orientation(&pts[self.org(e)], &pts[self.dest(e)], &pts[self.dest(l1)])
                    == Orientation::Ccw
        };
        for (q, _) in self.alive.iter().enumerate().filter(|(_, &a)| a) {
            let e = 4 * q;
            let s = sym(e);
            if !(is_triangle(e) && is_triangle(s)) {
                continue;
            }
            let (a, b) = (self.org(e), self.dest(e));
            let c = self.dest(self.lnext(e));
            let d = self.dest(self.lnext(s));
            if geom::in_circle(&pts[a], &pts[b], &pts[c], &pts[d])
                == Ok(geom::CircleSide::Cocircular)
            {
                let mut ids = [pts[a].id, pts[b].id, pts[c].id, pts[d].id];
                ids.sort_unstable();
                return Err(Error::Cocircular(ids));
            }
        }
        Ok(())
    }
}
