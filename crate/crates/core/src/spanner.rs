//! The modified Yao step.
//!
//! Each vertex splits its surroundings into `k` cones of angle `2pi/k` in the
//! global frame of [`crate::geom::cone_index`], keeps the shortest edge of
//! every non-empty cone and, around each maximal run of empty cones, a few of
//! the edges angularly nearest to the run. An edge survives when both of its
//! endpoints select it. The result has maximum degree `k` and stretch factor
//! [`stretch_bound`] with respect to the Delaunay-type input graph.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::triangulation::GeoGraph;

/// Smallest cone count for which the degree and stretch guarantees hold.
pub const MIN_K: usize = 14;

/// Stretch factor bound of the Delaunay graph against the complete Euclidean
/// graph: `2pi / (3 cos(pi/6))`.
pub fn c_del() -> f64 {
    2.0 * PI / (3.0 * (PI / 6.0).cos())
}

/// `1 + 2pi / (k cos(pi/k))`.
pub fn stretch_bound(k: usize) -> Result<f64> {
    if k < MIN_K {
        return Err(Error::InvalidK(k));
    }
    let k = k as f64;
    Ok(1.0 + 2.0 * PI / (k * (PI / k).cos()))
}

/// `stretch_bound(k) * c_del()`, the bound against the Euclidean metric.
pub fn combined_bound(k: usize) -> Result<f64> {
    Ok(stretch_bound(k)? * c_del())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannerParams {
    k: usize,
}

impl SpannerParams {
    pub fn new(k: usize) -> Result<Self> {
        if k < MIN_K {
            return Err(Error::InvalidK(k));
        }
        Ok(SpannerParams { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stretch_bound(&self) -> f64 {
        stretch_bound(self.k).expect("validated k")
    }
}

/// Why a vertex selected an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SelectionCause {
    /// Shortest edge of a non-empty cone.
    ConeShortest,
    /// Picked by the clockwise sweep next to a run of empty cones.
    EmptyRunCw,
    /// Picked by the counterclockwise sweep next to a run of empty cones.
    EmptyRunCcw,
    /// One of the two edges flanking a single empty cone.
    SingleGap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chosen {
    pub neighbor: usize,
    pub cause: SelectionCause,
}

/// Selection made at a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VertexSelection {
    /// `occupied[i]` is true when cone `i` holds at least one incident edge.
    pub occupied: Vec<bool>,
    /// Selected neighbours in selection order.
    pub chosen: Vec<Chosen>,
}

impl VertexSelection {
    pub fn contains(&self, neighbor: usize) -> bool {
        self.chosen.iter().any(|c| c.neighbor == neighbor)
    }

    pub fn cause_of(&self, neighbor: usize) -> Option<SelectionCause> {
        self.chosen
            .iter()
            .find(|c| c.neighbor == neighbor)
            .map(|c| c.cause)
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Selected neighbour ids in ascending order.
    pub fn neighbor_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.chosen.iter().map(|c| c.neighbor).collect();
        ids.sort_unstable();
        ids
    }
}

/// Per-vertex selections over a whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelectionState {
    pub vertices: Vec<VertexSelection>,
}

struct Picker<'a> {
    m: &'a Point,
    incident: &'a [Point],
    selected: Vec<bool>,
    out: VertexSelection,
}

impl Picker<'_> {
    fn pick(&mut self, idx: usize, cause: SelectionCause) {
        debug_assert!(!self.selected[idx]);
        self.selected[idx] = true;
        self.out.chosen.push(Chosen {
            neighbor: self.incident[idx].id,
            cause,
        });
    }

    /// Shorter of two incident edges; equal lengths go to the smaller id.
    fn shorter(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.incident[a], &self.incident[b]);
        match geom::cmp_dist(self.m, pa, self.m, pb).then(pa.id.cmp(&pb.id)) {
            Ordering::Greater => b,
            _ => a,
        }
    }
}

/// Runs the selection at `m`. `incident` must be sorted counterclockwise from
/// the positive x-direction, as in [`GeoGraph::neighbors`].
pub fn select_at_vertex(m: &Point, incident: &[Point], params: &SpannerParams) -> VertexSelection {
    let k = params.k;
    let cones: Vec<usize> = incident.iter().map(|x| geom::cone_of(m, x, k)).collect();
    debug_assert!(
        cones.windows(2).all(|w| w[0] <= w[1]),
        "incident edges must be angularly sorted"
    );

    // Half-open index range of incident edges per cone.
    let mut range = vec![(0usize, 0usize); k];
    for (i, &c) in cones.iter().enumerate() {
        if range[c].1 == range[c].0 {
            range[c] = (i, i + 1);
        } else {
            range[c].1 = i + 1;
        }
    }
    let occupied: Vec<bool> = range.iter().map(|r| r.1 > r.0).collect();

    let mut picker = Picker {
        m,
        incident,
        selected: vec![false; incident.len()],
        out: VertexSelection {
            occupied: occupied.clone(),
            chosen: Vec::new(),
        },
    };

    for &(lo, hi) in &range {
        if lo == hi {
            continue;
        }
        let best = (lo + 1..hi).fold(lo, |best, i| picker.shorter(best, i));
        picker.pick(best, SelectionCause::ConeShortest);
    }

    if incident.is_empty() {
        return picker.out;
    }

    // Maximal cyclic runs of empty cones, by starting cone index.
    let mut runs = Vec::new();
    for s in 0..k {
        if !occupied[s] && occupied[(s + k - 1) % k] {
            let len = (0..k).take_while(|&d| !occupied[(s + d) % k]).count();
            runs.push((s, len));
        }
    }

    for (s, len) in runs {
        if len > 1 {
            // Clockwise from the run: cones s-1, s-2, ... until the next empty
            // cone, edges nearest the run first.
            let mut quota = len / 2;
            let mut c = (s + k - 1) % k;
            while quota > 0 && occupied[c] {
                let (lo, hi) = range[c];
                for i in (lo..hi).rev() {
                    if quota == 0 {
                        break;
                    }
                    if !picker.selected[i] {
                        picker.pick(i, SelectionCause::EmptyRunCw);
                        quota -= 1;
                    }
                }
                c = (c + k - 1) % k;
            }
            let mut quota = len.div_ceil(2);
            let mut c = (s + len) % k;
            while quota > 0 && occupied[c] {
                let (lo, hi) = range[c];
                for i in lo..hi {
                    if quota == 0 {
                        break;
                    }
                    if !picker.selected[i] {
                        picker.pick(i, SelectionCause::EmptyRunCcw);
                        quota -= 1;
                    }
                }
                c = (c + 1) % k;
            }
        } else {
            let mx = range[(s + k - 1) % k].1 - 1;
            let my = range[(s + 1) % k].0;
            match (picker.selected[mx], picker.selected[my]) {
                (true, true) => {}
                (true, false) => picker.pick(my, SelectionCause::SingleGap),
                (false, true) => picker.pick(mx, SelectionCause::SingleGap),
                (false, false) => {
                    let s = picker.shorter(mx, my);
                    picker.pick(s, SelectionCause::SingleGap);
                }
            }
        }
    }
    picker.out
}

/// Selections at every vertex of `g`.
pub fn select_all(g: &GeoGraph, params: &SpannerParams) -> SelectionState {
    let pts = g.points();
    let vertices = (0..g.n())
        .map(|m| {
            let incident: Vec<Point> = g.neighbors(m).iter().map(|&v| pts[v]).collect();
            select_at_vertex(&pts[m], &incident, params)
        })
        .collect();
    SelectionState { vertices }
}

/// Edges of `g` selected by both endpoints.
pub fn mutual_edges(g: &GeoGraph, state: &SelectionState) -> GeoGraph {
    g.filter_edges(|u, v| state.vertices[u].contains(v) && state.vertices[v].contains(u))
}

/// The bounded-degree subgraph `G'` of a plane Delaunay-type graph.
pub fn modified_yao(g: &GeoGraph, params: &SpannerParams) -> GeoGraph {
    mutual_edges(g, &select_all(g, params))
}

/// [`modified_yao`] together with the per-vertex selections.
pub fn modified_yao_with_state(g: &GeoGraph, params: &SpannerParams) -> (GeoGraph, SelectionState) {
    let state = select_all(g, params);
    (mutual_edges(g, &state), state)
}
