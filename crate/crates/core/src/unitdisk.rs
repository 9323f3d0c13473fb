//! Unit disk graphs, their localized Delaunay subgraphs and a round-synchronous
//! simulation of the distributed spanner construction.
//!
//! The protocol runs four broadcast rounds:
//!
//! 1. `POSITION`: every node announces its coordinates.
//! 2. `NEIGHBOR_TABLE`: every non-isolated node announces its 1-hop
//!    neighbours, so each node learns its 2-hop neighbourhood.
//! 3. `EDGE_PROPOSAL`: a node proposes each incident unit-disk edge that is a
//!    Delaunay edge of its own 2-hop view. An edge survives when both
//!    endpoints propose it.
//! 4. `EDGE_SELECTION`: a node announces its modified Yao selection over its
//!    surviving edges; an edge is kept when both endpoints select it.
//!
//! Node computations read only the node's own position and inbox.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::spanner::{select_at_vertex, SpannerParams};
use crate::triangulation::{delaunay_with, triangulate, CocircularPolicy, GeoGraph};

/// Transmission radius of every node.
pub const UNIT_RADIUS: f64 = 1.0;

/// Points together with their unit disk graph.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitDiskInstance {
    graph: GeoGraph,
}

impl UnitDiskInstance {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Ok(UnitDiskInstance {
            graph: unit_disk_graph(&points)?,
        })
    }

    pub fn points(&self) -> &[Point] {
        self.graph.points()
    }

    pub fn graph(&self) -> &GeoGraph {
        &self.graph
    }

    pub fn radius(&self) -> f64 {
        UNIT_RADIUS
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// All pairs at distance at most one, decided on exact squared distances.
pub fn unit_disk_graph(points: &[Point]) -> Result<GeoGraph> {
    geom::validate_points(points)?;
    // Bucket by unit cells; neighbours lie in the 3x3 block around a cell.
    let cell = |p: &Point| {
        (
            (p.x / UNIT_RADIUS).floor() as i64,
            (p.y / UNIT_RADIUS).floor() as i64,
        )
    };
    let mut buckets: std::collections::HashMap<(i64, i64), Vec<usize>> =
        std::collections::HashMap::new();
    for p in points {
        buckets.entry(cell(p)).or_default().push(p.id);
    }
    let mut edges = Vec::new();
    for p in points {
        let (cx, cy) = cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = buckets.get(&(cx + dx, cy + dy)) {
                    for &q in list {
                        if q > p.id && geom::within_dist(p, &points[q], UNIT_RADIUS) {
                            edges.push((p.id, q));
                        }
                    }
                }
            }
        }
    }
    GeoGraph::from_edges(points.to_vec(), edges)
}

/// Delaunay graph with edges longer than one removed.
pub fn udel(points: &[Point]) -> Result<GeoGraph> {
    udel_with(points, CocircularPolicy::Reject)
}

pub fn udel_with(points: &[Point], policy: CocircularPolicy) -> Result<GeoGraph> {
    let g = delaunay_with(points, policy)?;
    Ok(g.filter_edges(|u, v| geom::within_dist(&points[u], &points[v], UNIT_RADIUS)))
}

/// Points within two hops of `v` in the unit disk graph, excluding `v`.
pub fn two_hop_neighbors(u: &UnitDiskInstance, v: usize) -> Result<BTreeSet<usize>> {
    if v >= u.n() {
        return Err(Error::UnknownPoint(v));
    }
    Ok(two_hop(u.graph(), v))
}

fn two_hop(g: &GeoGraph, v: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &a in g.neighbors(v) {
        out.insert(a);
        out.extend(g.neighbors(a).iter().copied());
    }
    out.remove(&v);
    out
}

/// The 2-localized Delaunay graph: unit-disk edges `XY` admitting a circle
/// through `X` and `Y` with no 2-hop neighbour of `X` or `Y` inside.
pub fn ldel2(u: &UnitDiskInstance) -> Result<GeoGraph> {
    ldel2_with(u, CocircularPolicy::Reject)
}

pub fn ldel2_with(u: &UnitDiskInstance, policy: CocircularPolicy) -> Result<GeoGraph> {
    let g = u.graph();
    let pts = g.points();
    let hops: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| two_hop(g, v)).collect();
    let mut keep = BTreeSet::new();
    for (x, y) in g.edges() {
        let mut ids: BTreeSet<usize> = hops[x].union(&hops[y]).copied().collect();
        ids.insert(x);
        ids.insert(y);
        let local: Vec<Point> = ids.iter().map(|&i| pts[i]).collect();
        if triangulate(&local, policy)?.binary_search(&(x, y)).is_ok() {
            keep.insert((x, y));
        }
    }
    Ok(g.filter_edges(|a, b| keep.contains(&(a, b))))
}

/// Neighbours `y` of `center` (within unit distance) such that `center-y` is
/// a Delaunay edge of `{center} + view`.
pub fn local_proposals(
    center: &Point,
    view: &[Point],
    policy: CocircularPolicy,
) -> Result<Vec<usize>> {
    let mut local: Vec<Point> = view.iter().filter(|p| p.id != center.id).copied().collect();
    local.push(*center);
    let edges = triangulate(&local, policy)?;
    let mut out: Vec<usize> = edges
        .into_iter()
        .filter_map(|(a, b)| {
            if a == center.id {
                Some(b)
            } else if b == center.id {
                Some(a)
            } else {
                None
            }
        })
        .filter(|&y| {
            let p = local
                .iter()
                .find(|p| p.id == y)
                .expect("edge endpoint in view");
            geom::within_dist(center, p, UNIT_RADIUS)
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PayloadKind {
    Position,
    NeighborTable,
    EdgeProposal,
    EdgeSelection,
}

impl PayloadKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PayloadKind::Position => "POSITION",
            PayloadKind::NeighborTable => "NEIGHBOR_TABLE",
            PayloadKind::EdgeProposal => "EDGE_PROPOSAL",
            PayloadKind::EdgeSelection => "EDGE_SELECTION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageEntry {
    pub round: u8,
    pub sender: usize,
    pub kind: PayloadKind,
    /// Number of point records carried.
    pub payload_size: usize,
}

/// One entry per broadcast, ordered by `(round, sender)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MessageLog {
    pub entries: Vec<MessageEntry>,
    pub per_round: [usize; 4],
}

impl MessageLog {
    fn record(&mut self, round: u8, sender: usize, payload: &Payload) {
        self.entries.push(MessageEntry {
            round,
            sender,
            kind: payload.kind(),
            payload_size: payload.size(),
        });
        self.per_round[usize::from(round) - 1] += 1;
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    /// Largest payload of any broadcast.
    pub fn max_payload(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.payload_size)
            .max()
            .unwrap_or(0)
    }

    /// `round,sender,kind,payload_size` per line.
    pub fn to_trace(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                e.round,
                e.sender,
                e.kind.as_str(),
                e.payload_size
            );
        }
        out
    }
}

/// Broadcast content.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Position(Point),
    NeighborTable(Vec<Point>),
    EdgeProposal(Vec<usize>),
    EdgeSelection(Vec<usize>),
}

impl Payload {
    pub fn kind(&self) -> PayloadKind {
        match self {
            Payload::Position(_) => PayloadKind::Position,
            Payload::NeighborTable(_) => PayloadKind::NeighborTable,
            Payload::EdgeProposal(_) => PayloadKind::EdgeProposal,
            Payload::EdgeSelection(_) => PayloadKind::EdgeSelection,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Payload::Position(_) => 1,
            Payload::NeighborTable(v) => v.len(),
            Payload::EdgeProposal(v) | Payload::EdgeSelection(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Message {
    pub round: u8,
    pub sender: usize,
    pub payload: Payload,
}

/// What a node holds: its own position, the messages it received and the
/// proposal it broadcast in round 3.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    pub own: Point,
    pub inbox: Vec<Message>,
    pub proposal: Option<Vec<usize>>,
}

impl NodeState {
    fn new(own: Point) -> Self {
        NodeState {
            own,
            inbox: Vec::new(),
            proposal: None,
        }
    }

    fn received(&self, round: u8) -> impl Iterator<Item = &Message> {
        self.inbox.iter().filter(move |m| m.round == round)
    }

    /// Positions heard in round 1, by ascending id.
    pub fn neighbors(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .received(1)
            .filter_map(|m| match &m.payload {
                Payload::Position(p) => Some(*p),
                _ => None,
            })
            .collect();
        out.sort_by_key(|p| p.id);
        out
    }

    /// Round 2 broadcast; isolated nodes stay silent.
    pub fn neighbor_table(&self) -> Option<Payload> {
        let nb = self.neighbors();
        (!nb.is_empty()).then_some(Payload::NeighborTable(nb))
    }

    /// 2-hop view assembled from rounds 1 and 2, excluding the node itself.
    pub fn two_hop_view(&self) -> Vec<Point> {
        let mut view: Vec<Point> = self.neighbors();
        for m in self.received(2) {
            if let Payload::NeighborTable(t) = &m.payload {
                view.extend(t.iter().copied());
            }
        }
        view.retain(|p| p.id != self.own.id);
        view.sort_by_key(|p| p.id);
        view.dedup_by_key(|p| p.id);
        view
    }

    /// Round 3 broadcast: incident edges that are Delaunay in the 2-hop view.
    pub fn edge_proposal(&self, policy: CocircularPolicy) -> Result<Option<Vec<usize>>> {
        if self.neighbors().is_empty() {
            return Ok(None);
        }
        local_proposals(&self.own, &self.two_hop_view(), policy).map(Some)
    }

    /// Neighbours whose edge both endpoints proposed.
    pub fn surviving(&self) -> Vec<Point> {
        let own = self.proposal.as_deref().unwrap_or(&[]);
        let nb = self.neighbors();
        self.received(3)
            .filter_map(|m| match &m.payload {
                Payload::EdgeProposal(ids)
                    if ids.contains(&self.own.id) && own.contains(&m.sender) =>
                {
                    nb.iter().find(|p| p.id == m.sender).copied()
                }
                _ => None,
            })
            .collect()
    }

    /// Round 4 broadcast: the modified Yao selection over surviving edges.
    pub fn edge_selection(&self, params: &SpannerParams) -> Option<Vec<usize>> {
        self.proposal.as_ref()?;
        let mut incident = self.surviving();
        incident.sort_by(|a, b| geom::cmp_angle_around(&self.own, a, b));
        let mut ids = select_at_vertex(&self.own, &incident, params).neighbor_ids();
        ids.sort_unstable();
        Some(ids)
    }

    /// Final incident spanner edges after round 4.
    pub fn kept_edges(&self, own_selection: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .received(4)
            .filter_map(|m| match &m.payload {
                Payload::EdgeSelection(ids)
                    if ids.contains(&self.own.id) && own_selection.contains(&m.sender) =>
                {
                    Some(m.sender)
                }
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Result of a simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributedRun {
    pub spanner: GeoGraph,
    pub log: MessageLog,
    pub nodes: Vec<NodeState>,
}

/// Runs the four-round protocol and returns the spanner and message log.
pub fn simulate_distributed(
    u: &UnitDiskInstance,
    params: &SpannerParams,
) -> Result<(GeoGraph, MessageLog)> {
    let run = simulate_distributed_with(u, params, CocircularPolicy::Reject)?;
    Ok((run.spanner, run.log))
}

pub fn simulate_distributed_with(
    u: &UnitDiskInstance,
    params: &SpannerParams,
    policy: CocircularPolicy,
) -> Result<DistributedRun> {
    let radio = u.graph();
    let mut nodes: Vec<NodeState> = u.points().iter().map(|&p| NodeState::new(p)).collect();
    let mut log = MessageLog::default();

    let mut broadcast = |nodes: &mut Vec<NodeState>, round: u8, outgoing: Vec<(usize, Payload)>| {
        for (sender, payload) in outgoing {
            log.record(round, sender, &payload);
            for &r in radio.neighbors(sender) {
                nodes[r].inbox.push(Message {
                    round,
                    sender,
                    payload: payload.clone(),
                });
            }
        }
    };

    let out1 = nodes
        .iter()
        .map(|s| (s.own.id, Payload::Position(s.own)))
        .collect();
    broadcast(&mut nodes, 1, out1);

    let out2 = nodes
        .iter()
        .filter_map(|s| s.neighbor_table().map(|p| (s.own.id, p)))
        .collect();
    broadcast(&mut nodes, 2, out2);

    let mut out3 = Vec::new();
    for s in nodes.iter_mut() {
        s.proposal = s.edge_proposal(policy)?;
        if let Some(p) = &s.proposal {
            out3.push((s.own.id, Payload::EdgeProposal(p.clone())));
        }
    }
    broadcast(&mut nodes, 3, out3);

    let selections: Vec<Option<Vec<usize>>> =
        nodes.iter().map(|s| s.edge_selection(params)).collect();
    let out4 = selections
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            s.as_ref()
                .map(|ids| (i, Payload::EdgeSelection(ids.clone())))
        })
        .collect();
    broadcast(&mut nodes, 4, out4);

    let mut edges = Vec::new();
    for (i, s) in nodes.iter().enumerate() {
        if let Some(sel) = &selections[i] {
            edges.extend(
                s.kept_edges(sel)
                    .into_iter()
                    .filter(|&j| j > i)
                    .map(|j| (i, j)),
            );
        }
    }
    let spanner = GeoGraph::from_edges(u.points().to_vec(), edges)?;
    Ok(DistributedRun {
        spanner,
        log,
        nodes,
    })
}
