//! Cumulative graph state at a cut point.
//!
//! Because an [`EdgeStream`] is sorted by time, every cut (by edge fraction or
//! by normalized time) selects a prefix of the stream. A cut is therefore
//! fully described by how many edges it includes.

use crate::error::{Error, Result};
use crate::stream::{EdgeStream, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutMode {
    /// First `floor(value * edge_count)` edges, at least one.
    EdgeFraction,
    /// Edges with `timestamp <= t_min + value * (t_max - t_min)`.
    NormalizedTime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutSpec {
    mode: CutMode,
    value: f64,
}

// Absorbs representation error in products like 0.7 * 100 = 70.00000000000001
// and 0.57 * 100 = 56.99999999999999 so that decimal fractions floor as written.
const FRACTION_SLACK: f64 = 1e-9;

impl CutSpec {
    pub fn new(mode: CutMode, value: f64) -> Result<Self> {
        if !(value > 0.0 && value <= 1.0) {
            return Err(Error::InvalidCut(value));
        }
        Ok(Self { mode, value })
    }

    pub fn edge_fraction(value: f64) -> Result<Self> {
        Self::new(CutMode::EdgeFraction, value)
    }

    pub fn normalized_time(value: f64) -> Result<Self> {
        Self::new(CutMode::NormalizedTime, value)
    }

    pub fn full() -> Self {
        Self {
            mode: CutMode::EdgeFraction,
            value: 1.0,
        }
    }

    pub fn mode(&self) -> CutMode {
        self.mode
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Number of leading stream edges this cut includes.
    pub fn included_edges(&self, stream: &EdgeStream) -> Result<usize> {
        let total = stream.edge_count();
        if self.value >= 1.0 {
            return Ok(total);
        }
        let n = match self.mode {
            CutMode::EdgeFraction => {
                let k = (self.value * total as f64 + FRACTION_SLACK).floor() as usize;
                k.clamp(1, total)
            }
            CutMode::NormalizedTime => {
                let threshold = stream.t_min() + self.value * (stream.t_max() - stream.t_min());
                stream.edges().partition_point(|e| e.timestamp <= threshold)
            }
        };
        if n == 0 {
            return Err(Error::EmptyCut);
        }
        Ok(n)
    }
}

/// Adjacency and degree state after the first `included_edges` stream edges.
///
/// Indexed by the stream's [`NodeId`]s; nodes that have not yet appeared have
/// degree zero and are not considered present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotView {
    included_edges: usize,
    adjacency: Vec<Vec<NodeId>>,
    present: usize,
}

impl SnapshotView {
    /// Builds the view of the first `k` edges (`k` is clamped to the stream length).
    pub fn from_prefix(stream: &EdgeStream, k: usize) -> Self {
        let mut view = Self {
            included_edges: 0,
            adjacency: vec![Vec::new(); stream.node_count()],
            present: 0,
        };
        view.extend_to(stream, k);
        view
    }

    fn extend_to(&mut self, stream: &EdgeStream, k: usize) {
        let k = k.min(stream.edge_count());
        for e in &stream.edges()[self.included_edges.min(k)..k] {
            for (u, v) in [(e.source, e.target), (e.target, e.source)] {
                let adj = &mut self.adjacency[u.index()];
                if adj.is_empty() {
                    self.present += 1;
                }
                adj.push(v);
            }
        }
        self.included_edges = self.included_edges.max(k);
    }

    pub fn included_edges(&self) -> usize {
        self.included_edges
    }

    /// Number of nodes with degree at least one.
    pub fn node_count(&self) -> usize {
        self.present
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency.get(node.index()).map_or(0, Vec::len)
    }

    pub fn is_present(&self, node: NodeId) -> bool {
        self.degree(node) > 0
    }

    pub fn neighbours(&self, node: NodeId) -> &[NodeId] {
        self.adjacency
            .get(node.index())
            .map_or(&[][..], Vec::as_slice)
    }

    /// Present nodes in id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .filter(|(_, adj)| !adj.is_empty())
            .map(|(i, _)| NodeId(i as u32))
    }

    /// Degrees of present nodes in id order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .filter(|&d| d > 0)
            .collect()
    }

    pub fn mean_neighbour_degree(&self, node: NodeId) -> Result<f64> {
        let neighbours = self.neighbours(node);
        if neighbours.is_empty() {
            return Err(Error::NodeAbsent(node.index()));
        }
        let total: usize = neighbours.iter().map(|&v| self.degree(v)).sum();
        Ok(total as f64 / neighbours.len() as f64)
    }
}

pub fn snapshot(stream: &EdgeStream, cut: CutSpec) -> Result<SnapshotView> {
    let k = cut.included_edges(stream)?;
    Ok(SnapshotView::from_prefix(stream, k))
}

/// Materializes several cuts in one pass over the stream. Results are
/// returned in the order of `cuts`.
pub fn snapshots(stream: &EdgeStream, cuts: &[CutSpec]) -> Result<Vec<SnapshotView>> {
    let sizes = cuts
        .iter()
        .map(|c| c.included_edges(stream))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..cuts.len()).collect();
    order.sort_by_key(|&i| sizes[i]);

    let mut out: Vec<Option<SnapshotView>> = vec![None; cuts.len()];
    let mut growing = SnapshotView::from_prefix(stream, 0);
    for i in order {
        growing.extend_to(stream, sizes[i]);
        out[i] = Some(growing.clone());
    }
    Ok(out.into_iter().flatten().collect())
}

/// Degree of every stream node after the first `k` edges (zero for absent nodes).
pub fn prefix_degrees(stream: &EdgeStream, k: usize) -> Vec<u32> {
    let mut degrees = vec![0u32; stream.node_count()];
    for e in &stream.edges()[..k.min(stream.edge_count())] {
        degrees[e.source.index()] += 1;
        degrees[e.target.index()] += 1;
    }
    degrees
}
