//! Hierarchical-mobility taxonomy.
//!
//! For every node present at an earlier cut `t1` we record four quantities:
//! its degree `d1`, its degree gain `delta_d` up to a later cut `t2`, the
//! mean degree `n1` of its `t1` neighbours, and the gain `delta_n` of that
//! same neighbour set's mean degree by `t2`. The six pairwise Pearson
//! correlations of these four series form the taxonomy:
//!
//! |            | delta_d  | n1            | delta_n                  |
//! |------------|----------|---------------|--------------------------|
//! | d1         | mobility | assortativity | philanthropy             |
//! | delta_d    |          | community     | change in assortativity  |
//! | n1         |          |               | neighbour mobility       |
//!
//! A high mobility value means degree rank is preserved (the measure is
//! really an anti-mobility).

use std::fmt;

use serde::Serialize;

use crate::equality::degree_gini;
use crate::error::{Error, Result};
use crate::snapshot::{prefix_degrees, CutSpec};
use crate::stream::{EdgeStream, NodeId};

/// Product-moment correlation. `None` when either series is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Option<f64>> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::TooFewValues(xs.len()));
    }
    if is_constant(xs) || is_constant(ys) {
        return Ok(None);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}

fn is_constant(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x == xs[0])
}

/// Degree and neighbourhood quantities of one node between two cuts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeTrajectory {
    pub d1: usize,
    pub delta_d: usize,
    pub n1: f64,
    pub delta_n: f64,
}

/// Trajectories of every node present at `t1`, in node-id order.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeTrajectories {
    pub nodes: Vec<NodeId>,
    pub rows: Vec<NodeTrajectory>,
}

impl NodeTrajectories {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, node: NodeId) -> Option<&NodeTrajectory> {
        self.nodes.binary_search(&node).ok().map(|i| &self.rows[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &NodeTrajectory)> {
        self.nodes.iter().copied().zip(&self.rows)
    }
}

/// Node trajectories between two cuts, which must select strictly nested edge sets.
pub fn node_trajectories(
    stream: &EdgeStream,
    t1: CutSpec,
    t2: CutSpec,
) -> Result<NodeTrajectories> {
    let k1 = t1.included_edges(stream)?;
    let k2 = t2.included_edges(stream)?;
    if k1 >= k2 {
        return Err(Error::CutOrder { t1: k1, t2: k2 });
    }
    trajectories_between(stream, k1, k2)
}

/// Node trajectories between the first `k1` and first `k2` stream edges.
/// `k1 == k2` is accepted and yields all-zero gains.
pub fn trajectories_between(stream: &EdgeStream, k1: usize, k2: usize) -> Result<NodeTrajectories> {
    let k2 = k2.min(stream.edge_count());
    if k1 == 0 || k1 > k2 {
        return Err(Error::CutOrder { t1: k1, t2: k2 });
    }
    let deg1 = prefix_degrees(stream, k1);
    let mut deg2 = deg1.clone();
    for e in &stream.edges()[k1..k2] {
        deg2[e.source.index()] += 1;
        deg2[e.target.index()] += 1;
    }

    // neighbour degree sums over the t1 neighbour set, read at t1 and at t2
    let mut sum1 = vec![0u64; stream.node_count()];
    let mut sum2 = vec![0u64; stream.node_count()];
    for e in &stream.edges()[..k1] {
        let (u, v) = (e.source.index(), e.target.index());
        sum1[u] += u64::from(deg1[v]);
        sum1[v] += u64::from(deg1[u]);
        sum2[u] += u64::from(deg2[v]);
        sum2[v] += u64::from(deg2[u]);
    }

    let mut nodes = Vec::new();
    let mut rows = Vec::new();
    for (i, &d1) in deg1.iter().enumerate() {
        if d1 == 0 {
            continue;
        }
        let d1f = f64::from(d1);
        nodes.push(NodeId(i as u32));
        rows.push(NodeTrajectory {
            d1: d1 as usize,
            delta_d: (deg2[i] - d1) as usize,
            n1: sum1[i] as f64 / d1f,
            delta_n: (sum2[i] - sum1[i]) as f64 / d1f,
        });
    }
    if rows.len() < 2 {
        return Err(Error::TooFewNodes(rows.len()));
    }
    Ok(NodeTrajectories { nodes, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Mobility,
    Assortativity,
    Philanthropy,
    Community,
    ChangeInAssortativity,
    NeighbourMobility,
}

impl Aspect {
    pub const ALL: [Aspect; 6] = [
        Aspect::Mobility,
        Aspect::Assortativity,
        Aspect::Philanthropy,
        Aspect::Community,
        Aspect::ChangeInAssortativity,
        Aspect::NeighbourMobility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Aspect::Mobility => "mobility",
            Aspect::Assortativity => "assortativity",
            Aspect::Philanthropy => "philanthropy",
            Aspect::Community => "community",
            Aspect::ChangeInAssortativity => "change_in_assortativity",
            Aspect::NeighbourMobility => "neighbour_mobility",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Aspect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The six correlations at one `t1`; `None` marks an undefined correlation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Aspects {
    pub mobility: Option<f64>,
    pub assortativity: Option<f64>,
    pub philanthropy: Option<f64>,
    pub community: Option<f64>,
    pub change_in_assortativity: Option<f64>,
    pub neighbour_mobility: Option<f64>,
}

impl Aspects {
    pub fn get(&self, aspect: Aspect) -> Option<f64> {
        match aspect {
            Aspect::Mobility => self.mobility,
            Aspect::Assortativity => self.assortativity,
            Aspect::Philanthropy => self.philanthropy,
            Aspect::Community => self.community,
            Aspect::ChangeInAssortativity => self.change_in_assortativity,
            Aspect::NeighbourMobility => self.neighbour_mobility,
        }
    }

    pub fn set(&mut self, aspect: Aspect, value: Option<f64>) {
        let slot = match aspect {
            Aspect::Mobility => &mut self.mobility,
            Aspect::Assortativity => &mut self.assortativity,
            Aspect::Philanthropy => &mut self.philanthropy,
            Aspect::Community => &mut self.community,
            Aspect::ChangeInAssortativity => &mut self.change_in_assortativity,
            Aspect::NeighbourMobility => &mut self.neighbour_mobility,
        };
        *slot = value;
    }

    /// Values in [`Aspect::ALL`] order.
    pub fn values(&self) -> [Option<f64>; 6] {
        Aspect::ALL.map(|a| self.get(a))
    }

    pub fn all_defined(&self) -> bool {
        self.values().iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaxonomyPoint {
    pub t1_fraction: f64,
    pub aspects: Aspects,
    pub gini_t1: f64,
    pub included_nodes: usize,
}

impl TaxonomyPoint {
    pub fn from_trajectories(t1_fraction: f64, traj: &NodeTrajectories) -> Result<Self> {
        let col = |f: fn(&NodeTrajectory) -> f64| traj.rows.iter().map(f).collect::<Vec<f64>>();
        let d1 = col(|r| r.d1 as f64);
        let dd = col(|r| r.delta_d as f64);
        let n1 = col(|r| r.n1);
        let dn = col(|r| r.delta_n);

        let aspects = Aspects {
            mobility: pearson(&d1, &dd)?,
            assortativity: pearson(&d1, &n1)?,
            philanthropy: pearson(&d1, &dn)?,
            community: pearson(&dd, &n1)?,
            change_in_assortativity: pearson(&dd, &dn)?,
            neighbour_mobility: pearson(&n1, &dn)?,
        };
        let degrees: Vec<usize> = traj.rows.iter().map(|r| r.d1).collect();
        Ok(Self {
            t1_fraction,
            aspects,
            gini_t1: degree_gini(&degrees)?,
            included_nodes: traj.len(),
        })
    }
}

pub fn taxonomy_point(stream: &EdgeStream, t1: CutSpec, t2: CutSpec) -> Result<TaxonomyPoint> {
    let traj = node_trajectories(stream, t1, t2)?;
    TaxonomyPoint::from_trajectories(t1.value(), &traj)
}

/// The default `t1` schedule: 10%, 20%, ..., 90% of edges.
pub fn default_t1_fractions() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TaxonomyTrajectory {
    pub points: Vec<TaxonomyPoint>,
    pub warnings: Vec<String>,
}

/// Taxonomy points at the default `t1` schedule with `t2` at the full stream.
pub fn taxonomy_trajectory(stream: &EdgeStream) -> TaxonomyTrajectory {
    taxonomy_trajectory_at(stream, &default_t1_fractions())
}

/// Taxonomy points at each edge fraction in `t1_fractions` (with `t2` at the
/// full stream). Fractions that floor to an already-used cut are merged into
/// the first one, and failing points are reported as warnings.
pub fn taxonomy_trajectory_at(stream: &EdgeStream, t1_fractions: &[f64]) -> TaxonomyTrajectory {
    let mut out = TaxonomyTrajectory::default();
    let mut fractions = t1_fractions.to_vec();
    fractions.sort_by(f64::total_cmp);
    let total = stream.edge_count();
    let mut last_k = None;

    for f in fractions {
        let k = match CutSpec::edge_fraction(f).and_then(|c| c.included_edges(stream)) {
            Ok(k) => k,
            Err(e) => {
                out.warnings.push(format!("t1={f}: {e}"));
                continue;
            }
        };
        if last_k == Some(k) {
            out.warnings.push(format!(
                "t1={f}: cut of {k} edges duplicates the previous point, merged"
            ));
            continue;
        }
        last_k = Some(k);
        let point = trajectories_between(stream, k, total).and_then(|traj| {
            if k >= total {
                return Err(Error::CutOrder { t1: k, t2: total });
            }
            TaxonomyPoint::from_trajectories(f, &traj)
        });
        match point {
            Ok(p) => out.points.push(p),
            Err(e) => out.warnings.push(format!("t1={f}: {e}")),
        }
    }
    out
}
