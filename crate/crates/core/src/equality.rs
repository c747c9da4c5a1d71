//! Gini coefficient of the degree distribution and its evolution over a
//! network's lifetime.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::snapshot::{prefix_degrees, CutMode, CutSpec};
use crate::stream::EdgeStream;

/// Gini coefficient `sum_i sum_j |x_i - x_j| / (2 n^2 mean)`.
///
/// Evaluated through the sorted-rank identity
/// `sum_i sum_j |x_i - x_j| = 2 sum_i (2i - n - 1) x_(i)`, so the cost is one sort.
pub fn gini(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::TooFewValues(values.len()));
    }
    if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidValue(bad));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted_gini(&sorted)
}

/// Gini of integer degrees; zeros are included if present.
pub fn degree_gini(degrees: &[usize]) -> Result<f64> {
    if degrees.len() < 2 {
        return Err(Error::TooFewValues(degrees.len()));
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let as_f64: Vec<f64> = sorted.into_iter().map(|d| d as f64).collect();
    sorted_gini(&as_f64)
}

fn sorted_gini(sorted: &[f64]) -> Result<f64> {
    let n = sorted.len() as f64;
    let total: f64 = sorted.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, x)| (2.0 * (i as f64 + 1.0) - n - 1.0) * x)
        .sum();
    // n^2 * mean = n * total
    Ok((weighted / (n * total)).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualityPoint {
    pub tau: f64,
    pub gini: f64,
    pub node_count: usize,
}

/// How the trajectory's cut points are spaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    NormalizedTime,
    EdgeFraction,
}

impl From<Spacing> for CutMode {
    fn from(s: Spacing) -> Self {
        match s {
            Spacing::NormalizedTime => CutMode::NormalizedTime,
            Spacing::EdgeFraction => CutMode::EdgeFraction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EqualityTrajectory {
    pub points: Vec<EqualityPoint>,
    /// One message per skipped cut.
    pub warnings: Vec<String>,
}

/// Gini of present-node degrees at `tau = k / n_points` for `k = 1..=n_points`.
pub fn equality_trajectory(
    stream: &EdgeStream,
    n_points: usize,
    spacing: Spacing,
) -> Result<EqualityTrajectory> {
    if n_points == 0 {
        return Err(Error::InvalidConfig("n_points must be positive".into()));
    }
    let mut out = EqualityTrajectory::default();
    let mut degrees = vec![0u32; stream.node_count()];
    let mut included = 0;

    for k in 1..=n_points {
        let tau = k as f64 / n_points as f64;
        let cut = CutSpec::new(spacing.into(), tau)?;
        let target = match cut.included_edges(stream) {
            Ok(n) => n,
            Err(e) => {
                out.warnings.push(format!("tau={tau}: {e}"));
                continue;
            }
        };
        for e in &stream.edges()[included..target.max(included)] {
            degrees[e.source.index()] += 1;
            degrees[e.target.index()] += 1;
        }
        included = included.max(target);

        let present: Vec<usize> = degrees
            .iter()
            .filter(|&&d| d > 0)
            .map(|&d| d as usize)
            .collect();
        if present.len() < 2 {
            out.warnings
                .push(format!("tau={tau}: only {} node(s) present", present.len()));
            continue;
        }
        match degree_gini(&present) {
            Ok(g) => out.points.push(EqualityPoint {
                tau,
                gini: g,
                node_count: present.len(),
            }),
            Err(e) => out.warnings.push(format!("tau={tau}: {e}")),
        }
    }
    Ok(out)
}

/// Gini of present-node degrees at a single cut.
pub fn gini_at(stream: &EdgeStream, cut: CutSpec) -> Result<f64> {
    let k = cut.included_edges(stream)?;
    let present: Vec<usize> = prefix_degrees(stream, k)
        .into_iter()
        .filter(|&d| d > 0)
        .map(|d| d as usize)
        .collect();
    degree_gini(&present)
}
