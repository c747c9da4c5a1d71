#![allow(clippy::needless_range_loop)]

//! Two-component PCA of taxonomy observations.
//!
//! Each observation is one `(dataset, t1)` pair carrying the six taxonomy
//! aspects plus the Gini coefficient at `t1`. All observations are pooled
//! into one fit so that a dataset's successive `t1` points trace a trail
//! through a shared landscape.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::taxonomy::{Aspect, TaxonomyPoint};

pub const N_FEATURES: usize = 7;

pub const FEATURE_NAMES: [&str; N_FEATURES] = [
    "mobility",
    "assortativity",
    "philanthropy",
    "community",
    "change_in_assortativity",
    "neighbour_mobility",
    "gini_t1",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub dataset_id: String,
    pub t1_fraction: f64,
    pub features: [f64; N_FEATURES],
}

impl Observation {
    /// `None` when any aspect of the point is undefined.
    pub fn from_point(dataset_id: &str, point: &TaxonomyPoint) -> Option<Self> {
        let mut features = [0.0; N_FEATURES];
        for (slot, aspect) in features.iter_mut().zip(Aspect::ALL) {
            *slot = point.aspects.get(aspect)?;
        }
        features[N_FEATURES - 1] = point.gini_t1;
        Some(Self {
            dataset_id: dataset_id.to_owned(),
            t1_fraction: point.t1_fraction,
            features,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix {
    pub rows: Vec<Observation>,
}

/// A taxonomy point left out of the feature matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    pub dataset_id: String,
    pub t1_fraction: f64,
    pub undefined: Vec<&'static str>,
}

impl FeatureMatrix {
    /// Adds one dataset's points, skipping (and reporting) any with an
    /// undefined aspect.
    pub fn push_points(&mut self, dataset_id: &str, points: &[TaxonomyPoint]) -> Vec<Exclusion> {
        let mut excluded = Vec::new();
        for p in points {
            match Observation::from_point(dataset_id, p) {
                Some(obs) => self.rows.push(obs),
                None => excluded.push(Exclusion {
                    dataset_id: dataset_id.to_owned(),
                    t1_fraction: p.t1_fraction,
                    undefined: Aspect::ALL
                        .into_iter()
                        .filter(|a| p.aspects.get(*a).is_none())
                        .map(Aspect::name)
                        .collect(),
                }),
            }
        }
        excluded
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn column_means(&self) -> [f64; N_FEATURES] {
        let n = self.rows.len() as f64;
        let mut means = [0.0; N_FEATURES];
        for r in &self.rows {
            for (m, x) in means.iter_mut().zip(r.features) {
                *m += x;
            }
        }
        means.map(|m| m / n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    pub matrix: FeatureMatrix,
    pub means: [f64; N_FEATURES],
    pub stds: [f64; N_FEATURES],
}

/// Z-scores every column using the population standard deviation.
pub fn standardize(matrix: &FeatureMatrix) -> Result<Standardized> {
    if matrix.len() < 3 {
        return Err(Error::TooFewRows(matrix.len()));
    }
    let n = matrix.len() as f64;
    let means = matrix.column_means();
    let mut stds = [0.0; N_FEATURES];
    for j in 0..N_FEATURES {
        let first = matrix.rows[0].features[j];
        if matrix.rows.iter().all(|r| r.features[j] == first) {
            return Err(Error::ZeroVariance(FEATURE_NAMES[j]));
        }
        let ss: f64 = matrix
            .rows
            .iter()
            .map(|r| (r.features[j] - means[j]).powi(2))
            .sum();
        stds[j] = (ss / n).sqrt();
        if stds[j] == 0.0 {
            return Err(Error::ZeroVariance(FEATURE_NAMES[j]));
        }
    }
    let rows = matrix
        .rows
        .iter()
        .map(|r| {
            let mut o = r.clone();
            for j in 0..N_FEATURES {
                o.features[j] = (r.features[j] - means[j]) / stds[j];
            }
            o
        })
        .collect();
    Ok(Standardized {
        matrix: FeatureMatrix { rows },
        means,
        stds,
    })
}

/// Eigen-decomposition of a symmetric matrix, sorted by descending eigenvalue.
/// `vectors[k]` is the unit eigenvector for `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[f64; N]; N],
}

const SYMMETRY_TOL: f64 = 1e-9;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigen-decomposition.
///
/// Rotations sweep every off-diagonal pair until the off-diagonal Frobenius
/// norm drops below `1e-12`. Each eigenvector's largest-magnitude entry is
/// made positive (the earliest index wins ties), so output signs are fixed.
pub fn eigen_symmetric<const N: usize>(matrix: &[[f64; N]; N]) -> Result<Eigen<N>> {
    for i in 0..N {
        for j in (i + 1)..N {
            let diff = (matrix[i][j] - matrix[j][i]).abs();
            if diff.is_nan() || diff > SYMMETRY_TOL {
                return Err(Error::NotSymmetric { i, j, diff });
            }
        }
    }
    let mut a = *matrix;
    // symmetrize exactly so rotations see one value per pair
    for i in 0..N {
        for j in (i + 1)..N {
            let m = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = m;
            a[j][i] = m;
        }
    }
    // v[r][k]: row r of the accumulated rotation, eigenvector k is column k
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                rotated = true;
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && off_diagonal_norm(&a) >= OFF_DIAGONAL_TOL {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]).then(i.cmp(&j)));

    let mut values = [0.0; N];
    let mut vectors = [[0.0; N]; N];
    for (k, &col) in order.iter().enumerate() {
        values[k] = a[col][col];
        let mut vec = [0.0; N];
        for r in 0..N {
            vec[r] = v[r][col];
        }
        fix_sign(&mut vec);
        vectors[k] = vec;
    }
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

/// Applies `A <- J^T A J`, `V <- V J` for the rotation in plane `(p, q)`.
fn rotate<const N: usize>(
    a: &mut [[f64; N]; N],
    v: &mut [[f64; N]; N],
    p: usize,
    q: usize,
    c: f64,
    s: f64,
) {
    for k in 0..N {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..N {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}

fn fix_sign<const N: usize>(vec: &mut [f64; N]) {
    let mut best = 0;
    for i in 1..N {
        if vec[i].abs() > vec[best].abs() {
            best = i;
        }
    }
    if vec[best] < 0.0 {
        for x in vec.iter_mut() {
            *x = -*x;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Z-score each feature before computing the covariance.
    #[default]
    Standardized,
    /// Center only; eigen-decompose the raw covariance.
    RawCovariance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projection {
    pub dataset_id: String,
    pub t1_fraction: f64,
    pub pc1: f64,
    pub pc2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PcaResult {
    pub scaling: Scaling,
    pub means: [f64; N_FEATURES],
    /// All ones under [`Scaling::RawCovariance`].
    pub stds: [f64; N_FEATURES],
    pub eigenvalues: [f64; N_FEATURES],
    /// Every eigenvector, descending by eigenvalue.
    pub eigenvectors: [[f64; N_FEATURES]; N_FEATURES],
    pub projections: Vec<Projection>,
}

impl PcaResult {
    /// The two retained components.
    pub fn components(&self) -> [[f64; N_FEATURES]; 2] {
        [self.eigenvectors[0], self.eigenvectors[1]]
    }

    pub fn explained_variance_ratio(&self) -> [f64; N_FEATURES] {
        let total: f64 = self.eigenvalues.iter().sum();
        self.eigenvalues.map(|l| l / total)
    }

    /// Scaled features of one raw observation (what the eigenvectors act on).
    pub fn scale(&self, features: &[f64; N_FEATURES]) -> [f64; N_FEATURES] {
        let mut z = [0.0; N_FEATURES];
        for j in 0..N_FEATURES {
            z[j] = (features[j] - self.means[j]) / self.stds[j];
        }
        z
    }

    /// Scores on all components.
    pub fn scores(&self, features: &[f64; N_FEATURES]) -> [f64; N_FEATURES] {
        let z = self.scale(features);
        self.eigenvectors.map(|v| dot(&v, &z))
    }

    /// Inverts [`PcaResult::scores`] back to the original feature space.
    pub fn reconstruct(&self, scores: &[f64; N_FEATURES]) -> [f64; N_FEATURES] {
        let mut out = [0.0; N_FEATURES];
        for j in 0..N_FEATURES {
            let z: f64 = (0..N_FEATURES)
                .map(|k| scores[k] * self.eigenvectors[k][j])
                .sum();
            out[j] = z * self.stds[j] + self.means[j];
        }
        out
    }
}

fn dot(a: &[f64; N_FEATURES], b: &[f64; N_FEATURES]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Population covariance of the rows (divides by the row count).
pub fn covariance(matrix: &FeatureMatrix) -> [[f64; N_FEATURES]; N_FEATURES] {
    let n = matrix.len() as f64;
    let means = matrix.column_means();
    let mut cov = [[0.0; N_FEATURES]; N_FEATURES];
    for r in &matrix.rows {
        for i in 0..N_FEATURES {
            let di = r.features[i] - means[i];
            for j in i..N_FEATURES {
                cov[i][j] += di * (r.features[j] - means[j]);
            }
        }
    }
    for i in 0..N_FEATURES {
        for j in i..N_FEATURES {
            cov[i][j] /= n;
            cov[j][i] = cov[i][j];
        }
    }
    cov
}

pub fn pca_project(matrix: &FeatureMatrix, scaling: Scaling) -> Result<PcaResult> {
    let (scaled, means, stds) = match scaling {
        Scaling::Standardized => {
            let s = standardize(matrix)?;
            (s.matrix, s.means, s.stds)
        }
        Scaling::RawCovariance => {
            if matrix.len() < 3 {
                return Err(Error::TooFewRows(matrix.len()));
            }
            let means = matrix.column_means();
            let rows = matrix
                .rows
                .iter()
                .map(|r| {
                    let mut o = r.clone();
                    for j in 0..N_FEATURES {
                        o.features[j] -= means[j];
                    }
                    o
                })
                .collect();
            (FeatureMatrix { rows }, means, [1.0; N_FEATURES])
        }
    };
    let eigen = eigen_symmetric(&covariance(&scaled))?;
    let projections = scaled
        .rows
        .iter()
        .map(|r| Projection {
            dataset_id: r.dataset_id.clone(),
            t1_fraction: r.t1_fraction,
            pc1: dot(&eigen.vectors[0], &r.features),
            pc2: dot(&eigen.vectors[1], &r.features),
        })
        .collect();
    Ok(PcaResult {
        scaling,
        means,
        stds,
        eigenvalues: eigen.values,
        eigenvectors: eigen.vectors,
        projections,
    })
}
