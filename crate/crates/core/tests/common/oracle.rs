//! Straight-from-definition reference implementations.
//!
//! Nothing here calls into the library's snapshot or taxonomy code; inputs
//! are plain `(source, target, timestamp)` string triples.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

pub type Triple = (String, String, f64);

/// Gini by the full double sum.
pub fn gini_naive(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let mut total = 0.0;
    for a in xs {
        for b in xs {
            total += (a - b).abs();
        }
    }
    total / (2.0 * n * n * mean)
}

/// Pearson via `cov(x, y) / sqrt(var(x) var(y))` with raw moments.
pub fn pearson_moments(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    if xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0]) {
        return None;
    }
    let ex = xs.iter().sum::<f64>() / n;
    let ey = ys.iter().sum::<f64>() / n;
    let cov = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - ex) * (y - ey))
        .sum::<f64>()
        / n;
    let vx = xs.iter().map(|x| (x - ex) * (x - ex)).sum::<f64>() / n;
    let vy = ys.iter().map(|y| (y - ey) * (y - ey)).sum::<f64>() / n;
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

/// Simple-graph edge sequence: self-loops dropped, stable time sort,
/// first occurrence of each unordered pair kept.
pub fn simple_edges(raw: &[Triple]) -> Vec<(String, String)> {
    let mut sorted: Vec<&Triple> = raw.iter().filter(|(a, b, _)| a != b).collect();
    sorted.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b, _) in sorted {
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if seen.insert(key.clone()) {
            out.push(key);
        }
    }
    out
}

pub fn adjacency(edges: &[(String, String)]) -> BTreeMap<String, BTreeSet<String>> {
    let mut adj: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a.clone()).or_default().insert(b.clone());
        adj.entry(b.clone()).or_default().insert(a.clone());
    }
    adj
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    /// mobility, assortativity, philanthropy, community,
    /// change_in_assortativity, neighbour_mobility
    pub aspects: [Option<f64>; 6],
    pub gini_t1: f64,
    pub nodes: usize,
    /// (d1, delta_d, n1, delta_n) per node, keyed by label
    pub rows: BTreeMap<String, (f64, f64, f64, f64)>,
}

/// Exact constancy test for a series of fractions `num / den`.
fn constant_ratio(fracs: &[(i64, i64)]) -> bool {
    fracs.iter().all(|&(n, d)| n * fracs[0].1 == fracs[0].0 * d)
}

fn pearson_exact_guard(xs: &[f64], ys: &[f64], x_const: bool, y_const: bool) -> Option<f64> {
    if x_const || y_const {
        return None;
    }
    let n = xs.len() as f64;
    let ex = xs.iter().sum::<f64>() / n;
    let ey = ys.iter().sum::<f64>() / n;
    let cov = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - ex) * (y - ey))
        .sum::<f64>()
        / n;
    let vx = xs.iter().map(|x| (x - ex) * (x - ex)).sum::<f64>() / n;
    let vy = ys.iter().map(|y| (y - ey) * (y - ey)).sum::<f64>() / n;
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

/// Taxonomy between the first `k1` and first `k2` simple edges.
pub fn taxonomy_reference(edges: &[(String, String)], k1: usize, k2: usize) -> Reference {
    let g1 = adjacency(&edges[..k1]);
    let g2 = adjacency(&edges[..k2]);
    let deg =
        |g: &BTreeMap<String, BTreeSet<String>>, u: &str| g.get(u).map_or(0, |s| s.len()) as i64;

    let mut rows = BTreeMap::new();
    // exact fractions for constancy checks: (d1, dd, n1, dn)
    let mut exact: Vec<[(i64, i64); 4]> = Vec::new();
    for (u, nbrs) in &g1 {
        let d1 = nbrs.len() as i64;
        let d2 = deg(&g2, u);
        let s1: i64 = nbrs.iter().map(|v| deg(&g1, v)).sum();
        let s2: i64 = nbrs.iter().map(|v| deg(&g2, v)).sum();
        let mean1 = s1 as f64 / d1 as f64;
        let mean2 = s2 as f64 / d1 as f64;
        rows.insert(
            u.clone(),
            (d1 as f64, (d2 - d1) as f64, mean1, mean2 - mean1),
        );
        exact.push([(d1, 1), (d2 - d1, 1), (s1, d1), (s2 - s1, d1)]);
    }
    let col = |i: usize| -> Vec<f64> {
        rows.values()
            .map(|r: &(f64, f64, f64, f64)| [r.0, r.1, r.2, r.3][i])
            .collect()
    };
    let konst: Vec<bool> = (0..4)
        .map(|i| constant_ratio(&exact.iter().map(|r| r[i]).collect::<Vec<_>>()))
        .collect();
    let cols = [col(0), col(1), col(2), col(3)];
    let corr = |i: usize, j: usize| pearson_exact_guard(&cols[i], &cols[j], konst[i], konst[j]);
    Reference {
        aspects: [
            corr(0, 1),
            corr(0, 2),
            corr(0, 3),
            corr(1, 2),
            corr(1, 3),
            corr(2, 3),
        ],
        gini_t1: gini_naive(&cols[0]),
        nodes: rows.len(),
        rows,
    }
}
