//! Synthetic growth models.
//!
//! Both models start from a clique of `m + 1` nodes and then add one node at
//! a time, each linking to `m` distinct existing nodes. They differ only in
//! how targets are weighted:
//!
//! * preferential attachment (Barabási–Albert): weight = current degree;
//! * rank attachment (Fortunato et al.): weight = `rank^-alpha`, where rank is
//!   the node's 1-based arrival order. Degree plays no role.
//!
//! Nodes are labelled by arrival rank (`"1"`, `"2"`, ...) and edges carry
//! consecutive integer timestamps in creation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::stream::{canonicalize, EdgeStream, RawEdge};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthConfig {
    pub n_nodes: usize,
    /// Edges added per arriving node.
    pub m: usize,
    /// Rank exponent; only used by the rank-attachment model.
    pub alpha: f64,
    pub seed: u64,
}

impl GrowthConfig {
    pub fn new(n_nodes: usize, m: usize, seed: u64) -> Self {
        Self {
            n_nodes,
            m,
            alpha: 1.0,
            seed,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidConfig("m must be at least 1".into()));
        }
        if self.n_nodes <= self.m {
            return Err(Error::InvalidConfig(format!(
                "n_nodes ({}) must exceed m ({})",
                self.n_nodes, self.m
            )));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Edge count of a generated stream: `m(m+1)/2 + (n - m - 1) m`.
    pub fn expected_edges(&self) -> usize {
        self.m * (self.m + 1) / 2 + (self.n_nodes - self.m - 1) * self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModel {
    Preferential,
    Rank,
}

pub fn generate(model: GrowthModel, config: &GrowthConfig) -> Result<EdgeStream> {
    match model {
        GrowthModel::Preferential => generate_ba(config),
        GrowthModel::Rank => generate_fortunato(config),
    }
}

/// Emits edges as `(source, target)` pairs of 0-based arrival indices.
struct Builder {
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn seeded(config: &GrowthConfig) -> Self {
        let mut edges = Vec::with_capacity(config.expected_edges());
        for i in 0..=config.m {
            for j in (i + 1)..=config.m {
                edges.push((j, i));
            }
        }
        Self { edges }
    }

    fn finish(self) -> Result<EdgeStream> {
        let raw = self.edges.into_iter().enumerate().map(|(t, (u, v))| {
            RawEdge::new((u + 1).to_string(), (v + 1).to_string(), (t + 1) as f64)
        });
        canonicalize(raw, None)
    }
}

/// Preferential attachment: targets drawn with probability proportional to
/// current degree, without replacement within one arrival.
pub fn generate_ba(config: &GrowthConfig) -> Result<EdgeStream> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut builder = Builder::seeded(config);

    // each node appears once per incident edge, so a uniform pick from this
    // list is a degree-proportional pick
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * config.expected_edges());
    for &(u, v) in &builder.edges {
        endpoints.push(u);
        endpoints.push(v);
    }

    let mut chosen = Vec::with_capacity(config.m);
    for new in (config.m + 1)..config.n_nodes {
        chosen.clear();
        while chosen.len() < config.m {
            let target = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        for &target in &chosen {
            builder.edges.push((new, target));
            endpoints.push(new);
            endpoints.push(target);
        }
    }
    builder.finish()
}

/// Rank attachment: the node with arrival rank `r` is drawn with probability
/// proportional to `r^-alpha`, without replacement within one arrival.
pub fn generate_fortunato(config: &GrowthConfig) -> Result<EdgeStream> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut builder = Builder::seeded(config);

    // cumulative[i] = sum of weights of nodes 0..=i
    let mut cumulative: Vec<f64> = Vec::with_capacity(config.n_nodes);
    let mut total = 0.0;
    let mut push_weight = |cumulative: &mut Vec<f64>, index: usize| {
        total += ((index + 1) as f64).powf(-config.alpha);
        cumulative.push(total);
    };
    for i in 0..=config.m {
        push_weight(&mut cumulative, i);
    }

    let mut chosen = Vec::with_capacity(config.m);
    for new in (config.m + 1)..config.n_nodes {
        chosen.clear();
        let sum = cumulative[cumulative.len() - 1];
        while chosen.len() < config.m {
            let x = rng.gen::<f64>() * sum;
            let target = cumulative.partition_point(|&c| c <= x).min(new - 1);
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        for &target in &chosen {
            builder.edges.push((new, target));
        }
        push_weight(&mut cumulative, new);
    }
    builder.finish()
}
