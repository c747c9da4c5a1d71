//! Timestamped edge lists and their canonical, growth-ordered form.
//!
//! Input files are read as undirected, unweighted interaction logs. Every
//! line contributes one raw edge; [`canonicalize`] then drops self-loops,
//! orders each endpoint pair, sorts by time (stable on ties), and keeps only
//! the first occurrence of each pair, so the result is a simple graph that
//! only ever grows.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Dense node index assigned during canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Comma,
    Tab,
    Whitespace,
}

impl Delimiter {
    fn split<'a>(self, line: &'a str) -> Box<dyn Iterator<Item = &'a str> + 'a> {
        match self {
            Delimiter::Comma => Box::new(line.split(',').map(str::trim)),
            Delimiter::Tab => Box::new(line.split('\t').map(str::trim)),
            Delimiter::Whitespace => Box::new(line.split_whitespace()),
        }
    }

    fn as_char(self) -> char {
        match self {
            Delimiter::Comma => ',',
            Delimiter::Tab => '\t',
            Delimiter::Whitespace => ' ',
        }
    }
}

/// Column layout of an edge-list file. Columns are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormatOptions {
    pub delimiter: Delimiter,
    pub source_col: usize,
    pub target_col: usize,
    pub time_col: usize,
}

impl Default for FormatOptions {
    fn default() -> Self {
        Self {
            delimiter: Delimiter::Whitespace,
            source_col: 0,
            target_col: 1,
            time_col: 2,
        }
    }
}

impl FormatOptions {
    pub fn with_delimiter(delimiter: Delimiter) -> Self {
        Self {
            delimiter,
            ..Self::default()
        }
    }

    fn min_fields(&self) -> usize {
        self.source_col.max(self.target_col).max(self.time_col) + 1
    }
}

/// One line of an edge list, before canonicalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEdge {
    pub source: String,
    pub target: String,
    pub timestamp: f64,
}

impl RawEdge {
    pub fn new(source: impl Into<String>, target: impl Into<String>, timestamp: f64) -> Self {
        Self {
            source: source.into(),
            target: target.into(),
            timestamp,
        }
    }
}

/// Unsorted parse output: every data line in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedEdgeList {
    pub edges: Vec<RawEdge>,
    /// Comment and blank lines that were skipped.
    pub skipped_lines: usize,
}

impl ParsedEdgeList {
    pub fn node_count(&self) -> usize {
        let mut seen = HashSet::new();
        for e in &self.edges {
            seen.insert(e.source.as_str());
            seen.insert(e.target.as_str());
        }
        seen.len()
    }
}

/// Parses a delimited edge list. Lines starting with `#` or `%` are comments.
pub fn parse_edge_list(text: &str, options: &FormatOptions) -> Result<ParsedEdgeList> {
    let min_fields = options.min_fields();
    let mut edges = Vec::new();
    let mut skipped_lines = 0;
    let mut fields: Vec<&str> = Vec::with_capacity(min_fields);

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            skipped_lines += 1;
            continue;
        }
        fields.clear();
        fields.extend(options.delimiter.split(trimmed));
        if fields.len() < min_fields {
            return Err(Error::MalformedLine {
                line: lineno,
                reason: format!(
                    "expected at least {min_fields} fields, found {}",
                    fields.len()
                ),
            });
        }
        let source = fields[options.source_col];
        let target = fields[options.target_col];
        if source.is_empty() || target.is_empty() {
            return Err(Error::MalformedLine {
                line: lineno,
                reason: "empty node identifier".into(),
            });
        }
        let raw_time = fields[options.time_col];
        let timestamp = match raw_time.parse::<f64>() {
            Ok(t) if t.is_finite() => t,
            _ => {
                return Err(Error::MalformedLine {
                    line: lineno,
                    reason: format!("unparseable timestamp `{raw_time}`"),
                })
            }
        };
        edges.push(RawEdge::new(source, target, timestamp));
    }

    if edges.is_empty() {
        return Err(Error::NoData);
    }
    Ok(ParsedEdgeList {
        edges,
        skipped_lines,
    })
}

/// An undirected edge between two distinct nodes. `source` holds the endpoint
/// whose label sorts first, so `(a, b)` and `(b, a)` canonicalize identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalEdge {
    pub source: NodeId,
    pub target: NodeId,
    pub timestamp: f64,
}

/// Canonical, time-ordered simple-graph edge stream.
///
/// Only [`canonicalize`] constructs one, so every instance holds at least one
/// edge, has non-decreasing timestamps, and contains no repeated pair or
/// self-loop. Node ids are dense and numbered by first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeStream {
    edges: Vec<TemporalEdge>,
    labels: Vec<String>,
}

impl EdgeStream {
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn t_min(&self) -> f64 {
        self.edges[0].timestamp
    }

    pub fn t_max(&self) -> f64 {
        self.edges[self.edges.len() - 1].timestamp
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node.index()]
    }

    /// Node-id to label mapping, indexed by [`NodeId::index`].
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| NodeId(i as u32))
    }

    /// The stream's edges with their original labels, in stream order.
    pub fn raw_edges(&self) -> impl Iterator<Item = RawEdge> + '_ {
        self.edges.iter().map(|e| RawEdge {
            source: self.labels[e.source.index()].clone(),
            target: self.labels[e.target.index()].clone(),
            timestamp: e.timestamp,
        })
    }

    /// Serializes to the edge-list text format read by [`parse_edge_list`],
    /// using columns 0, 1, 2. Timestamps use the shortest exact representation.
    pub fn to_edge_list(&self, delimiter: Delimiter) -> String {
        let sep = delimiter.as_char();
        let mut out = String::with_capacity(self.edges.len() * 16);
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{}{sep}{}{sep}{}",
                self.labels[e.source.index()],
                self.labels[e.target.index()],
                e.timestamp
            );
        }
        out
    }
}

/// Turns raw edges into an [`EdgeStream`], optionally keeping only the first
/// `max_edges` distinct edges in time order.
pub fn canonicalize<I>(raw: I, max_edges: Option<usize>) -> Result<EdgeStream>
where
    I: IntoIterator<Item = RawEdge>,
{
    let mut pairs: Vec<RawEdge> = raw
        .into_iter()
        .filter(|e| e.source != e.target)
        .map(|mut e| {
            if e.target < e.source {
                std::mem::swap(&mut e.source, &mut e.target);
            }
            e
        })
        .collect();
    // sort_by is stable, so ties keep input order
    pairs.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));

    let limit = max_edges.unwrap_or(usize::MAX);
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |label: String, labels: &mut Vec<String>| -> NodeId {
        *ids.entry(label).or_insert_with_key(|l| {
            labels.push(l.clone());
            NodeId((labels.len() - 1) as u32)
        })
    };

    for e in pairs {
        if edges.len() >= limit {
            break;
        }
        if !seen.insert((e.source.clone(), e.target.clone())) {
            continue;
        }
        let source = intern(e.source, &mut labels);
        let target = intern(e.target, &mut labels);
        edges.push(TemporalEdge {
            source,
            target,
            timestamp: e.timestamp,
        });
    }

    if edges.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(EdgeStream { edges, labels })
}
