//! Undirected simple graphs in compressed adjacency form.
//!
//! Graphs are loaded from whitespace-separated edge lists (the format used by
//! the SNAP collection), normalized to simple undirected form and stored as
//! one contiguous neighbor array indexed by per-node offsets. Neighbor lists
//! are sorted. External node ids are densified to `0..n` in first-appearance
//! order and kept in a label table for reporting.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::{tvd, Distribution};

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<u64>,
    edge_count: usize,
}

/// What happened to the raw lines while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub kept_edges: usize,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
    pub comment_lines: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub d_max: usize,
    pub tvd_srw_vs_uniform: f64,
}

impl Graph {
    /// Builds a graph on nodes `0..n` from an edge list. Self-loops and
    /// repeated edges (in either orientation) are dropped.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels = (0..n as u64).collect();
        Self::build(labels, edges.to_vec()).0
    }

    /// Returns the graph together with the number of dropped self-loops and
    /// duplicates.
    fn build(labels: Vec<u64>, mut edges: Vec<(usize, usize)>) -> (Self, usize, usize) {
        let n = labels.len();
        let before = edges.len();
        edges.retain(|&(u, v)| u != v);
        let self_loops = before - edges.len();
        for e in edges.iter_mut() {
            assert!(e.0 < n && e.1 < n, "edge ({}, {}) out of range for {n} nodes", e.0, e.1);
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let with_dups = edges.len();
        edges.dedup();
        let duplicates = with_dups - edges.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let graph = Self { offsets, targets, labels, edge_count: edges.len() };
        (graph, self_loops, duplicates)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Sorted neighbor ids of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// External id of internal node `v`.
    #[inline]
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of the node with external id `label`.
    pub fn node_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    /// `2m / n`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.node_count() as f64
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Component id per node; components are numbered in order of their
    /// smallest node id.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = count;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v) {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Induced subgraph on the largest connected component. Among components
    /// of equal size the one containing the smallest node id wins. Node ids are
    /// re-densified in increasing order and labels carried over.
    pub fn largest_connected_component(&self) -> Graph {
        let (comp, count) = self.components();
        if count <= 1 {
            return self.clone();
        }
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let mut best = 0;
        for c in 1..count {
            if sizes[c] > sizes[best] {
                best = c;
            }
        }
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut labels = Vec::with_capacity(sizes[best]);
        for v in 0..self.node_count() {
            if comp[v] == best {
                remap[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let edges = self.edges().filter(|&(u, _)| comp[u] == best).map(|(u, v)| (remap[u], remap[v])).collect();
        Self::build(labels, edges).0
    }

    pub fn stats(&self) -> GraphStats {
        graph_stats(self)
    }

    /// Writes the graph as an edge list using external labels.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# nodes: {} edges: {}", self.node_count(), self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped; every other line must hold exactly two nonnegative
/// integers.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, IngestReport)> {
    let mut report = IngestReport::default();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |label: u64, labels: &mut Vec<u64>| {
        *index.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            report.comment_lines += 1;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                let count = trimmed.split_whitespace().count();
                return Err(Error::Parse { line: lineno, message: format!("expected 2 tokens, found {count}") });
            }
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| Error::Parse { line: lineno, message: format!("invalid node id {tok:?}") })
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a == b {
            // Self-loops do not introduce nodes on their own.
            report.dropped_self_loops += 1;
            continue;
        }
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (graph, _, duplicates) = Graph::build(labels, edges);
    report.dropped_duplicates = duplicates;
    report.kept_edges = graph.edge_count();
    Ok((graph, report))
}

pub fn parse_edge_list_str(text: &str) -> Result<(Graph, IngestReport)> {
    parse_edge_list(text.as_bytes())
}

pub fn average_degree(graph: &Graph) -> f64 {
    graph.average_degree()
}

pub fn largest_connected_component(graph: &Graph) -> Graph {
    graph.largest_connected_component()
}

/// Size, maximum degree and the total variation distance between the simple
/// random walk's stationary law (proportional to degree) and the uniform law.
pub fn graph_stats(graph: &Graph) -> GraphStats {
    let n = graph.node_count();
    let srw = Distribution::from_weights(graph.degrees().map(|d| d as f64).collect());
    let uniform = Distribution::uniform(n);
    GraphStats { n, m: graph.edge_count(), d_max: graph.max_degree(), tvd_srw_vs_uniform: tvd(&srw, &uniform) }
}
