//! Minimum spanning trees as a fitness function over edge-selection
//! bitstrings, with Kruskal's algorithm as the exact reference.

use std::io::Write;
use std::path::Path;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::{Direction, FitnessFunction};
use crate::rng::RandomSource;

pub type EdgeId = usize;

/// Undirected connected graph with positive integer edge weights.
///
/// Search points are bitstrings of length `m` (one bit per edge). The
/// penalty base `M` satisfies `M >= n_v^2 * w_max` and defaults to exactly
/// that product.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, u64)>,
    w_max: u64,
    penalty: f64,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn unite(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        self.components -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A spanning tree found by Kruskal's algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MstSolution {
    pub weight: u64,
    pub edges: Vec<EdgeId>,
}

impl WeightedGraph {
    /// Builds a graph and validates connectivity and weight positivity.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        if vertex_count < 2 {
            return Err(Error::InvalidGraph("need at least two vertices".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidGraph("need at least one edge".into()));
        }
        for &(u, v, w) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex >= {vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if w == 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has non-positive weight"
                )));
            }
        }
        let w_max = edges.iter().map(|e| e.2).max().unwrap();
        let penalty = (vertex_count * vertex_count) as f64 * w_max as f64;
        let graph = Self {
            vertex_count,
            edges,
            w_max,
            penalty,
        };
        // Connectivity check doubles as the MST-exists guarantee.
        graph.kruskal_mst()?;
        Ok(graph)
    }

    /// Raises the penalty base above its default `n_v^2 * w_max`.
    pub fn with_penalty(mut self, penalty: f64) -> Result<Self> {
        if penalty < (self.vertex_count * self.vertex_count) as f64 * self.w_max as f64 {
            return Err(Error::InvalidParameter(format!(
                "penalty base {penalty} below n_v^2 * w_max"
            )));
        }
        self.penalty = penalty;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn max_weight(&self) -> u64 {
        self.w_max
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    /// Number of connected components of the subgraph selected by `x`,
    /// counting isolated vertices.
    pub fn components(&self, x: &BitString) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            if x.get(i) {
                uf.unite(u, v);
            }
        }
        uf.components
    }

    /// Exact minimum spanning tree, ties broken by edge index.
    pub fn kruskal_mst(&self) -> Result<MstSolution> {
        let mut order: Vec<EdgeId> = (0..self.edges.len()).collect();
        order.sort_by_key(|&i| (self.edges[i].2, i));
        let mut uf = UnionFind::new(self.vertex_count);
        let mut picked = Vec::with_capacity(self.vertex_count - 1);
        let mut weight = 0u64;
        for i in order {
            let (u, v, w) = self.edges[i];
            if uf.unite(u, v) {
                picked.push(i);
                weight += w;
                if picked.len() == self.vertex_count - 1 {
                    break;
                }
            }
        }
        if picked.len() != self.vertex_count - 1 {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        picked.sort_unstable();
        Ok(MstSolution {
            weight,
            edges: picked,
        })
    }

    /// Rank of each edge in the weight-sorted order (rank 1 = lightest,
    /// ties broken by edge index).
    pub fn edge_ranks(&self) -> Vec<usize> {
        let mut order: Vec<EdgeId> = (0..self.edges.len()).collect();
        order.sort_by_key(|&i| (self.edges[i].2, i));
        let mut ranks = vec![0usize; self.edges.len()];
        for (pos, &i) in order.iter().enumerate() {
            ranks[i] = pos + 1;
        }
        ranks
    }

    /// Random connected graph: a random spanning tree plus `m - (n_v - 1)`
    /// distinct extra edges, weights uniform in `[1..=w_max]`.
    pub fn random_connected(
        vertex_count: usize,
        edge_count: usize,
        w_max: u64,
        rng: &mut RandomSource,
    ) -> Result<Self> {
        if vertex_count < 2 || w_max == 0 {
            return Err(Error::InvalidParameter(
                "need at least two vertices and positive weights".into(),
            ));
        }
        let max_edges = vertex_count * (vertex_count - 1) / 2;
        if edge_count < vertex_count - 1 || edge_count > max_edges {
            return Err(Error::InvalidParameter(format!(
                "edge count {edge_count} outside [{}..{max_edges}]",
                vertex_count - 1
            )));
        }
        let mut existing = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(edge_count);
        // Random attachment order gives a random (not uniform) spanning tree.
        let mut order: Vec<usize> = (0..vertex_count).collect();
        for i in (1..vertex_count).rev() {
            let j = rng.int_in(0, i);
            order.swap(i, j);
        }
        for i in 1..vertex_count {
            let a = order[i];
            let b = order[rng.int_in(0, i - 1)];
            let key = (a.min(b), a.max(b));
            existing.insert(key);
            edges.push((key.0, key.1, rng.int_in(1, w_max as usize) as u64));
        }
        while edges.len() < edge_count {
            let a = rng.int_in(0, vertex_count - 1);
            let b = rng.int_in(0, vertex_count - 1);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if existing.insert(key) {
                edges.push((key.0, key.1, rng.int_in(1, w_max as usize) as u64));
            }
        }
        Self::new(vertex_count, edges)
    }

    /// Reads the plain-text format: first line `n_v m`, then `m` lines
    /// `u v w` with 0-based vertex indices.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("{}: empty file", path.display())))?;
        let mut parts = header.split_whitespace();
        let parse_usize = |tok: Option<&str>, what: &str| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what}")))
        };
        let n_v = parse_usize(parts.next(), "vertex count")?;
        let m = parse_usize(parts.next(), "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut parts = line.split_whitespace();
            let u = parse_usize(parts.next(), "edge endpoint")?;
            let v = parse_usize(parts.next(), "edge endpoint")?;
            let w = parse_usize(parts.next(), "edge weight")? as u64;
            edges.push((u, v, w));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "{}: header promises {m} edges, found {}",
                path.display(),
                edges.len()
            )));
        }
        Self::new(n_v, edges)
    }

    /// Writes the same plain-text format that [`WeightedGraph::load`] reads.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "{} {}", self.vertex_count, self.edges.len())?;
        for &(u, v, w) in &self.edges {
            writeln!(out, "{u} {v} {w}")?;
        }
        Ok(())
    }
}

/// The spanning-tree fitness (minimized):
/// `M^2 (c(x) - 1) + M (|x|_1 - (n_v - 1)) + sum of selected weights`.
/// Disconnected subgraphs and extra edges are penalized so heavily that any
/// spanning tree beats any non-tree.
#[derive(Debug, Clone)]
pub struct MstFitness {
    graph: WeightedGraph,
    optimal_weight: u64,
}

impl MstFitness {
    pub fn new(graph: WeightedGraph) -> Result<Self> {
        let optimal_weight = graph.kruskal_mst()?.weight;
        Ok(Self {
            graph,
            optimal_weight,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn optimal_weight(&self) -> u64 {
        self.optimal_weight
    }

    pub fn selected_weight(&self, x: &BitString) -> u64 {
        self.graph
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| x.get(*i))
            .map(|(_, e)| e.2)
            .sum()
    }

    /// Whether `x` encodes a spanning tree.
    pub fn is_spanning_tree(&self, x: &BitString) -> bool {
        x.ones_count() == self.graph.vertex_count - 1 && self.graph.components(x) == 1
    }
}

impl FitnessFunction for MstFitness {
    fn name(&self) -> &str {
        "mst"
    }

    fn size(&self) -> usize {
        self.graph.edge_count()
    }

    fn evaluate(&self, x: &BitString) -> f64 {
        debug_assert_eq!(x.len(), self.graph.edge_count());
        let c = self.graph.components(x) as f64;
        let selected = x.ones_count() as f64;
        let m = self.graph.penalty;
        let target = (self.graph.vertex_count - 1) as f64;
        m * m * (c - 1.0) + m * (selected - target) + self.selected_weight(x) as f64
    }

    fn is_optimum(&self, x: &BitString) -> bool {
        self.is_spanning_tree(x) && self.selected_weight(x) == self.optimal_weight
    }

    fn direction(&self) -> Direction {
        Direction::Minimize
    }
}
