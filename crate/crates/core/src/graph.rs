//! Abstract simple graphs and subgraph masks.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("mask edge {0}-{1} has an endpoint outside the mask's vertex set")]
    DanglingMaskEdge(VertexId, VertexId),
    #[error("mask edge {0}-{1} is not an edge of the graph")]
    MaskEdgeNotInGraph(VertexId, VertexId),
}

/// Simple undirected graph; neighbour lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(SimpleGraph { adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep` (in the given order); returns the graph
    /// and the new-to-old index table.
    pub fn induced(&self, keep: &[VertexId]) -> (SimpleGraph, Vec<VertexId>) {
        let mut old_to_new = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut ns: Vec<_> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (old_to_new[w] != usize::MAX).then_some(old_to_new[w]))
                    .collect();
                ns.sort_unstable();
                ns
            })
            .collect();
        (SimpleGraph { adj }, keep.to_vec())
    }

    pub fn without_edge(&self, u: VertexId, v: VertexId) -> SimpleGraph {
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        SimpleGraph { adj }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_clique(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_odd_cycle(&self) -> bool {
        let n = self.vertex_count();
        n >= 3 && n % 2 == 1 && self.is_connected() && self.adj.iter().all(|ns| ns.len() == 2)
    }

    /// Biconnected components (blocks). Bridges are two-vertex blocks and
    /// isolated vertices are single-vertex blocks; every edge lies in
    /// exactly one block.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.vertex_count();
        let mut state = BlockSearch {
            g: self,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            time: 0,
            edge_stack: Vec::new(),
            blocks: Vec::new(),
        };
        for s in 0..n {
            if state.disc[s] != usize::MAX {
                continue;
            }
            if self.degree(s) == 0 {
                state.disc[s] = state.time;
                state.time += 1;
                state.blocks.push(Block {
                    vertices: vec![s],
                    edges: Vec::new(),
                });
                continue;
            }
            state.visit(s, usize::MAX);
        }
        let mut blocks = state.blocks;
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        blocks
    }
}

/// A maximal 2-connected subgraph, bridge or isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl Block {
    /// The block as a standalone graph on `0..vertices.len()`.
    pub fn as_graph(&self) -> SimpleGraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let iu = self.vertices.binary_search(&u).unwrap();
                let iv = self.vertices.binary_search(&v).unwrap();
                (iu, iv)
            })
            .collect();
        SimpleGraph::from_edges(self.vertices.len(), &edges).expect("block of a simple graph")
    }

    pub fn is_clique(&self) -> bool {
        let m = self.vertices.len();
        self.edges.len() == m * m.saturating_sub(1) / 2
    }

    pub fn is_odd_cycle(&self) -> bool {
        self.as_graph().is_odd_cycle()
    }
}

struct BlockSearch<'a> {
    g: &'a SimpleGraph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(VertexId, VertexId)>,
    blocks: Vec<Block>,
}

impl BlockSearch<'_> {
    fn visit(&mut self, u: VertexId, parent: VertexId) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for &w in self.g.neighbors(u) {
            if w == parent {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.edge_stack.push((u, w));
                self.visit(w, u);
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    self.pop_block((u, w));
                }
            } else if self.disc[w] < self.disc[u] {
                self.edge_stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }

    fn pop_block(&mut self, until: (VertexId, VertexId)) {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        while let Some(e) = self.edge_stack.pop() {
            vertices.insert(e.0);
            vertices.insert(e.1);
            edges.push((e.0.min(e.1), e.0.max(e.1)));
            if e == until {
                break;
            }
        }
        edges.sort_unstable();
        self.blocks.push(Block {
            vertices: vertices.into_iter().collect(),
            edges,
        });
    }
}

/// Vertex and edge flags selecting a subgraph, e.g. the precolored part
/// `H` or a configuration `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubgraphMask {
    vertices: Vec<bool>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl SubgraphMask {
    pub fn empty(n: usize) -> Self {
        SubgraphMask {
            vertices: vec![false; n],
            edges: BTreeSet::new(),
        }
    }

    /// Validates that every edge has both endpoints in the vertex set and
    /// is an edge of `g`.
    pub fn new(
        g: &SimpleGraph,
        vertices: &[VertexId],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let mut flags = vec![false; n];
        for &v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            flags[v] = true;
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if !flags[u] || !flags[v] {
                return Err(GraphError::DanglingMaskEdge(u, v));
            }
            if !g.has_edge(u, v) {
                return Err(GraphError::MaskEdgeNotInGraph(u, v));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SubgraphMask {
            vertices: flags,
            edges: set,
        })
    }

    /// The subgraph induced by `vertices`.
    pub fn induced(g: &SimpleGraph, vertices: &[VertexId]) -> Result<Self, GraphError> {
        let mut mask = Self::new(g, vertices, &[])?;
        let edges: Vec<_> = g
            .edges()
            .filter(|&(u, v)| mask.vertices[u] && mask.vertices[v])
            .collect();
        mask.edges.extend(edges);
        Ok(mask)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.get(v).copied().unwrap_or(false)
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn universe(&self) -> usize {
        self.vertices.len()
    }

    /// `H ⊊ G`: the mask misses at least one vertex or edge of `g`.
    pub fn is_proper_in(&self, g: &SimpleGraph) -> bool {
        self.vertex_count() < g.vertex_count() || self.edge_count() < g.edge_count()
    }

    /// Re-indexes the mask through a new-to-old table, dropping anything
    /// that does not survive.
    pub fn restrict(&self, new_to_old: &[VertexId]) -> SubgraphMask {
        let mut old_to_new = std::collections::HashMap::new();
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new.insert(v, i);
        }
        let vertices = new_to_old.iter().map(|&v| self.contains_vertex(v)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (*old_to_new.get(&u)?, *old_to_new.get(&v)?);
                Some((a.min(b), a.max(b)))
            })
            .collect();
        SubgraphMask { vertices, edges }
    }
}
