//! Graph data model: simple undirected graphs with stable edge indices,
//! matchings, and vertex-disjoint cycle sets.
//!
//! Vertices are 0-based internally (1-based only in files). Edge identity is
//! the positional index into the edge list, stable for the lifetime of the
//! graph.

use crate::error::{Error, Result};
use crate::Weight;

/// A simple undirected graph. Edges are stored as unordered pairs with the
/// smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build a graph, rejecting self-loops, duplicate pairs, and endpoints
    /// outside `0..vertex_count`.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { line: 0, v: u + 1 });
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::IdOutOfRange {
                    line: 0,
                    id: (u.max(v) + 1) as i64,
                    n: vertex_count,
                });
            }
            let pair = (u.min(v), u.max(v));
            if !seen.insert(pair) {
                return Err(Error::DuplicateEdge {
                    line: 0,
                    u: pair.0 + 1,
                    v: pair.1 + 1,
                });
            }
            normalized.push(pair);
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge index of the pair `{u, v}` if present.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let pair = (u.min(v), u.max(v));
        self.edges.iter().position(|&p| p == pair)
    }

    /// Incident edge indices per vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![vec![]; self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push(i);
            adj[v].push(i);
        }
        adj
    }

    /// BFS two-coloring. Returns `Some(colors)` iff the graph has no odd
    /// cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let adj = self.adjacency();
        let mut color = vec![u8::MAX; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.vertex_count {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &e in &adj[u] {
                    let (a, b) = self.edges[e];
                    let w = if a == u { b } else { a };
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// A set of edge indices with no two members sharing a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edge_indices: Vec<usize>,
}

impl Matching {
    /// Build a matching from edge indices; checks pairwise disjointness and
    /// index bounds against `g`.
    pub fn new(g: &Graph, mut edge_indices: Vec<usize>) -> Result<Self> {
        edge_indices.sort_unstable();
        edge_indices.dedup();
        let mut covered = vec![false; g.vertex_count()];
        for &e in &edge_indices {
            if e >= g.edge_count() {
                return Err(Error::EdgeIndexOutOfRange(e, g.edge_count()));
            }
            let (u, v) = g.endpoints(e);
            if covered[u] || covered[v] {
                return Err(Error::NotSimple);
            }
            covered[u] = true;
            covered[v] = true;
        }
        Ok(Matching { edge_indices })
    }

    pub fn empty() -> Self {
        Matching {
            edge_indices: vec![],
        }
    }

    /// Sorted edge indices.
    pub fn edges(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edge_indices.binary_search(&e).is_ok()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        2 * self.edge_indices.len() == g.vertex_count()
    }

    pub fn weight(&self, weights: &[Weight]) -> Weight {
        self.edge_indices.iter().map(|&e| weights[e]).sum()
    }

    /// Symmetric difference with a set of edges, as a new edge set. The
    /// result is a matching only when the difference consists of alternating
    /// cycles; the caller validates.
    pub fn symmetric_difference(&self, other: &[usize]) -> Vec<usize> {
        let mut set: std::collections::BTreeSet<usize> = self.edge_indices.iter().copied().collect();
        for &e in other {
            if !set.remove(&e) {
                set.insert(e);
            }
        }
        set.into_iter().collect()
    }
}

/// One simple cycle, as a cyclically ordered edge-index sequence tracing a
/// closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    edges: Vec<usize>,
}

impl Cycle {
    /// Build a cycle and check it is a simple closed walk in `g`.
    pub fn new(g: &Graph, edges: Vec<usize>) -> Result<Self> {
        let c = Cycle { edges };
        c.check_simple(g)?;
        Ok(c)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self, weights: &[Weight]) -> Weight {
        self.edges.iter().map(|&e| weights[e]).sum()
    }

    /// Vertices visited, in traversal order starting from the shared vertex
    /// of the last and first edge.
    pub fn vertices(&self, g: &Graph) -> Result<Vec<usize>> {
        if self.edges.len() < 3 {
            return Err(Error::NotSimpleCycle);
        }
        let first = g.endpoints(self.edges[0]);
        let second = g.endpoints(self.edges[1]);
        // Start at the endpoint of edge 0 not shared with edge 1.
        let shared = if first.0 == second.0 || first.0 == second.1 {
            first.0
        } else if first.1 == second.0 || first.1 == second.1 {
            first.1
        } else {
            return Err(Error::NotSimpleCycle);
        };
        let mut cur = if shared == first.0 { first.1 } else { first.0 };
        let mut verts = Vec::with_capacity(self.edges.len());
        for &e in &self.edges {
            let (a, b) = g.endpoints(e);
            let next = if a == cur {
                b
            } else if b == cur {
                a
            } else {
                return Err(Error::NotSimpleCycle);
            };
            verts.push(cur);
            cur = next;
        }
        if cur != verts[0] {
            return Err(Error::NotSimpleCycle);
        }
        Ok(verts)
    }

    fn check_simple(&self, g: &Graph) -> Result<()> {
        let verts = self.vertices(g)?;
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(Error::NotSimpleCycle);
        }
        Ok(())
    }

    /// Canonical form: rotation/reflection-independent vertex sequence
    /// (smallest vertex first, smaller neighbour second).
    pub fn canonical_vertices(&self, g: &Graph) -> Result<Vec<usize>> {
        let verts = self.vertices(g)?;
        let n = verts.len();
        let start = (0..n).min_by_key(|&i| verts[i]).unwrap();
        let fwd: Vec<usize> = (0..n).map(|i| verts[(start + i) % n]).collect();
        let bwd: Vec<usize> = (0..n).map(|i| verts[(start + n - i) % n]).collect();
        Ok(if fwd <= bwd { fwd } else { bwd })
    }
}

/// A collection of pairwise vertex-disjoint simple cycles. The empty
/// collection is valid and has weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CycleSet {
    cycles: Vec<Cycle>,
}

impl CycleSet {
    /// Build a cycle set, checking each cycle and pairwise disjointness.
    pub fn new(g: &Graph, cycles: Vec<Cycle>) -> Result<Self> {
        let mut covered = vec![false; g.vertex_count()];
        for c in &cycles {
            for v in c.vertices(g)? {
                if covered[v] {
                    return Err(Error::NotDisjoint);
                }
                covered[v] = true;
            }
        }
        Ok(CycleSet { cycles })
    }

    pub fn empty() -> Self {
        CycleSet::default()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn weight(&self, weights: &[Weight]) -> Weight {
        self.cycles.iter().map(|c| c.weight(weights)).sum()
    }

    /// All member edge indices, flattened.
    pub fn all_edges(&self) -> Vec<usize> {
        self.cycles.iter().flat_map(|c| c.edges().iter().copied()).collect()
    }
}
