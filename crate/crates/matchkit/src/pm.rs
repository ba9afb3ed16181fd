//! Minimum-weight perfect matching, the forced-edge variant, and the
//! exhaustive perfect-matching oracle.
//!
//! The optimizer drives the blossom engine with negated weights under the
//! maximum-cardinality regime: a maximum-cardinality matching maximizing the
//! negated weight is, when perfect, a minimum-weight perfect matching.
//! Negative weights need no shifting this way.

use crate::blossom::max_weight_matching;
use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};
use crate::Weight;

/// A set of edges forced to be contained in the matching being optimized.
/// Member edges never share a vertex: such a set could not be inside any
/// perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedSet {
    edge_indices: Vec<usize>,
}

impl ForcedSet {
    pub fn new(g: &Graph, mut edge_indices: Vec<usize>) -> Result<Self> {
        edge_indices.sort_unstable();
        edge_indices.dedup();
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for &e in &edge_indices {
            if e >= g.edge_count() {
                return Err(Error::EdgeIndexOutOfRange(e, g.edge_count()));
            }
            let (u, v) = g.endpoints(e);
            for x in [u, v] {
                if owner[x] != usize::MAX {
                    return Err(Error::ForcedSetNotMatching(owner[x], e));
                }
                owner[x] = e;
            }
        }
        Ok(ForcedSet { edge_indices })
    }

    pub fn empty() -> Self {
        ForcedSet {
            edge_indices: vec![],
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }
}

/// A perfect matching together with its total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmResult {
    pub matching: Matching,
    pub weight: Weight,
}

/// Minimum-weight perfect matching, or `None` if the graph has none.
/// Negative weights are allowed. Deterministic: the result is a pure
/// function of the input (ties broken by the blossom engine's fixed scan
/// order).
pub fn min_weight_pm(g: &Graph, weights: &[Weight]) -> Option<PmResult> {
    assert_eq!(weights.len(), g.edge_count());
    let n = g.vertex_count();
    if n % 2 != 0 {
        return None;
    }
    if n == 0 {
        return Some(PmResult {
            matching: Matching::empty(),
            weight: 0,
        });
    }
    let edges: Vec<(usize, usize, Weight)> = g
        .edges()
        .iter()
        .zip(weights)
        .map(|(&(u, v), &w)| (u, v, -w))
        .collect();
    let mate = max_weight_matching(n, &edges, true);
    let mut indices = vec![];
    for v in 0..n {
        match mate[v] {
            Some(u) if v < u => {
                let e = g.find_edge(v, u).expect("mate edge must exist");
                indices.push(e);
            }
            Some(_) => {}
            None => return None,
        }
    }
    let matching = Matching::new(g, indices).expect("blossom output is a matching");
    let weight = matching.weight(weights);
    Some(PmResult { matching, weight })
}

/// Minimum-weight perfect matching containing all edges of `forced`, or
/// `None` if no perfect matching contains them. Implemented by deleting both
/// endpoints of every forced edge (with all incident edges) and adding the
/// forced weight to the sub-result.
pub fn min_weight_pm_forced(g: &Graph, weights: &[Weight], forced: &ForcedSet) -> Option<PmResult> {
    if forced.is_empty() {
        return min_weight_pm(g, weights);
    }
    let n = g.vertex_count();
    let mut removed = vec![false; n];
    let mut forced_weight: Weight = 0;
    for &e in forced.edges() {
        let (u, v) = g.endpoints(e);
        removed[u] = true;
        removed[v] = true;
        forced_weight += weights[e];
    }

    // Renumber the surviving vertices and keep only edges between them.
    let mut remap = vec![usize::MAX; n];
    let mut kept = 0usize;
    for v in 0..n {
        if !removed[v] {
            remap[v] = kept;
            kept += 1;
        }
    }
    let mut sub_edges = vec![];
    let mut sub_weights = vec![];
    let mut back = vec![];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if !removed[u] && !removed[v] {
            sub_edges.push((remap[u], remap[v]));
            sub_weights.push(weights[i]);
            back.push(i);
        }
    }
    let sub = Graph::new(kept, sub_edges).expect("subgraph of a simple graph is simple");
    let sub_result = min_weight_pm(&sub, &sub_weights)?;

    let mut indices: Vec<usize> = forced.edges().to_vec();
    indices.extend(sub_result.matching.edges().iter().map(|&e| back[e]));
    let matching = Matching::new(g, indices).expect("forced and sub-matching are disjoint");
    Some(PmResult {
        weight: forced_weight + sub_result.weight,
        matching,
    })
}

/// Exhaustive oracle: every perfect matching of `g`, in lexicographic order
/// of sorted edge-index sets. Exponential; intended for small graphs.
pub fn enumerate_perfect_matchings(g: &Graph) -> impl Iterator<Item = Matching> {
    let mut results: Vec<Vec<usize>> = vec![];
    let n = g.vertex_count();
    if n % 2 == 0 {
        let adj = g.adjacency();
        let mut covered = vec![false; n];
        let mut chosen = vec![];
        recurse(g, &adj, &mut covered, &mut chosen, &mut results);
    }
    results.sort();
    let g = g.clone();
    results
        .into_iter()
        .map(move |edges| Matching::new(&g, edges).expect("enumerated set is a matching"))
}

fn recurse(
    g: &Graph,
    adj: &[Vec<usize>],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        let mut m = chosen.clone();
        m.sort_unstable();
        out.push(m);
        return;
    };
    for &e in &adj[v] {
        let (a, b) = g.endpoints(e);
        let other = if a == v { b } else { a };
        if covered[other] {
            continue;
        }
        covered[v] = true;
        covered[other] = true;
        chosen.push(e);
        recurse(g, adj, covered, chosen, out);
        chosen.pop();
        covered[v] = false;
        covered[other] = false;
    }
}

/// Certificate check: the weight of `edge_indices` iff it forms a perfect
/// matching of `g`; `None` otherwise. Out-of-range indices are an error.
pub fn verify_perfect_matching(
    g: &Graph,
    weights: &[Weight],
    edge_indices: &[usize],
) -> Result<Option<Weight>> {
    let mut covered = vec![false; g.vertex_count()];
    let mut total: Weight = 0;
    for &e in edge_indices {
        if e >= g.edge_count() {
            return Err(Error::EdgeIndexOutOfRange(e, g.edge_count()));
        }
        let (u, v) = g.endpoints(e);
        if covered[u] || covered[v] {
            return Ok(None);
        }
        covered[u] = true;
        covered[v] = true;
        total += weights[e];
    }
    if covered.iter().all(|&c| c) {
        Ok(Some(total))
    } else {
        Ok(None)
    }
}
