//! Weight-preserving reductions between the matching problems (EWPM, BCPM)
//! and the conservative-weight cycle problems (ECS, SOC), plus solution
//! translation in both directions.
//!
//! Matching → cycle goes through a weight transform around a minimum-weight
//! perfect matching M: matched edges get `-w(e) - r - 1`, unmatched edges
//! `w(e) + r + 1`, with `r` set to the target. Cycle sets of the transformed
//! weight correspond to M-alternating symmetric differences, so a certifying
//! cycle set lifts back to a matching by M Δ C₁ Δ … Δ C_p.
//!
//! Cycle → matching replaces every vertex by a matched pair and every edge
//! by a four-vertex widget whose middle edge carries the original weight;
//! perfect matchings of the widget graph deviate from a canonical weight-0
//! matching exactly along images of vertex-disjoint source cycles.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Cycle, CycleSet, Graph, Matching};
use crate::instance::{ProblemKind, WeightedInstance};
use crate::pm::{min_weight_pm, PmResult};
use crate::Weight;

/// Translation data for the matching → cycle direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingContext {
    /// Minimum-weight perfect matching of the (shifted) source instance.
    pub base_matching: Matching,
    /// Its weight under the shifted weights.
    pub base_weight: Weight,
    /// The transform parameter; equals the shifted target.
    pub r: Weight,
    /// Amount added to every source weight to make them non-negative.
    pub shift: Weight,
}

/// Gadget coordinates of one source edge {u, v}: the four widget vertices
/// in path order u-side to v-side, and the index of the middle gadget edge
/// that carries the source weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub e_u: usize,
    pub e_uv: usize,
    pub e_vu: usize,
    pub e_v: usize,
    pub middle_edge: usize,
}

/// Translation data for the cycle → matching direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetContext {
    /// The weight-0 perfect matching of the gadget graph: every vertex pair
    /// edge plus the two inner widget edges of every source edge.
    pub canonical_matching: Matching,
    /// Source vertex v → its gadget pair (v₁, v₂).
    pub vertex_map: Vec<(usize, usize)>,
    /// Source edge index → its widget.
    pub edge_map: Vec<EdgeGadget>,
}

/// Either context, as stored in a sidecar file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionContext {
    Alternating(AlternatingContext),
    Gadget(GadgetContext),
}

/// Outcome of a matching → cycle reduction. Instances that the minimum
/// matching already decides come back resolved, carrying a canonical
/// instance of the target kind with the same answer so pipelines can still
/// emit a well-formed file.
#[derive(Clone, Debug)]
pub enum MatchingReduction {
    Reduced {
        inst: WeightedInstance,
        ctx: AlternatingContext,
    },
    ResolvedYes { canonical: WeightedInstance },
    ResolvedNo { canonical: WeightedInstance },
}

/// Smallest unambiguous NO instance of a cycle kind: one vertex, no edges,
/// target 1. No cycle set has weight 1.
pub fn canonical_no_instance(kind: ProblemKind) -> WeightedInstance {
    let g = Graph::new(1, vec![]).expect("trivial graph");
    WeightedInstance::new(g, vec![], kind, 1, None).expect("canonical NO instance")
}

/// Smallest unambiguous YES instance of a cycle kind: a unit triangle with
/// target 3.
pub fn canonical_yes_instance(kind: ProblemKind) -> WeightedInstance {
    let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("triangle");
    WeightedInstance::new(g, vec![1, 1, 1], kind, 3, None).expect("canonical YES instance")
}

/// Shift all weights to be non-negative, moving the target along: every
/// perfect matching weight moves by `shift * n/2`.
fn normalize_nonneg(inst: &WeightedInstance) -> Result<(Vec<Weight>, Weight, Weight)> {
    let min = inst.weights.iter().copied().min().unwrap_or(0);
    let shift = if min < 0 { -min } else { 0 };
    let w = inst.weights.iter().map(|&x| x + shift).collect();
    let pairs = (inst.graph.vertex_count() / 2) as Weight;
    let k = shift
        .checked_mul(pairs)
        .and_then(|d| inst.target_k.checked_add(d))
        .ok_or(Error::TransformOverflow)?;
    Ok((w, k, shift))
}

fn transformed_weights(
    weights: &[Weight],
    m: &Matching,
    r: Weight,
) -> Result<Vec<Weight>> {
    weights
        .iter()
        .enumerate()
        .map(|(e, &w)| {
            let bumped = w.checked_add(r).and_then(|x| x.checked_add(1));
            let out = if m.contains(e) {
                bumped.and_then(Weight::checked_neg)
            } else {
                bumped
            };
            out.ok_or(Error::TransformOverflow)
        })
        .collect()
}

/// Reduce an exact-weight perfect matching instance to an exact-weight
/// cycle-set instance on the same graph.
pub fn reduce_ewpm_to_ecs(inst: &WeightedInstance) -> Result<MatchingReduction> {
    let (w, k, shift) = normalize_nonneg(inst)?;
    let Some(m) = min_weight_pm(&inst.graph, &w) else {
        return Ok(MatchingReduction::ResolvedNo {
            canonical: canonical_no_instance(ProblemKind::Ecs),
        });
    };
    if m.weight > k {
        return Ok(MatchingReduction::ResolvedNo {
            canonical: canonical_no_instance(ProblemKind::Ecs),
        });
    }
    let r = k;
    let w2 = transformed_weights(&w, &m.matching, r)?;
    let out = WeightedInstance::new(inst.graph.clone(), w2, ProblemKind::Ecs, k - m.weight, None)?;
    Ok(MatchingReduction::Reduced {
        inst: out,
        ctx: AlternatingContext {
            base_matching: m.matching,
            base_weight: m.weight,
            r,
            shift,
        },
    })
}

/// Reduce a bounded-correct-parity matching instance to a short-odd-cycle
/// instance. When the minimum matching weight already has the target's
/// parity the answer is immediate.
pub fn reduce_bcpm_to_soc(inst: &WeightedInstance) -> Result<MatchingReduction> {
    let (w, k, shift) = normalize_nonneg(inst)?;
    let resolved_no = || MatchingReduction::ResolvedNo {
        canonical: canonical_no_instance(ProblemKind::Soc),
    };
    let Some(m) = min_weight_pm(&inst.graph, &w) else {
        return Ok(resolved_no());
    };
    if m.weight > k {
        return Ok(resolved_no());
    }
    if (m.weight - k) % 2 == 0 {
        return Ok(MatchingReduction::ResolvedYes {
            canonical: canonical_yes_instance(ProblemKind::Soc),
        });
    }
    let r = k;
    let w2 = transformed_weights(&w, &m.matching, r)?;
    let out = WeightedInstance::new(inst.graph.clone(), w2, ProblemKind::Soc, k - m.weight, None)?;
    Ok(MatchingReduction::Reduced {
        inst: out,
        ctx: AlternatingContext {
            base_matching: m.matching,
            base_weight: m.weight,
            r,
            shift,
        },
    })
}

/// Translate a certifying cycle set back to a perfect matching of the
/// source instance: M Δ C₁ Δ … Δ C_p, weighed under the original weights.
/// Every cycle must alternate with respect to the base matching.
pub fn lift_cycles_to_matching(
    source: &WeightedInstance,
    cycles: &CycleSet,
    ctx: &AlternatingContext,
) -> Result<PmResult> {
    for c in cycles.cycles() {
        let edges = c.edges();
        if edges.len() % 2 != 0 {
            return Err(Error::NotAlternating);
        }
        for i in 0..edges.len() {
            let here = ctx.base_matching.contains(edges[i]);
            let next = ctx.base_matching.contains(edges[(i + 1) % edges.len()]);
            if here == next {
                return Err(Error::NotAlternating);
            }
        }
    }
    let diff = ctx.base_matching.symmetric_difference(&cycles.all_edges());
    let matching = Matching::new(&source.graph, diff)?;
    if !matching.is_perfect(&source.graph) {
        return Err(Error::NotPerfect);
    }
    let weight = matching.weight(&source.weights);
    Ok(PmResult { matching, weight })
}

/// Build the widget graph for a cycle → matching reduction. Vertex v maps
/// to the pair (2v, 2v+1); source edge j gets four vertices starting at
/// 2n + 4j. Only the middle edge of each widget carries weight.
pub fn build_gadget(g: &Graph, weights: &[Weight]) -> (Graph, Vec<Weight>, GadgetContext) {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut edges = Vec::with_capacity(n + 7 * m);
    let mut w2 = Vec::with_capacity(n + 7 * m);
    let mut canonical = Vec::with_capacity(n + 2 * m);
    let vertex_map: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    for v in 0..n {
        canonical.push(edges.len());
        edges.push((2 * v, 2 * v + 1));
        w2.push(0);
    }
    let mut edge_map = Vec::with_capacity(m);
    for j in 0..m {
        let (u, v) = g.endpoints(j);
        let base = 2 * n + 4 * j;
        let (e_u, e_uv, e_vu, e_v) = (base, base + 1, base + 2, base + 3);
        let widget = [
            (2 * u, e_u),
            (2 * u + 1, e_u),
            (e_u, e_uv),
            (e_uv, e_vu),
            (e_vu, e_v),
            (e_v, 2 * v),
            (e_v, 2 * v + 1),
        ];
        let first = edges.len();
        canonical.push(first + 2);
        canonical.push(first + 4);
        let middle_edge = first + 3;
        for (i, pair) in widget.into_iter().enumerate() {
            edges.push(pair);
            w2.push(if i == 3 { weights[j] } else { 0 });
        }
        edge_map.push(EdgeGadget {
            e_u,
            e_uv,
            e_vu,
            e_v,
            middle_edge,
        });
    }
    let gadget = Graph::new(2 * n + 4 * m, edges).expect("widget graph is simple");
    let canonical_matching =
        Matching::new(&gadget, canonical).expect("canonical widget matching");
    (
        gadget,
        w2,
        GadgetContext {
            canonical_matching,
            vertex_map,
            edge_map,
        },
    )
}

/// Reduce an exact-weight cycle-set instance to an exact-weight perfect
/// matching instance on the widget graph; the target is unchanged.
pub fn reduce_ecs_to_ewpm(inst: &WeightedInstance) -> Result<(WeightedInstance, GadgetContext)> {
    let (g, w, ctx) = build_gadget(&inst.graph, &inst.weights);
    let out = WeightedInstance::new(g, w, ProblemKind::Ewpm, inst.target_k, None)?;
    Ok((out, ctx))
}

/// Reduce a short-odd-cycle instance to a bounded-correct-parity matching
/// instance on the widget graph. An even target drops to the next odd
/// value first: an odd weight is at most k iff it is at most k − 1.
pub fn reduce_soc_to_bcpm(inst: &WeightedInstance) -> Result<(WeightedInstance, GadgetContext)> {
    let k = if inst.target_k % 2 == 0 {
        inst.target_k.checked_sub(1).ok_or(Error::TransformOverflow)?
    } else {
        inst.target_k
    };
    let (g, w, ctx) = build_gadget(&inst.graph, &inst.weights);
    let out = WeightedInstance::new(g, w, ProblemKind::Bcpm, k, None)?;
    Ok((out, ctx))
}

/// Translate a perfect matching of the widget graph back to a cycle set of
/// the source instance: a source edge belongs to the certificate iff its
/// middle widget edge is matched.
pub fn project_matching_to_cycles(
    source: &WeightedInstance,
    gadget_graph: &Graph,
    m_star: &Matching,
    ctx: &GadgetContext,
) -> Result<CycleSet> {
    if !m_star.is_perfect(gadget_graph) {
        return Err(Error::NotPerfect);
    }
    let g = &source.graph;
    let selected: Vec<usize> = (0..g.edge_count())
        .filter(|&j| m_star.contains(ctx.edge_map[j].middle_edge))
        .collect();
    // The selected edges of a genuine widget matching touch every source
    // vertex 0 or 2 times; decompose into cycles by walking.
    let mut incident: Vec<Vec<usize>> = vec![vec![]; g.vertex_count()];
    for &j in &selected {
        let (u, v) = g.endpoints(j);
        incident[u].push(j);
        incident[v].push(j);
    }
    if incident.iter().any(|d| d.len() != 0 && d.len() != 2) {
        return Err(Error::BadContext(
            "selected middle edges do not decompose into cycles".into(),
        ));
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = vec![];
    for start in 0..g.vertex_count() {
        if incident[start].is_empty() || incident[start].iter().all(|&j| used[j]) {
            continue;
        }
        let mut seq = vec![];
        let mut cur = start;
        loop {
            let Some(&j) = incident[cur].iter().find(|&&j| !used[j]) else {
                break;
            };
            used[j] = true;
            seq.push(j);
            let (a, b) = g.endpoints(j);
            cur = if a == cur { b } else { a };
        }
        cycles.push(Cycle::new(g, seq)?);
    }
    CycleSet::new(g, cycles)
}

/// Weights are conservative iff no cycle set — hence no single cycle — has
/// negative total weight, iff the minimum widget-graph matching weight is
/// not negative (the canonical matching pins it at ≤ 0).
pub fn is_conservative(g: &Graph, weights: &[Weight]) -> bool {
    let (gadget, w, _) = build_gadget(g, weights);
    match min_weight_pm(&gadget, &w) {
        Some(r) => r.weight >= 0,
        None => true,
    }
}

/// Split every even-weight edge into a two-edge path with odd weights
/// (1, w − 1) through a fresh vertex. Cycle weights are unchanged and a
/// cycle has odd weight iff it has odd length afterwards.
pub fn soc_odd_weight_to_odd_length(inst: &WeightedInstance) -> Result<WeightedInstance> {
    let g = &inst.graph;
    let mut next = g.vertex_count();
    let mut edges = vec![];
    let mut w2 = vec![];
    for (j, &w) in inst.weights.iter().enumerate() {
        let (u, v) = g.endpoints(j);
        if w.rem_euclid(2) == 1 {
            edges.push((u, v));
            w2.push(w);
        } else {
            let x = next;
            next += 1;
            edges.push((u, x));
            w2.push(1);
            edges.push((x, v));
            w2.push(w.checked_sub(1).ok_or(Error::TransformOverflow)?);
        }
    }
    WeightedInstance::new(
        Graph::new(next, edges)?,
        w2,
        ProblemKind::Soc,
        inst.target_k,
        None,
    )
}

/// Encode parity of length into parity of weight: every weight w becomes
/// 2|V|w + 1 and the target k becomes 2|V|k + |V|. A cycle of length t and
/// old weight W gets weight 2|V|W + t, which is odd iff t is; any simple
/// cycle has t ≤ |V|, so old odd-length cycles of weight ≤ k land at or
/// below the new target.
pub fn soc_odd_length_to_odd_weight(inst: &WeightedInstance) -> Result<WeightedInstance> {
    let n = inst.graph.vertex_count() as Weight;
    let scale = 2 * n;
    let w2: Vec<Weight> = inst
        .weights
        .iter()
        .map(|&w| {
            w.checked_mul(scale)
                .and_then(|x| x.checked_add(1))
                .ok_or(Error::TransformOverflow)
        })
        .collect::<Result<_>>()?;
    let k = inst
        .target_k
        .checked_mul(scale)
        .and_then(|x| x.checked_add(n))
        .ok_or(Error::TransformOverflow)?;
    WeightedInstance::new(inst.graph.clone(), w2, ProblemKind::Soc, k, None)
}

impl AlternatingContext {
    /// Sidecar text; `source` is the graph the base matching lives in.
    pub fn serialize(&self, source: &Graph) -> String {
        let mut out = String::new();
        for &e in self.base_matching.edges() {
            let (u, v) = source.endpoints(e);
            writeln!(out, "base m {} {}", u + 1, v + 1).unwrap();
        }
        writeln!(out, "param r {}", self.r).unwrap();
        writeln!(out, "param basew {}", self.base_weight).unwrap();
        writeln!(out, "param shift {}", self.shift).unwrap();
        out
    }
}

impl GadgetContext {
    /// Sidecar text; base lines are gadget-graph edges, map lines use
    /// source ids on the left and gadget ids on the right.
    pub fn serialize(&self, source: &Graph, gadget: &Graph) -> String {
        let mut out = String::new();
        for &e in self.canonical_matching.edges() {
            let (u, v) = gadget.endpoints(e);
            writeln!(out, "base m {} {}", u + 1, v + 1).unwrap();
        }
        for (v, &(v1, v2)) in self.vertex_map.iter().enumerate() {
            writeln!(out, "vmap {} {} {}", v + 1, v1 + 1, v2 + 1).unwrap();
        }
        for (j, w) in self.edge_map.iter().enumerate() {
            let (u, v) = source.endpoints(j);
            writeln!(
                out,
                "emap {} {} {} {} {} {}",
                u + 1,
                v + 1,
                w.e_u + 1,
                w.e_uv + 1,
                w.e_vu + 1,
                w.e_v + 1
            )
            .unwrap();
        }
        out
    }
}

/// A parsed but unresolved sidecar: ids are still 1-based and edges are
/// endpoint pairs, as in the file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawContext {
    pub base_pairs: Vec<(usize, usize)>,
    pub vmap: Vec<(usize, usize, usize)>,
    pub emap: Vec<(usize, usize, [usize; 4])>,
    pub r: Option<Weight>,
    pub basew: Option<Weight>,
    pub shift: Option<Weight>,
}

impl RawContext {
    pub fn parse(text: &str) -> Result<RawContext> {
        let mut raw = RawContext::default();
        for (i, line) in text.lines().enumerate() {
            let bad = |msg: &str| Error::Malformed {
                line: i + 1,
                msg: msg.into(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] | ["c", ..] => {}
                ["base", "m", u, v] => {
                    let u: usize = u.parse().map_err(|_| bad("bad vertex id"))?;
                    let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
                    raw.base_pairs.push((u, v));
                }
                ["vmap", v, v1, v2] => {
                    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad("bad vertex id"));
                    raw.vmap.push((parse(v)?, parse(v1)?, parse(v2)?));
                }
                ["emap", u, v, a, b, c, d] => {
                    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad("bad vertex id"));
                    raw.emap.push((
                        parse(u)?,
                        parse(v)?,
                        [parse(a)?, parse(b)?, parse(c)?, parse(d)?],
                    ));
                }
                ["param", name, value] => {
                    let value: Weight = value.parse().map_err(|_| bad("bad parameter value"))?;
                    let slot = match *name {
                        "r" => &mut raw.r,
                        "basew" => &mut raw.basew,
                        "shift" => &mut raw.shift,
                        _ => return Err(bad("unknown parameter")),
                    };
                    *slot = Some(value);
                }
                _ => return Err(bad("unrecognized context line")),
            }
        }
        Ok(raw)
    }

    /// Re-emit in canonical order; for files produced by the serializers
    /// this reproduces the input byte for byte.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.base_pairs {
            writeln!(out, "base m {} {}", u, v).unwrap();
        }
        for &(v, v1, v2) in &self.vmap {
            writeln!(out, "vmap {} {} {}", v, v1, v2).unwrap();
        }
        for &(u, v, [a, b, c, d]) in &self.emap {
            writeln!(out, "emap {} {} {} {} {} {}", u, v, a, b, c, d).unwrap();
        }
        if let Some(r) = self.r {
            writeln!(out, "param r {}", r).unwrap();
        }
        if let Some(w) = self.basew {
            writeln!(out, "param basew {}", w).unwrap();
        }
        if let Some(s) = self.shift {
            writeln!(out, "param shift {}", s).unwrap();
        }
        out
    }

    pub fn is_gadget(&self) -> bool {
        !self.vmap.is_empty() || !self.emap.is_empty()
    }

    fn resolve_matching(&self, g: &Graph) -> Result<Matching> {
        let mut indices = Vec::with_capacity(self.base_pairs.len());
        for &(u, v) in &self.base_pairs {
            if u == 0 || v == 0 || u > g.vertex_count() || v > g.vertex_count() {
                return Err(Error::BadContext(format!(
                    "base edge {{{u}, {v}}} out of range"
                )));
            }
            let e = g.find_edge(u - 1, v - 1).ok_or_else(|| {
                Error::BadContext(format!("base edge {{{u}, {v}}} not in graph"))
            })?;
            indices.push(e);
        }
        Matching::new(g, indices)
            .map_err(|e| Error::BadContext(format!("base edges are not a matching: {e}")))
    }

    /// Resolve as a matching → cycle context over the source graph.
    pub fn resolve_alternating(&self, source: &Graph) -> Result<AlternatingContext> {
        if self.is_gadget() {
            return Err(Error::BadContext("expected a weight-transform context".into()));
        }
        let (r, basew, shift) = match (self.r, self.basew, self.shift) {
            (Some(r), Some(b), Some(s)) => (r, b, s),
            _ => return Err(Error::BadContext("missing parameter line".into())),
        };
        Ok(AlternatingContext {
            base_matching: self.resolve_matching(source)?,
            base_weight: basew,
            r,
            shift,
        })
    }

    /// Resolve as a cycle → matching context. Needs both graphs: the base
    /// matching lives in the gadget graph, the maps reference the source.
    pub fn resolve_gadget(&self, source: &Graph, gadget: &Graph) -> Result<GadgetContext> {
        if !self.is_gadget() {
            return Err(Error::BadContext("expected a widget-graph context".into()));
        }
        if self.vmap.len() != source.vertex_count() || self.emap.len() != source.edge_count() {
            return Err(Error::BadContext("map lines do not cover the source graph".into()));
        }
        let mut vertex_map = vec![(0, 0); source.vertex_count()];
        for &(v, v1, v2) in &self.vmap {
            if v == 0 || v > source.vertex_count() || v1 == 0 || v2 == 0 {
                return Err(Error::BadContext(format!("bad vmap line for vertex {v}")));
            }
            vertex_map[v - 1] = (v1 - 1, v2 - 1);
        }
        let mut edge_map = vec![None; source.edge_count()];
        for &(u, v, [a, b, c, d]) in &self.emap {
            let j = source
                .find_edge(u.wrapping_sub(1), v.wrapping_sub(1))
                .ok_or_else(|| {
                    Error::BadContext(format!("emap edge {{{u}, {v}}} not in source graph"))
                })?;
            if [a, b, c, d].iter().any(|&x| x == 0 || x > gadget.vertex_count()) {
                return Err(Error::BadContext(format!("bad emap ids for {{{u}, {v}}}")));
            }
            let middle_edge = gadget.find_edge(b - 1, c - 1).ok_or_else(|| {
                Error::BadContext(format!("middle widget edge missing for {{{u}, {v}}}"))
            })?;
            edge_map[j] = Some(EdgeGadget {
                e_u: a - 1,
                e_uv: b - 1,
                e_vu: c - 1,
                e_v: d - 1,
                middle_edge,
            });
        }
        let edge_map = edge_map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadContext("emap misses a source edge".into()))?;
        Ok(GadgetContext {
            canonical_matching: self.resolve_matching(gadget)?,
            vertex_map,
            edge_map,
        })
    }
}
