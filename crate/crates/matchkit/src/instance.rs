//! Instance and solution file formats.
//!
//! Instance files are line-oriented text:
//! - `c <text>` comment lines
//! - `p <kind> <n> <m> <k>` problem line (first non-comment, exactly one);
//!   kind is one of `ewpm`, `bcpm`, `ecs`, `soc`, or `spm` with an extra
//!   rank field: `p spm <n> <m> <k> <l>`
//! - `e <u> <v> <w>` edge lines, `1 <= u < v <= n`, `w` a signed integer
//!
//! Solution files carry a status line `s yes|no|unknown`, a weight line
//! `w <int>` when yes, and either matching lines `m <u> <v>` or cycle lines
//! `k <v1> <v2> ... <vt>` (closed implicitly).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Cycle, CycleSet, Graph, Matching};
use crate::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Ewpm,
    Bcpm,
    Ecs,
    Soc,
    Spm,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Ewpm => "ewpm",
            ProblemKind::Bcpm => "bcpm",
            ProblemKind::Ecs => "ecs",
            ProblemKind::Soc => "soc",
            ProblemKind::Spm => "spm",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ewpm" => Some(ProblemKind::Ewpm),
            "bcpm" => Some(ProblemKind::Bcpm),
            "ecs" => Some(ProblemKind::Ecs),
            "soc" => Some(ProblemKind::Soc),
            "spm" => Some(ProblemKind::Spm),
            _ => None,
        }
    }

    /// Cycle kinds require conservative weights.
    pub fn is_cycle_kind(self) -> bool {
        matches!(self, ProblemKind::Ecs | ProblemKind::Soc)
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A problem instance: graph, per-edge weights, problem kind, target value
/// `k`, and the rank `l` for SPM instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedInstance {
    pub graph: Graph,
    pub weights: Vec<Weight>,
    pub kind: ProblemKind,
    pub target_k: Weight,
    pub rank_l: Option<u32>,
}

impl WeightedInstance {
    pub fn new(
        graph: Graph,
        weights: Vec<Weight>,
        kind: ProblemKind,
        target_k: Weight,
        rank_l: Option<u32>,
    ) -> Result<Self> {
        let inst = WeightedInstance {
            graph,
            weights,
            kind,
            target_k,
            rank_l,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Check all invariants: structural validity, weight list length, the
    /// overflow headroom needed by the reductions, the rank field for SPM,
    /// and conservativeness for cycle kinds.
    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.graph.edge_count() {
            return Err(Error::Malformed {
                line: 0,
                msg: format!(
                    "{} weights for {} edges",
                    self.weights.len(),
                    self.graph.edge_count()
                ),
            });
        }
        if self.kind == ProblemKind::Spm {
            match self.rank_l {
                None | Some(0) => return Err(Error::MissingRank),
                Some(_) => {}
            }
        }
        for (i, &w) in self.weights.iter().enumerate() {
            check_weight_headroom(w, self.target_k, self.graph.vertex_count()).map_err(|_| {
                Error::WeightOverflow {
                    line: i + 1,
                    w: w as i128,
                }
            })?;
        }
        if self.kind.is_cycle_kind()
            && !crate::reductions::is_conservative(&self.graph, &self.weights)
        {
            return Err(Error::NotConservative(self.kind.as_str().to_string()));
        }
        Ok(())
    }
}

/// Reject weights whose reduction transforms (`|w| + |k| + 1` for the
/// alternating-weight transform, `2|V| w + 1` for the odd-length transform)
/// would leave the 64-bit signed range.
pub(crate) fn check_weight_headroom(w: Weight, k: Weight, n: usize) -> Result<()> {
    let w = w as i128;
    let k = k as i128;
    let n = n as i128;
    let alt = w.abs() + k.abs() + 1;
    let odd = 2 * n * w.abs() + n.max(1);
    if alt > i64::MAX as i128 || odd > i64::MAX as i128 {
        return Err(Error::WeightOverflow { line: 0, w });
    }
    Ok(())
}

/// Parse an instance from its textual form.
pub fn parse_instance(text: &str) -> Result<WeightedInstance> {
    let mut problem: Option<(ProblemKind, usize, usize, Weight, Option<u32>)> = None;
    let mut edges: Vec<(usize, usize)> = vec![];
    let mut weights: Vec<Weight> = vec![];
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if problem.is_some() {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: "second problem line".into(),
                    });
                }
                let kind = fields
                    .get(1)
                    .and_then(|s| ProblemKind::parse(s))
                    .ok_or_else(|| Error::Malformed {
                        line: lineno,
                        msg: "unknown problem kind".into(),
                    })?;
                let expect = if kind == ProblemKind::Spm { 6 } else { 5 };
                if fields.len() != expect {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: format!("problem line needs {expect} fields"),
                    });
                }
                let n: usize = parse_field(fields[2], lineno)?;
                let m: usize = parse_field(fields[3], lineno)?;
                let k: Weight = parse_field(fields[4], lineno)?;
                let l = if kind == ProblemKind::Spm {
                    let l: u32 = parse_field(fields[5], lineno)?;
                    if l == 0 {
                        return Err(Error::MissingRank);
                    }
                    Some(l)
                } else {
                    None
                };
                problem = Some((kind, n, m, k, l));
            }
            "e" => {
                let (_, n, _, k, _) = problem.ok_or(Error::MissingProblemLine)?;
                if fields.len() != 4 {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: "edge line needs 4 fields".into(),
                    });
                }
                let u: i64 = parse_field(fields[1], lineno)?;
                let v: i64 = parse_field(fields[2], lineno)?;
                let w: Weight = parse_field(fields[3], lineno)?;
                if u == v {
                    return Err(Error::SelfLoop {
                        line: lineno,
                        v: u as usize,
                    });
                }
                for id in [u, v] {
                    if id < 1 || id > n as i64 {
                        return Err(Error::IdOutOfRange {
                            line: lineno,
                            id,
                            n,
                        });
                    }
                }
                let pair = ((u.min(v) - 1) as usize, (u.max(v) - 1) as usize);
                if !seen.insert(pair) {
                    return Err(Error::DuplicateEdge {
                        line: lineno,
                        u: pair.0 + 1,
                        v: pair.1 + 1,
                    });
                }
                check_weight_headroom(w, k, n).map_err(|_| Error::WeightOverflow {
                    line: lineno,
                    w: w as i128,
                })?;
                edges.push(pair);
                weights.push(w);
            }
            _ => {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: format!("unknown line type '{}'", fields[0]),
                })
            }
        }
    }

    let (kind, n, m, k, l) = problem.ok_or(Error::MissingProblemLine)?;
    if edges.len() != m {
        return Err(Error::Malformed {
            line: 0,
            msg: format!("problem line declares {m} edges, file has {}", edges.len()),
        });
    }
    let graph = Graph::new(n, edges)?;
    WeightedInstance::new(graph, weights, kind, k, l)
}

fn parse_field<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Malformed {
        line,
        msg: format!("cannot parse '{s}'"),
    })
}

/// Serialize an instance. `parse_instance(serialize_instance(i))` is the
/// identity on valid instances, including edge order.
pub fn serialize_instance(inst: &WeightedInstance) -> String {
    let mut out = String::new();
    let n = inst.graph.vertex_count();
    let m = inst.graph.edge_count();
    match inst.rank_l {
        Some(l) if inst.kind == ProblemKind::Spm => {
            writeln!(out, "p spm {n} {m} {} {l}", inst.target_k).unwrap();
        }
        _ => {
            writeln!(out, "p {} {n} {m} {}", inst.kind, inst.target_k).unwrap();
        }
    }
    for (i, &(u, v)) in inst.graph.edges().iter().enumerate() {
        writeln!(out, "e {} {} {}", u + 1, v + 1, inst.weights[i]).unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
        }
    }
}

/// A certificate carried by a YES solution: a matching (endpoint pairs) or a
/// set of cycles (vertex sequences), both 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    None,
    MatchingEdges(Vec<(usize, usize)>),
    CycleVertices(Vec<Vec<usize>>),
}

/// A parsed solution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    pub weight: Option<Weight>,
    pub certificate: Certificate,
}

impl Solution {
    pub fn no() -> Self {
        Solution {
            status: Status::No,
            weight: None,
            certificate: Certificate::None,
        }
    }

    pub fn unknown() -> Self {
        Solution {
            status: Status::Unknown,
            weight: None,
            certificate: Certificate::None,
        }
    }

    pub fn yes_matching(g: &Graph, m: &Matching, weight: Weight) -> Self {
        Solution {
            status: Status::Yes,
            weight: Some(weight),
            certificate: Certificate::MatchingEdges(
                m.edges().iter().map(|&e| g.endpoints(e)).collect(),
            ),
        }
    }

    pub fn yes_cycles(g: &Graph, cs: &CycleSet, weight: Weight) -> Result<Self> {
        let mut cycles = vec![];
        for c in cs.cycles() {
            cycles.push(c.vertices(g)?);
        }
        Ok(Solution {
            status: Status::Yes,
            weight: Some(weight),
            certificate: Certificate::CycleVertices(cycles),
        })
    }

    /// Resolve a matching certificate against a graph.
    pub fn matching(&self, g: &Graph) -> Result<Matching> {
        let Certificate::MatchingEdges(pairs) = &self.certificate else {
            return Err(Error::SolutionMismatch("no matching certificate".into()));
        };
        let mut idx = vec![];
        for &(u, v) in pairs {
            let e = g.find_edge(u, v).ok_or_else(|| {
                Error::SolutionMismatch(format!("edge {{{}, {}}} not in graph", u + 1, v + 1))
            })?;
            idx.push(e);
        }
        Matching::new(g, idx)
    }

    /// Resolve a cycle certificate against a graph. An absent certificate
    /// is the empty cycle set: it serializes to no lines at all.
    pub fn cycle_set(&self, g: &Graph) -> Result<CycleSet> {
        let cycles = match &self.certificate {
            Certificate::CycleVertices(cycles) => cycles,
            Certificate::None => return Ok(CycleSet::empty()),
            Certificate::MatchingEdges(_) => {
                return Err(Error::SolutionMismatch("no cycle certificate".into()))
            }
        };
        let mut out = vec![];
        for verts in cycles {
            let mut edges = vec![];
            for i in 0..verts.len() {
                let u = verts[i];
                let v = verts[(i + 1) % verts.len()];
                let e = g.find_edge(u, v).ok_or_else(|| {
                    Error::SolutionMismatch(format!("edge {{{}, {}}} not in graph", u + 1, v + 1))
                })?;
                edges.push(e);
            }
            out.push(Cycle::new(g, edges)?);
        }
        CycleSet::new(g, out)
    }
}

pub fn serialize_solution(sol: &Solution) -> String {
    let mut out = String::new();
    writeln!(out, "s {}", sol.status.as_str()).unwrap();
    if let Some(w) = sol.weight {
        writeln!(out, "w {w}").unwrap();
    }
    match &sol.certificate {
        Certificate::None => {}
        Certificate::MatchingEdges(pairs) => {
            for &(u, v) in pairs {
                writeln!(out, "m {} {}", u + 1, v + 1).unwrap();
            }
        }
        Certificate::CycleVertices(cycles) => {
            for c in cycles {
                let verts: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(out, "k {}", verts.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut status = None;
    let mut weight = None;
    let mut matching: Vec<(usize, usize)> = vec![];
    let mut cycles: Vec<Vec<usize>> = vec![];

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "s" => {
                status = Some(match fields.get(1).copied() {
                    Some("yes") => Status::Yes,
                    Some("no") => Status::No,
                    Some("unknown") => Status::Unknown,
                    _ => {
                        return Err(Error::Malformed {
                            line: lineno,
                            msg: "bad status".into(),
                        })
                    }
                });
            }
            "w" => {
                if fields.len() != 2 {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: "weight line needs 2 fields".into(),
                    });
                }
                weight = Some(parse_field(fields[1], lineno)?);
            }
            "m" => {
                if fields.len() != 3 {
                    return Err(Error::Malformed {
                        line: lineno,
                        msg: "matching line needs 3 fields".into(),
                    });
                }
                let u: usize = parse_field(fields[1], lineno)?;
                let v: usize = parse_field(fields[2], lineno)?;
                if u == 0 || v == 0 {
                    return Err(Error::IdOutOfRange {
                        line: lineno,
                        id: 0,
                        n: 0,
                    });
                }
                matching.push((u - 1, v - 1));
            }
            "k" => {
                let mut verts = vec![];
                for f in &fields[1..] {
                    let v: usize = parse_field(f, lineno)?;
                    if v == 0 {
                        return Err(Error::IdOutOfRange {
                            line: lineno,
                            id: 0,
                            n: 0,
                        });
                    }
                    verts.push(v - 1);
                }
                cycles.push(verts);
            }
            _ => {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: format!("unknown line type '{}'", fields[0]),
                })
            }
        }
    }

    let status = status.ok_or(Error::Malformed {
        line: 0,
        msg: "missing status line".into(),
    })?;
    let certificate = if !matching.is_empty() {
        Certificate::MatchingEdges(matching)
    } else if !cycles.is_empty() {
        Certificate::CycleVertices(cycles)
    } else {
        Certificate::None
    };
    Ok(Solution {
        status,
        weight,
        certificate,
    })
}
