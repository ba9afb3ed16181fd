//! The `l`-th smallest perfect matching engine.
//!
//! A perfect matching of the `l`-th smallest distinct weight is always the
//! minimum-weight perfect matching over some forced edge set of size at most
//! `2(l - 1)` (at most `l - 1` on bipartite graphs). The engine sweeps all
//! forced sets that are matchings, size by size, calling the forced
//! minimum-weight solver for each, and collects the distinct achieved
//! weights. EWPM and BCPM decision procedures ride on the same sweep with
//! early exit.
//!
//! The sweep over forced sets of one size is embarrassingly parallel; with
//! the `parallel` feature it runs on rayon. The merge is ordered by
//! enumeration position, so the resulting table is identical regardless of
//! schedule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching};
use crate::instance::WeightedInstance;
use crate::pm::{enumerate_perfect_matchings, min_weight_pm_forced, ForcedSet, PmResult};
use crate::Weight;

/// Whether to use the tighter `l - 1` forced-set bound that is valid on
/// bipartite graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BipartiteBound {
    /// Detect bipartiteness and use the tight bound when it applies.
    #[default]
    Auto,
    /// Force the `l - 1` bound (caller asserts the graph is bipartite).
    On,
    /// Always use the general `2(l - 1)` bound.
    Off,
}

impl BipartiteBound {
    fn applies(self, g: &Graph) -> bool {
        match self {
            BipartiteBound::Auto => g.is_bipartite(),
            BipartiteBound::On => true,
            BipartiteBound::Off => false,
        }
    }
}

/// One row of a [`RankTable`].
#[derive(Clone, Debug)]
pub struct RankEntry {
    /// 1-based rank; entry weights strictly increase with rank.
    pub rank: u32,
    pub weight: Weight,
    /// A perfect matching of this weight.
    pub witness: Matching,
    /// The forced set whose forced minimum produced the weight. Empty for
    /// brute-force tables.
    pub forced_set: ForcedSet,
}

/// The first `l` distinct perfect-matching weights with witnesses.
#[derive(Clone, Debug)]
pub struct RankTable {
    pub entries: Vec<RankEntry>,
    /// True iff the table lists all distinct perfect-matching weights of
    /// the graph.
    pub complete: bool,
}

impl RankTable {
    pub fn weight_at_rank(&self, rank: u32) -> Option<Weight> {
        self.entries.get(rank as usize - 1).map(|e| e.weight)
    }
}

/// Outcome of a budgeted decision procedure.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Found(PmResult),
    /// The search provably exhausted all candidate weights up to the
    /// target.
    DefiniteNo,
    BudgetExceeded { ranks_explored: u32 },
}

impl SolveOutcome {
    pub fn found(&self) -> Option<&PmResult> {
        match self {
            SolveOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

/// All matchings of `g` with exactly `size` edges, in lexicographic order
/// of sorted edge-index sets.
fn matchings_of_size(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut covered = vec![false; g.vertex_count()];
    let mut chosen = Vec::with_capacity(size);
    fn go(
        g: &Graph,
        size: usize,
        start: usize,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == size {
            out.push(chosen.clone());
            return;
        }
        let remaining = size - chosen.len();
        if start + remaining > g.edge_count() {
            return;
        }
        for e in start..g.edge_count() {
            let (u, v) = g.endpoints(e);
            if covered[u] || covered[v] {
                continue;
            }
            covered[u] = true;
            covered[v] = true;
            chosen.push(e);
            go(g, size, e + 1, covered, chosen, out);
            chosen.pop();
            covered[u] = false;
            covered[v] = false;
        }
    }
    go(g, size, 0, &mut covered, &mut chosen, &mut out);
    out
}

/// Incremental forced-set sweep. Weights discovered after completing all
/// sizes up to `2(r - 1)` (or `r - 1` with the bipartite bound) are the true
/// smallest `r` distinct perfect-matching weights.
struct Sweep<'a> {
    g: &'a Graph,
    weights: &'a [Weight],
    bipartite: bool,
    // weight -> (forced set, witness), first achiever in sweep order wins.
    found: BTreeMap<Weight, (Vec<usize>, Matching)>,
    next_size: usize,
    exhausted: bool,
}

impl<'a> Sweep<'a> {
    fn new(g: &'a Graph, weights: &'a [Weight], bipartite: bool) -> Self {
        Sweep {
            g,
            weights,
            bipartite,
            found: BTreeMap::new(),
            next_size: 0,
            exhausted: false,
        }
    }

    /// Number of ranks certified by the sizes processed so far.
    fn confirmed_ranks(&self) -> u32 {
        let s = self.next_size as u32; // sizes 0..next_size are done
        if s == 0 {
            0
        } else if self.bipartite {
            s
        } else {
            (s - 1) / 2 + 1
        }
    }

    /// True when every distinct perfect-matching weight is known: either
    /// the candidate forced sets ran out, or more ranks are confirmed than
    /// weights were found (a further weight would have a small achieving
    /// forced set, and all of those were swept).
    fn certified_all(&self) -> bool {
        self.exhausted || (self.confirmed_ranks() as usize) > self.found.len()
    }

    /// Process the next forced-set size; returns false once exhausted.
    fn step(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let size = self.next_size;
        if size > self.g.vertex_count() / 2 {
            self.exhausted = true;
            return false;
        }
        let candidates = matchings_of_size(self.g, size);
        if candidates.is_empty() && size > 0 {
            self.exhausted = true;
            return false;
        }
        let results = run_forced(self.g, self.weights, &candidates);
        for (forced, result) in candidates.into_iter().zip(results) {
            let Some(result) = result else { continue };
            self.found
                .entry(result.weight)
                .or_insert((forced, result.matching));
        }
        self.next_size += 1;
        true
    }

    fn into_table(self, l: u32) -> RankTable {
        let distinct = self.found.len();
        let complete = self.certified_all() && distinct <= l as usize;
        let entries = self
            .found
            .into_iter()
            .take(l as usize)
            .enumerate()
            .map(|(i, (weight, (forced, witness)))| RankEntry {
                rank: i as u32 + 1,
                weight,
                witness,
                forced_set: ForcedSet::new(self.g, forced)
                    .expect("swept forced sets are matchings"),
            })
            .collect();
        RankTable { entries, complete }
    }
}

#[cfg(feature = "parallel")]
fn run_forced(g: &Graph, weights: &[Weight], candidates: &[Vec<usize>]) -> Vec<Option<PmResult>> {
    use rayon::prelude::*;
    candidates
        .par_iter()
        .map(|forced| {
            let f = ForcedSet::new(g, forced.clone()).expect("candidate is a matching");
            min_weight_pm_forced(g, weights, &f)
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_forced(g: &Graph, weights: &[Weight], candidates: &[Vec<usize>]) -> Vec<Option<PmResult>> {
    candidates
        .iter()
        .map(|forced| {
            let f = ForcedSet::new(g, forced.clone()).expect("candidate is a matching");
            min_weight_pm_forced(g, weights, &f)
        })
        .collect()
}

/// Sequential sweep regardless of the `parallel` feature; exposed for the
/// benchmark suite comparing schedules.
pub fn spm_ranks_sequential(inst: &WeightedInstance, l: u32, bound: BipartiteBound) -> RankTable {
    spm_ranks_impl(inst, l, bound, false)
}

/// The rank table of the first `l` distinct perfect-matching weights, by
/// forced-set sweep.
pub fn spm_ranks(inst: &WeightedInstance, l: u32) -> RankTable {
    spm_ranks_with(inst, l, BipartiteBound::Auto)
}

pub fn spm_ranks_with(inst: &WeightedInstance, l: u32, bound: BipartiteBound) -> RankTable {
    spm_ranks_impl(inst, l, bound, cfg!(feature = "parallel"))
}

fn spm_ranks_impl(
    inst: &WeightedInstance,
    l: u32,
    bound: BipartiteBound,
    parallel: bool,
) -> RankTable {
    assert!(l >= 1);
    let g = &inst.graph;
    let bipartite = bound.applies(g);
    let budget_size = if bipartite {
        l as usize - 1
    } else {
        2 * (l as usize - 1)
    };
    let mut sweep = Sweep::new(g, &inst.weights, bipartite);
    while sweep.next_size <= budget_size {
        if parallel {
            if !sweep.step() {
                break;
            }
        } else if !step_sequential(&mut sweep) {
            break;
        }
    }
    sweep.into_table(l)
}

fn step_sequential(sweep: &mut Sweep) -> bool {
    // Same as Sweep::step but forcing the sequential path.
    if sweep.exhausted {
        return false;
    }
    let size = sweep.next_size;
    if size > sweep.g.vertex_count() / 2 {
        sweep.exhausted = true;
        return false;
    }
    let candidates = matchings_of_size(sweep.g, size);
    if candidates.is_empty() && size > 0 {
        sweep.exhausted = true;
        return false;
    }
    for forced in candidates {
        let f = ForcedSet::new(sweep.g, forced.clone()).expect("candidate is a matching");
        if let Some(result) = min_weight_pm_forced(sweep.g, sweep.weights, &f) {
            sweep
                .found
                .entry(result.weight)
                .or_insert((forced, result.matching));
        }
    }
    sweep.next_size += 1;
    true
}

/// Ground-truth rank table by exhaustive perfect-matching enumeration.
/// Forced sets are empty. Soft-limited to small graphs.
pub fn spm_ranks_bruteforce(inst: &WeightedInstance, l: u32) -> Result<RankTable> {
    let limit = crate::brute_limit();
    let n = inst.graph.vertex_count();
    if n > limit {
        return Err(Error::TooLargeForBruteForce(n, limit));
    }
    let mut found: BTreeMap<Weight, Matching> = BTreeMap::new();
    for m in enumerate_perfect_matchings(&inst.graph) {
        let w = m.weight(&inst.weights);
        found.entry(w).or_insert(m);
    }
    let distinct = found.len();
    let entries = found
        .into_iter()
        .take(l as usize)
        .enumerate()
        .map(|(i, (weight, witness))| RankEntry {
            rank: i as u32 + 1,
            weight,
            witness,
            forced_set: ForcedSet::empty(),
        })
        .collect();
    Ok(RankTable {
        entries,
        complete: distinct <= l as usize,
    })
}

/// Decide whether the graph admits an `l`-th smallest perfect matching of
/// weight exactly `k` (instance kind SPM).
pub fn spm_decide(inst: &WeightedInstance) -> Result<bool> {
    spm_decide_with(inst, BipartiteBound::Auto)
}

pub fn spm_decide_with(inst: &WeightedInstance, bound: BipartiteBound) -> Result<bool> {
    let l = inst.rank_l.ok_or(Error::MissingRank)?;
    let table = spm_ranks_with(inst, l, bound);
    Ok(table.weight_at_rank(l) == Some(inst.target_k))
}

/// Decide EWPM by climbing the rank ladder: stop as soon as a rank weight
/// hits or exceeds the target, or the ladder is exhausted.
pub fn ewpm_solve(inst: &WeightedInstance, budget_l: u32) -> SolveOutcome {
    ewpm_solve_with(inst, budget_l, BipartiteBound::Auto)
}

pub fn ewpm_solve_with(
    inst: &WeightedInstance,
    budget_l: u32,
    bound: BipartiteBound,
) -> SolveOutcome {
    solve_ladder(inst, budget_l, bound, |w, k| {
        if w == k {
            LadderStep::Hit
        } else if w > k {
            LadderStep::Overshot
        } else {
            LadderStep::Continue
        }
    })
}

/// Decide BCPM: accept the first rank weight that is at most `k` with the
/// parity of `k`.
pub fn bcpm_solve(inst: &WeightedInstance, budget_l: u32) -> SolveOutcome {
    bcpm_solve_with(inst, budget_l, BipartiteBound::Auto)
}

pub fn bcpm_solve_with(
    inst: &WeightedInstance,
    budget_l: u32,
    bound: BipartiteBound,
) -> SolveOutcome {
    solve_ladder(inst, budget_l, bound, |w, k| {
        if w > k {
            LadderStep::Overshot
        } else if (w - k) % 2 == 0 {
            LadderStep::Hit
        } else {
            LadderStep::Continue
        }
    })
}

enum LadderStep {
    Hit,
    Overshot,
    Continue,
}

fn solve_ladder(
    inst: &WeightedInstance,
    budget_l: u32,
    bound: BipartiteBound,
    judge: impl Fn(Weight, Weight) -> LadderStep,
) -> SolveOutcome {
    assert!(budget_l >= 1);
    let g = &inst.graph;
    let k = inst.target_k;
    let bipartite = bound.applies(g);
    let budget_size = if bipartite {
        budget_l as usize - 1
    } else {
        2 * (budget_l as usize - 1)
    };
    let mut sweep = Sweep::new(g, &inst.weights, bipartite);
    loop {
        let stepped = if sweep.next_size <= budget_size {
            sweep.step()
        } else {
            false
        };
        let certified = sweep.certified_all();
        let confirmed = if certified {
            sweep.found.len() as u32
        } else {
            sweep.confirmed_ranks().min(budget_l)
        };
        // Judge the confirmed prefix of the weight ladder.
        for (i, (&w, (forced, witness))) in sweep.found.iter().enumerate() {
            if i as u32 >= confirmed {
                break;
            }
            match judge(w, k) {
                LadderStep::Hit => {
                    let _ = forced;
                    return SolveOutcome::Found(PmResult {
                        matching: witness.clone(),
                        weight: w,
                    });
                }
                LadderStep::Overshot => return SolveOutcome::DefiniteNo,
                LadderStep::Continue => {}
            }
        }
        if certified {
            // Every distinct weight was judged and none hit.
            return SolveOutcome::DefiniteNo;
        }
        if !stepped {
            return SolveOutcome::BudgetExceeded {
                ranks_explored: budget_l,
            };
        }
    }
}
