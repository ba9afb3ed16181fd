//! Maximum-weight matching in general graphs (Edmonds' blossom method with
//! the primal-dual weighted extension), O(n^3).
//!
//! This follows the well-known formulation by Galil ("Efficient Algorithms
//! for Finding Maximum Matching in Graphs", ACM Computing Surveys 1986) in
//! the variable layout popularized by Joris van Rantwijk's reference
//! implementation. Weights are 64-bit integers; all dual arithmetic stays
//! integral (vertex duals are stored pre-multiplied by two).
//!
//! With `max_cardinality`, only maximum-cardinality matchings are considered
//! as solutions, which is how the minimum-weight *perfect* matching solver in
//! [`crate::pm`] drives this module (negated weights).

use crate::Weight;

const SENTINEL: usize = usize::MAX;

/// Compute a maximum-weight matching of the graph given by `edges` on
/// vertices `0..n`. Returns `mate`, where `mate[v]` is the partner of `v` or
/// `None` if `v` is single. Parallel edges and self-loops are not allowed.
pub fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, Weight)],
    max_cardinality: bool,
) -> Vec<Option<usize>> {
    if edges.is_empty() {
        return vec![None; n];
    }
    let mut solver = Solver::new(n, edges, max_cardinality);
    solver.solve();
    solver
        .mate
        .iter()
        .map(|&p| {
            if p == SENTINEL {
                None
            } else {
                Some(solver.endpoint[p])
            }
        })
        .collect()
}

struct Solver {
    nvertex: usize,
    nedge: usize,
    max_cardinality: bool,
    edges: Vec<(usize, usize, Weight)>,
    // endpoint[p] is the vertex to which edge endpoint p is attached;
    // endpoints 2k and 2k+1 belong to edge k.
    endpoint: Vec<usize>,
    // neighbend[v] lists the remote endpoints of v's incident edges.
    neighbend: Vec<Vec<usize>>,
    // mate[v] is the remote endpoint of v's matched edge, or SENTINEL.
    mate: Vec<usize>,
    // label[b]: 0 free, 1 S, 2 T (for top-level blossoms; vertex labels
    // inside T-blossoms track reachability).
    label: Vec<usize>,
    // labelend[b] is the remote endpoint of the edge through which b got its
    // label, or SENTINEL.
    labelend: Vec<usize>,
    // inblossom[v] is the top-level blossom containing v.
    inblossom: Vec<usize>,
    // blossomparent[b] is the immediate parent blossom, or SENTINEL.
    blossomparent: Vec<usize>,
    // blossomchilds[b]: ordered sub-blossoms, starting at the base.
    blossomchilds: Vec<Vec<usize>>,
    // blossombase[b] is the base vertex of blossom b.
    blossombase: Vec<usize>,
    // blossomendps[b][i] is the local endpoint of blossomchilds[b][i] on the
    // edge to blossomchilds[b][i+1].
    blossomendps: Vec<Vec<usize>>,
    // bestedge[v/b]: least-slack edge for delta2/delta3 computation.
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    // dualvar[v] = 2 u(v) for vertices, z(b) for blossoms.
    dualvar: Vec<Weight>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl Solver {
    fn new(n: usize, edges: &[(usize, usize, Weight)], max_cardinality: bool) -> Self {
        let nvertex = n;
        let nedge = edges.len();
        for &(i, j, _) in edges {
            assert!(i != j && i < n && j < n);
        }
        let maxweight = edges.iter().map(|e| e.2).max().unwrap().max(0);
        let endpoint = (0..2 * nedge)
            .map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 })
            .collect();
        let mut neighbend = vec![vec![]; nvertex];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..nvertex).collect();
        blossombase.extend(vec![SENTINEL; nvertex]);
        let mut dualvar = vec![maxweight; nvertex];
        dualvar.extend(vec![0; nvertex]);
        Solver {
            nvertex,
            nedge,
            max_cardinality,
            edges: edges.to_vec(),
            endpoint,
            neighbend,
            mate: vec![SENTINEL; nvertex],
            label: vec![0; 2 * nvertex],
            labelend: vec![SENTINEL; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![SENTINEL; 2 * nvertex],
            blossomchilds: vec![vec![]; 2 * nvertex],
            blossombase,
            blossomendps: vec![vec![]; 2 * nvertex],
            bestedge: vec![SENTINEL; 2 * nvertex],
            blossombestedges: vec![vec![]; 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: vec![],
        }
    }

    // 2 * slack of edge k (not meaningful inside blossoms).
    #[inline]
    fn slack(&self, k: usize) -> Weight {
        let (i, j, wt) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * wt
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut leaves = vec![];
        if b < self.nvertex {
            leaves.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                if t < self.nvertex {
                    leaves.push(t);
                } else {
                    leaves.extend(self.blossom_leaves(t));
                }
            }
        }
        leaves
    }

    /// Label the top-level blossom containing w with t, reached through the
    /// edge with remote endpoint p.
    fn assign_label(&mut self, w: usize, t: usize, p: usize) {
        let b = self.inblossom[w];
        assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        if t == 1 {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else if t == 2 {
            // The base is the only vertex of a T-blossom with an external
            // mate; its mate becomes an S-vertex.
            let base = self.blossombase[b];
            assert!(self.mate[base] != SENTINEL);
            let mbase = self.mate[base];
            let endpoint = self.endpoint[mbase];
            self.assign_label(endpoint, 1, mbase ^ 1);
        }
    }

    /// Trace back from v and w to find either a new blossom base or an
    /// augmenting path (SENTINEL).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = vec![];
        let mut base = SENTINEL;
        let mut v = v;
        let mut w = w;
        while v != SENTINEL || w != SENTINEL {
            let mut b = self.inblossom[v];
            if (self.label[b] & 4) != 0 {
                base = self.blossombase[b];
                break;
            }
            assert!(self.label[b] == 1);
            path.push(b);
            self.label[b] = 5;
            assert!(self.labelend[b] == self.mate[self.blossombase[b]]);
            if self.labelend[b] == SENTINEL {
                v = SENTINEL;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                assert!(self.label[b] == 2);
                assert!(self.labelend[b] != SENTINEL);
                v = self.endpoint[self.labelend[b]];
            }
            if w != SENTINEL {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    /// Construct a new S-blossom with the given base, containing edge k
    /// which connects a pair of S-vertices.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];

        let b = self.unusedblossoms.pop().unwrap();
        self.blossombase[b] = base;
        self.blossomparent[b] = SENTINEL;
        self.blossomparent[bb] = b;

        self.blossomchilds[b] = vec![];
        self.blossomendps[b] = vec![];

        // Trace back from v to base.
        while bv != bb {
            self.blossomparent[bv] = b;
            self.blossomchilds[b].push(bv);
            self.blossomendps[b].push(self.labelend[bv]);
            assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            assert!(self.labelend[bv] != SENTINEL);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        self.blossomchilds[b].push(bb);
        self.blossomchilds[b].reverse();
        self.blossomendps[b].reverse();
        self.blossomendps[b].push(2 * k);

        // Trace back from w to base.
        while bw != bb {
            self.blossomparent[bw] = b;
            self.blossomchilds[b].push(bw);
            self.blossomendps[b].push(self.labelend[bw] ^ 1);
            assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            assert!(self.labelend[bw] != SENTINEL);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }

        assert!(self.label[bb] == 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;

        for v in self.blossom_leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                // Former T-vertex becomes S; scan it.
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        // Recompute least-slack edges to neighbouring S-blossoms.
        let mut bestedgeto = vec![SENTINEL; 2 * self.nvertex];
        for bv in self.blossomchilds[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                self.blossom_leaves(bv)
                    .iter()
                    .map(|&v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == SENTINEL
                            || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv] = vec![];
            self.bestedge[bv] = SENTINEL;
        }
        self.blossombestedges[b] = bestedgeto.into_iter().filter(|&k| k != SENTINEL).collect();
        self.bestedge[b] = SENTINEL;
        for &k in &self.blossombestedges[b] {
            if self.bestedge[b] == SENTINEL || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Expand the given top-level blossom.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = SENTINEL;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }

        // Expanding a T-blossom during a stage requires relabeling its
        // sub-blossoms from the entry point round to the base.
        if !endstage && self.label[b] == 2 {
            assert!(self.labelend[b] != SENTINEL);
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&r| r == entrychild)
                .unwrap() as i32;
            let jstep: i32;
            let endptrick: usize;
            if (j & 1) != 0 {
                j -= self.blossomchilds[b].len() as i32;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }

            let mut p = self.labelend[b];
            while j != 0 {
                // Relabel the T-sub-blossom.
                self.label[self.endpoint[p ^ 1]] = 0;
                let q =
                    wrap_index(&self.blossomendps[b], j - endptrick as i32) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = 0;
                let ep = self.endpoint[p ^ 1];
                self.assign_label(ep, 2, p);

                self.allowedge[wrap_index(&self.blossomendps[b], j - endptrick as i32) / 2] =
                    true;
                j += jstep;
                p = wrap_index(&self.blossomendps[b], j - endptrick as i32) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }

            // The base T-sub-blossom keeps its label without stepping
            // through to its mate.
            let bv = wrap_index(&self.blossomchilds[b], j);
            self.label[self.endpoint[p ^ 1]] = 2;
            self.label[bv] = 2;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = SENTINEL;

            j += jstep;
            while wrap_index(&self.blossomchilds[b], j) != entrychild {
                let bv = wrap_index(&self.blossomchilds[b], j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut v = SENTINEL;
                for leaf in self.blossom_leaves(bv) {
                    v = leaf;
                    if self.label[v] != 0 {
                        break;
                    }
                }
                if v != SENTINEL && self.label[v] != 0 {
                    assert!(self.label[v] == 2);
                    assert!(self.inblossom[v] == bv);
                    self.label[v] = 0;
                    self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0;
                    let lblend = self.labelend[v];
                    self.assign_label(v, 2, lblend);
                }
                j += jstep;
            }
        }

        self.label[b] = SENTINEL;
        self.labelend[b] = SENTINEL;
        self.blossombase[b] = SENTINEL;
        self.bestedge[b] = SENTINEL;
        self.blossomchilds[b] = vec![];
        self.blossomendps[b] = vec![];
        self.blossombestedges[b] = vec![];
        self.unusedblossoms.push(b);
    }

    /// Swap matched/unmatched edges over an alternating path through blossom
    /// b between vertex v and the base vertex.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }

        let i = self.blossomchilds[b].iter().position(|&r| r == t).unwrap();
        let mut j = i as i32;
        let jstep: i32;
        let endptrick: usize;
        if (i & 1) != 0 {
            j -= self.blossomchilds[b].len() as i32;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }

        while j != 0 {
            j += jstep;
            let mut t = wrap_index(&self.blossomchilds[b], j);
            let p = wrap_index(&self.blossomendps[b], j - endptrick as i32) ^ endptrick;
            if t >= self.nvertex {
                let endp = self.endpoint[p];
                self.augment_blossom(t, endp);
            }
            j += jstep;
            t = wrap_index(&self.blossomchilds[b], j);
            if t >= self.nvertex {
                let endp = self.endpoint[p ^ 1];
                self.augment_blossom(t, endp);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }

        // Rotate so the new base is at the front.
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        assert!(self.blossombase[b] == v);
    }

    /// Swap matched/unmatched edges over an alternating path between two
    /// single vertices, running through edge k.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for &(mut s, mut p) in &[(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                assert!(self.label[bs] == 1);
                assert!(self.labelend[bs] == self.mate[self.blossombase[bs]]);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == SENTINEL {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                assert!(self.label[bt] == 2);
                assert!(self.labelend[bt] != SENTINEL);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                assert!(self.blossombase[bt] == t);
                if bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    /// Check the complementary-slackness conditions of the final solution.
    fn verify_optimum(&self) {
        let vdualoffset = if self.max_cardinality {
            0.max(-self.dualvar[..self.nvertex].iter().copied().min().unwrap())
        } else {
            0
        };
        for k in 0..self.nedge {
            let (i, j, wt) = self.edges[k];
            let mut s = self.dualvar[i] + self.dualvar[j] - 2 * wt;
            let mut iblossoms = vec![i];
            let mut jblossoms = vec![j];
            while self.blossomparent[*iblossoms.last().unwrap()] != SENTINEL {
                iblossoms.push(self.blossomparent[*iblossoms.last().unwrap()]);
            }
            while self.blossomparent[*jblossoms.last().unwrap()] != SENTINEL {
                jblossoms.push(self.blossomparent[*jblossoms.last().unwrap()]);
            }
            iblossoms.reverse();
            jblossoms.reverse();
            for (&bi, &bj) in iblossoms.iter().zip(jblossoms.iter()) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            assert!(s >= 0);
            if self.mate[i] / 2 == k || self.mate[j] / 2 == k {
                assert!(self.mate[i] / 2 == k && self.mate[j] / 2 == k);
                assert!(s == 0);
            }
        }
        for v in 0..self.nvertex {
            assert!(self.mate[v] != SENTINEL || self.dualvar[v] + vdualoffset == 0);
        }
        for b in self.nvertex..2 * self.nvertex {
            if self.blossombase[b] != SENTINEL && self.dualvar[b] > 0 {
                assert!(self.blossomendps[b].len() % 2 == 1);
                for (ix, &p) in self.blossomendps[b].iter().enumerate() {
                    if ix % 2 == 1 {
                        assert!(self.mate[self.endpoint[p]] == p ^ 1);
                        assert!(self.mate[self.endpoint[p ^ 1]] == p);
                    }
                }
            }
        }
    }

    fn solve(&mut self) {
        for _stage in 0..self.nvertex {
            // Each stage finds one augmenting path.
            self.label = vec![0; 2 * self.nvertex];
            self.bestedge = vec![SENTINEL; 2 * self.nvertex];
            for b in self.nvertex..2 * self.nvertex {
                self.blossombestedges[b] = vec![];
            }
            self.allowedge = vec![false; self.nedge];
            self.queue = vec![];

            for v in 0..self.nvertex {
                if self.mate[v] == SENTINEL && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, SENTINEL);
                }
            }

            let mut augmented = false;
            loop {
                // Substage: look for an augmenting path; if none, pump slack
                // out of the dual variables.
                while !self.queue.is_empty() && !augmented {
                    let v = self.queue.pop().unwrap();
                    assert!(self.label[self.inblossom[v]] == 1);
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != SENTINEL {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                assert!(self.label[self.inblossom[w]] == 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == SENTINEL
                                || kslack < self.slack(self.bestedge[b])
                            {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == SENTINEL
                                || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }

                if augmented {
                    break;
                }

                let mut deltatype = -1;
                let mut delta: Weight = 0;
                let mut deltaedge = 0;
                let mut deltablossom = 0;

                if !self.max_cardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..self.nvertex].iter().min().unwrap();
                }

                // delta2: minimum slack on an edge between an S-vertex and a
                // free vertex.
                for v in 0..self.nvertex {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != SENTINEL {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }

                // delta3: half the minimum slack on an edge between a pair
                // of S-blossoms.
                for b in 0..2 * self.nvertex {
                    if self.blossomparent[b] == SENTINEL
                        && self.label[b] == 1
                        && self.bestedge[b] != SENTINEL
                    {
                        let d = self.slack(self.bestedge[b]) / 2;
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }

                // delta4: minimum z of a T-blossom.
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL
                        && self.blossomparent[b] == SENTINEL
                        && self.label[b] == 2
                        && (deltatype == -1 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                if deltatype == -1 {
                    // Max-cardinality optimum reached; final delta update so
                    // the optimum is verifiable.
                    assert!(self.max_cardinality);
                    deltatype = 1;
                    delta = 0.max(*self.dualvar[..self.nvertex].iter().min().unwrap());
                }

                for v in 0..self.nvertex {
                    match self.label[self.inblossom[v]] {
                        0 => {}
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => unreachable!(),
                    }
                }
                for b in self.nvertex..2 * self.nvertex {
                    if self.blossombase[b] != SENTINEL && self.blossomparent[b] == SENTINEL {
                        match self.label[b] {
                            0 => {}
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => unreachable!(),
                        }
                    }
                }

                match deltatype {
                    1 => break, // optimum reached
                    2 => {
                        let (mut i, j, _) = self.edges[deltaedge];
                        self.allowedge[deltaedge] = true;
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        assert!(self.label[self.inblossom[i]] == 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        assert!(self.label[self.inblossom[i]] == 1);
                        self.queue.push(i);
                    }
                    4 => self.expand_blossom(deltablossom, false),
                    _ => unreachable!(),
                }
            }

            if !augmented {
                break;
            }

            // End of stage: expand S-blossoms with zero dual.
            for b in self.nvertex..2 * self.nvertex {
                if self.blossomparent[b] == SENTINEL
                    && self.blossombase[b] != SENTINEL
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        self.verify_optimum();
    }
}

/// Python-style indexing with negative wrap-around.
fn wrap_index(v: &[usize], index: i32) -> usize {
    if index >= 0 {
        v[index as usize]
    } else {
        v[v.len() - (-index) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mate(n: usize, edges: &[(usize, usize, Weight)]) -> Vec<Option<usize>> {
        max_weight_matching(n, edges, false)
    }

    fn mate_maxcard(n: usize, edges: &[(usize, usize, Weight)]) -> Vec<Option<usize>> {
        max_weight_matching(n, edges, true)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(max_weight_matching(0, &[], false), vec![]);
        assert_eq!(mate(2, &[(0, 1, 1)]), vec![Some(1), Some(0)]);
        assert_eq!(
            mate(4, &[(1, 2, 10), (2, 3, 11)]),
            vec![None, None, Some(3), Some(2)]
        );
    }

    #[test]
    fn prefers_weight_over_cardinality() {
        assert_eq!(
            mate(5, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)]),
            vec![None, None, Some(3), Some(2), None]
        );
        assert_eq!(
            mate_maxcard(5, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)]),
            vec![None, Some(2), Some(1), Some(4), Some(3)]
        );
    }

    #[test]
    fn negative_weights() {
        let edges = [(1, 2, 2), (1, 3, -2), (2, 3, 1), (2, 4, -1), (3, 4, -6)];
        assert_eq!(
            mate(5, &edges),
            vec![None, Some(2), Some(1), None, None]
        );
        assert_eq!(
            mate_maxcard(5, &edges),
            vec![None, Some(3), Some(4), Some(1), Some(2)]
        );
    }

    #[test]
    fn s_blossom_augmentation() {
        assert_eq!(
            mate(5, &[(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7)]),
            vec![None, Some(2), Some(1), Some(4), Some(3)]
        );
        assert_eq!(
            mate(
                7,
                &[(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7), (1, 6, 5), (4, 5, 6)]
            ),
            vec![None, Some(6), Some(3), Some(2), Some(5), Some(4), Some(1)]
        );
    }

    #[test]
    fn s_to_t_relabel_and_expand() {
        assert_eq!(
            mate(
                7,
                &[(1, 2, 9), (1, 3, 8), (2, 3, 10), (1, 4, 5), (4, 5, 4), (1, 6, 3)]
            ),
            vec![None, Some(6), Some(3), Some(2), Some(5), Some(4), Some(1)]
        );
        assert_eq!(
            mate(
                9,
                &[
                    (1, 2, 23),
                    (1, 5, 22),
                    (1, 6, 15),
                    (2, 3, 25),
                    (3, 4, 22),
                    (4, 5, 25),
                    (4, 8, 14),
                    (5, 7, 13)
                ]
            ),
            vec![
                None,
                Some(6),
                Some(3),
                Some(2),
                Some(8),
                Some(7),
                Some(1),
                Some(5),
                Some(4)
            ]
        );
    }

    #[test]
    fn nasty_nested_blossom_expansion() {
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 45),
                    (1, 5, 45),
                    (2, 3, 50),
                    (3, 4, 45),
                    (4, 5, 50),
                    (1, 6, 30),
                    (3, 9, 35),
                    (4, 8, 35),
                    (5, 7, 26),
                    (9, 10, 5)
                ]
            ),
            vec![
                None,
                Some(6),
                Some(3),
                Some(2),
                Some(8),
                Some(7),
                Some(1),
                Some(5),
                Some(4),
                Some(10),
                Some(9)
            ]
        );
    }

    #[test]
    fn nested_relabel_expand_recursively() {
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 40),
                    (1, 3, 40),
                    (2, 3, 60),
                    (2, 4, 55),
                    (3, 5, 55),
                    (4, 5, 50),
                    (1, 8, 15),
                    (5, 7, 30),
                    (7, 6, 10),
                    (8, 10, 10),
                    (4, 9, 30)
                ]
            ),
            vec![
                None,
                Some(2),
                Some(1),
                Some(5),
                Some(9),
                Some(3),
                Some(7),
                Some(6),
                Some(10),
                Some(4),
                Some(8)
            ]
        );
    }
}
