//! Maximum matching in general graphs: augmenting-path search with blossom
//! contraction (the classic O(V^3) formulation, bases tracked per vertex).

use crate::graph::Graph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let n = self.g.n();
        let mut marked = vec![false; n];
        loop {
            a = self.base[a];
            marked[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if marked[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    // BFS for an augmenting path from `root`; returns its exposed endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.n();
        self.parent = vec![NONE; n];
        self.base = (0..n).collect();
        self.in_queue = vec![false; n];
        self.in_queue[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let nbs: Vec<usize> = self.g.neighbors(v).collect();
            for to in nbs {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract the blossom
                    let cur_base = self.lca(v, to);
                    self.in_blossom = vec![false; n];
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    self.in_queue[self.mate[to]] = true;
                    queue.push_back(self.mate[to]);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Exact matching number of `g`.
pub fn matching_number(g: &Graph) -> usize {
    let n = g.n();
    let mut state = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![],
        base: vec![],
        in_queue: vec![],
        in_blossom: vec![],
    };
    let mut matched = 0;
    for v in 0..n {
        if state.mate[v] == NONE {
            let end = state.find_path(v);
            if end != NONE {
                state.augment(end);
                matched += 1;
            }
        }
    }
    matched
}

/// Exponential-time matching by branch on the lowest undecided vertex; the
/// independent test oracle for the blossom search.
pub fn brute_matching_number(g: &Graph) -> usize {
    fn rec(g: &Graph, available: u64) -> usize {
        let v = match (0..g.n()).find(|&v| available >> v & 1 != 0) {
            Some(v) => v,
            None => return 0,
        };
        // leave v unmatched
        let mut best = rec(g, available & !(1 << v));
        for u in g.neighbors(v) {
            if available >> u & 1 != 0 {
                best = best.max(1 + rec(g, available & !(1 << v) & !(1 << u)));
            }
        }
        best
    }
    assert!(g.n() <= 63);
    rec(g, (1u64 << g.n()) - 1)
}
